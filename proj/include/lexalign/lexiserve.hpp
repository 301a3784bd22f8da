#pragma once

// Read-only HTTP front for a dictionary store (translation lookups, the
// SPARQL subset, counts) and the client used by the aligner.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lexalign/dictstore.hpp"
#include "lexalign/error.hpp"
#include "lexalign/labelkit.hpp"
#include "lexalign/sparqlet.hpp"

namespace lexalign::serve {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  /// 0 asks the OS for a free port (see Service::port()).
  int port = 8080;
  std::size_t max_query_patterns = 64;
  int request_timeout_ms = 5000;
  bool valid() const;
};

/// Parses `host:port`; throws Error on malformed input.
ServiceConfig parse_bind(std::string_view bind);

/// Body builders shared by the server and its tests.
std::string translations_json(std::string_view word, std::string_view from, std::string_view to,
                              const std::vector<std::string>& translations);
std::string headwords_json(std::string_view term, const std::vector<std::string>& headwords);
std::string result_json(const sparql::ResultTable& table);
std::string stats_json(const dict::StoreStats& stats);

/// Serves on a background thread pool until stop() or destruction.
class Service {
 public:
  /// Binds immediately; throws Error when the address cannot be bound.
  Service(const dict::DictionaryStore& store, ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  int port() const;
  std::string url() const;
  /// Idempotent; waits for in-flight requests.
  void stop();

  /// Requests answered so far, including rejected ones.
  std::uint64_t requests_served() const;
  /// SPARQL queries that reached evaluation.
  std::uint64_t queries_evaluated() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The endpoint could not be reached or the connection broke.
class NetworkError : public Error {
 public:
  using Error::Error;
};

/// The endpoint answered with a non-200 status.
class HttpStatusError : public Error {
 public:
  HttpStatusError(int status, const std::string& message)
      : Error("HTTP " + std::to_string(status) + ": " + message), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

/// The body was not the JSON the protocol promises.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class Client {
 public:
  /// `http://host:port`; throws Error when the URL is malformed.
  explicit Client(std::string endpoint, int timeout_ms = 5000);
  ~Client();
  Client(Client&&) noexcept;
  Client& operator=(Client&&) noexcept;

  std::vector<std::string> translate(std::string_view word, std::string_view from,
                                     std::string_view to) const;
  std::vector<std::string> reverse_translate(std::string_view term, std::string_view term_lang,
                                             std::string_view entry_lang) const;
  sparql::ResultTable sparql(std::string_view query) const;
  dict::StoreStats stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Same candidate set as labels::DictionaryTranslator, over HTTP.
class EndpointTranslator final : public labels::Translator {
 public:
  explicit EndpointTranslator(Client client) : client_(std::move(client)) {}
  std::vector<std::string> translate(std::string_view word, std::string_view from,
                                     std::string_view to) const override;

 private:
  Client client_;
};

}  // namespace lexalign::serve
