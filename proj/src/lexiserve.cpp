#include "lexalign/lexiserve.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "lexalign/triplemap.hpp"

namespace lexalign::serve {

using nlohmann::json;

bool ServiceConfig::valid() const {
  return !host.empty() && port >= 0 && port <= 65535 && max_query_patterns > 0 &&
         request_timeout_ms > 0;
}

ServiceConfig parse_bind(std::string_view bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == bind.size())
    throw Error("bind address must be host:port, got '" + std::string(bind) + "'");
  ServiceConfig cfg;
  cfg.host = std::string(bind.substr(0, colon));
  const auto digits = bind.substr(colon + 1);
  int port = -1;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
  if (ec != std::errc() || end != digits.data() + digits.size() || port < 1 || port > 65535)
    throw Error("port must be in [1, 65535], got '" + std::string(digits) + "'");
  cfg.port = port;
  return cfg;
}

std::string translations_json(std::string_view word, std::string_view from, std::string_view to,
                              const std::vector<std::string>& translations) {
  return json{{"word", word}, {"from", from}, {"to", to}, {"source", "dictionary"},
              {"translations", translations}}
      .dump();
}

std::string headwords_json(std::string_view term, const std::vector<std::string>& headwords) {
  return json{{"term", term}, {"headwords", headwords}}.dump();
}

std::string result_json(const sparql::ResultTable& table) {
  return json{{"head", {{"vars", table.header}}}, {"rows", table.rows}}.dump();
}

std::string stats_json(const dict::StoreStats& s) {
  json pairs = json::array();
  for (const auto& [key, count] : s.translation_entries_per_pair)
    pairs.push_back({{"from", key.first}, {"to", key.second}, {"count", count}});
  return json{{"total_entries", s.total_entries},
              {"entries_per_language", s.entries_per_language},
              {"total_translation_entries", s.total_translation_entries},
              {"translation_entries_per_pair", pairs}}
      .dump();
}

// --- server ----------------------------------------------------------------

namespace {

void reply_error(httplib::Response& res, int status, const std::string& message,
                 json extra = json::object()) {
  extra["error"] = message;
  res.status = status;
  res.set_content(extra.dump(), "application/json");
}

// Missing parameters answer 400 and return false.
bool params(const httplib::Request& req, httplib::Response& res,
            std::initializer_list<const char*> names, std::vector<std::string>& out) {
  for (const char* n : names) {
    if (!req.has_param(n)) {
      reply_error(res, 400, std::string("missing parameter '") + n + "'");
      return false;
    }
    out.push_back(req.get_param_value(n));
  }
  return true;
}

}  // namespace

struct Service::Impl {
  const dict::DictionaryStore& store;
  ServiceConfig config;
  rdf::TripleStore triples;
  std::string stats_body;
  httplib::Server server;
  std::thread worker;
  int port = 0;
  std::atomic<std::uint64_t> served{0};
  std::atomic<std::uint64_t> evaluated{0};

  Impl(const dict::DictionaryStore& s, ServiceConfig c)
      : store(s), config(std::move(c)), triples(rdf::to_triples(s)), stats_body(stats_json(s.stats())) {}

  void routes();
  void handle_sparql(const httplib::Request& req, httplib::Response& res);
};

void Service::Impl::routes() {
  server.Get("/translate", [this](const httplib::Request& req, httplib::Response& res) {
    std::vector<std::string> p;
    if (!params(req, res, {"word", "from", "to"}, p)) return;
    const auto list = store.translations(p[0], p[1], p[2]);
    res.set_content(translations_json(p[0], p[1], p[2], list), "application/json");
  });
  server.Get("/reverse", [this](const httplib::Request& req, httplib::Response& res) {
    std::vector<std::string> p;
    if (!params(req, res, {"term", "term_lang", "entry_lang"}, p)) return;
    const auto list = store.reverse_translations(p[0], p[1], p[2]);
    res.set_content(headwords_json(p[0], list), "application/json");
  });
  server.Post("/sparql", [this](const httplib::Request& req, httplib::Response& res) {
    handle_sparql(req, res);
  });
  server.Get("/stats", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(stats_body, "application/json");
  });
  server.set_exception_handler([](const httplib::Request&, httplib::Response& res,
                                  std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const UnknownLanguage& e) {
      reply_error(res, 400, e.what());
    } catch (const std::exception& e) {
      reply_error(res, 500, e.what());
    } catch (...) {
      reply_error(res, 500, "unknown failure");
    }
  });
  server.set_logger([this](const httplib::Request&, const httplib::Response&) { ++served; });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) reply_error(res, res.status, httplib::status_message(res.status));
  });
}

void Service::Impl::handle_sparql(const httplib::Request& req, httplib::Response& res) {
  const auto start = std::chrono::steady_clock::now();
  sparql::Query q;
  try {
    q = sparql::parse_query(req.body, triples.prefixes());
  } catch (const ParseError& e) {
    reply_error(res, 400, e.what(), {{"line", e.line()}, {"column", e.column()}});
    return;
  }
  if (q.patterns.size() > config.max_query_patterns) {
    reply_error(res, 413,
                "query has " + std::to_string(q.patterns.size()) + " patterns, limit is " +
                    std::to_string(config.max_query_patterns));
    return;
  }
  ++evaluated;
  sparql::EvalOptions opts;
  opts.deadline = start + std::chrono::milliseconds(config.request_timeout_ms);
  try {
    res.set_content(result_json(sparql::evaluate(q, triples, opts)), "application/json");
  } catch (const sparql::EvaluationTimeout& e) {
    reply_error(res, 503, e.what());
  }
}

Service::Service(const dict::DictionaryStore& store, ServiceConfig config) {
  if (!config.valid()) throw Error("invalid service configuration");
  impl_ = std::make_unique<Impl>(store, std::move(config));
  auto& c = impl_->config;
  const time_t sec = c.request_timeout_ms / 1000;
  const time_t usec = (c.request_timeout_ms % 1000) * 1000;
  impl_->server.set_read_timeout(sec, usec);
  impl_->server.set_write_timeout(sec, usec);
  impl_->routes();
  // The library default sets SO_REUSEPORT, which would let a second server share the port.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  if (c.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(c.host);
    if (impl_->port < 0) throw Error("cannot bind " + c.host);
  } else {
    if (!impl_->server.bind_to_port(c.host, c.port))
      throw Error("cannot bind " + c.host + ":" + std::to_string(c.port));
    impl_->port = c.port;
  }
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

Service::~Service() { stop(); }

void Service::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

int Service::port() const { return impl_->port; }

std::string Service::url() const {
  return "http://" + impl_->config.host + ":" + std::to_string(impl_->port);
}

std::uint64_t Service::requests_served() const { return impl_->served; }
std::uint64_t Service::queries_evaluated() const { return impl_->evaluated; }

// --- client ----------------------------------------------------------------

struct Client::Impl {
  std::string host;
  int port = 80;
  int timeout_ms = 5000;

  httplib::Client connect() const {
    httplib::Client c(host, port);
    const time_t sec = timeout_ms / 1000;
    const time_t usec = (timeout_ms % 1000) * 1000;
    c.set_connection_timeout(sec, usec);
    c.set_read_timeout(sec, usec);
    c.set_write_timeout(sec, usec);
    return c;
  }

  json check(const httplib::Result& r, const std::string& what) const {
    if (!r) throw NetworkError(what + ": " + httplib::to_string(r.error()));
    if (r->status != 200) {
      std::string message = r->body;
      try {
        auto body = json::parse(r->body);
        if (body.is_object() && body.contains("error") && body["error"].is_string())
          message = body["error"].get<std::string>();
      } catch (const json::exception&) {
      }
      throw HttpStatusError(r->status, message);
    }
    try {
      return json::parse(r->body);
    } catch (const json::exception& e) {
      throw ProtocolError(what + ": malformed JSON: " + e.what());
    }
  }
};

Client::Client(std::string endpoint, int timeout_ms) : impl_(std::make_unique<Impl>()) {
  constexpr std::string_view scheme = "http://";
  std::string_view rest = endpoint;
  if (rest.substr(0, scheme.size()) != scheme)
    throw Error("endpoint must start with http://, got '" + endpoint + "'");
  rest.remove_prefix(scheme.size());
  if (!rest.empty() && rest.back() == '/') rest.remove_suffix(1);
  const auto colon = rest.rfind(':');
  if (colon == std::string_view::npos) {
    impl_->host = std::string(rest);
  } else {
    impl_->host = std::string(rest.substr(0, colon));
    const auto digits = rest.substr(colon + 1);
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), impl_->port);
    if (ec != std::errc() || end != digits.data() + digits.size() || impl_->port < 1 ||
        impl_->port > 65535)
      throw Error("bad port in endpoint '" + endpoint + "'");
  }
  if (impl_->host.empty() || impl_->host.find('/') != std::string::npos)
    throw Error("bad host in endpoint '" + endpoint + "'");
  if (timeout_ms <= 0) throw Error("client timeout must be positive");
  impl_->timeout_ms = timeout_ms;
}

Client::~Client() = default;
Client::Client(Client&&) noexcept = default;
Client& Client::operator=(Client&&) noexcept = default;

namespace {

std::vector<std::string> string_list(const json& body, const char* field) {
  try {
    return body.at(field).get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("field '") + field + "': " + e.what());
  }
}

}  // namespace

std::vector<std::string> Client::translate(std::string_view word, std::string_view from,
                                           std::string_view to) const {
  auto c = impl_->connect();
  httplib::Params p{{"word", std::string(word)}, {"from", std::string(from)}, {"to", std::string(to)}};
  return string_list(impl_->check(c.Get("/translate", p, {}), "GET /translate"), "translations");
}

std::vector<std::string> Client::reverse_translate(std::string_view term, std::string_view term_lang,
                                                   std::string_view entry_lang) const {
  auto c = impl_->connect();
  httplib::Params p{{"term", std::string(term)},
                    {"term_lang", std::string(term_lang)},
                    {"entry_lang", std::string(entry_lang)}};
  return string_list(impl_->check(c.Get("/reverse", p, {}), "GET /reverse"), "headwords");
}

sparql::ResultTable Client::sparql(std::string_view query) const {
  auto c = impl_->connect();
  const json body =
      impl_->check(c.Post("/sparql", std::string(query), "text/plain"), "POST /sparql");
  try {
    sparql::ResultTable t;
    t.header = body.at("head").at("vars").get<std::vector<std::string>>();
    t.rows = body.at("rows").get<std::vector<std::vector<std::string>>>();
    for (const auto& row : t.rows)
      if (row.size() != t.header.size()) throw ProtocolError("row width differs from header");
    return t;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("SPARQL result: ") + e.what());
  }
}

dict::StoreStats Client::stats() const {
  auto c = impl_->connect();
  const json body = impl_->check(c.Get("/stats"), "GET /stats");
  try {
    dict::StoreStats s;
    s.total_entries = body.at("total_entries").get<std::size_t>();
    s.entries_per_language =
        body.at("entries_per_language").get<std::map<std::string, std::size_t>>();
    s.total_translation_entries = body.at("total_translation_entries").get<std::size_t>();
    for (const auto& p : body.at("translation_entries_per_pair"))
      s.translation_entries_per_pair[{p.at("from").get<std::string>(), p.at("to").get<std::string>()}] =
          p.at("count").get<std::size_t>();
    return s;
  } catch (const json::exception& e) {
    throw ProtocolError(std::string("stats: ") + e.what());
  }
}

std::vector<std::string> EndpointTranslator::translate(std::string_view word, std::string_view from,
                                                       std::string_view to) const {
  std::vector<std::string> out = client_.translate(word, from, to);
  auto reverse = client_.reverse_translate(word, from, to);
  out.insert(out.end(), reverse.begin(), reverse.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lexalign::serve
