#pragma once

// RDF view of the dictionary tables and a small indexed triple store.

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexalign/dictstore.hpp"

namespace lexalign::rdf {

enum class TermKind : std::uint8_t { Iri, PrefixedName, Literal, Variable };

/// An RDF term. For PrefixedName, `value` is the prefix and `local` the
/// local part; for the other kinds `local` is empty.
struct Term {
  TermKind kind = TermKind::Iri;
  std::string value;
  std::string local;

  static Term iri(std::string v) { return {TermKind::Iri, std::move(v), {}}; }
  static Term prefixed(std::string prefix, std::string local) {
    return {TermKind::PrefixedName, std::move(prefix), std::move(local)};
  }
  static Term literal(std::string v) { return {TermKind::Literal, std::move(v), {}}; }
  static Term variable(std::string name) { return {TermKind::Variable, std::move(name), {}}; }

  bool is_variable() const { return kind == TermKind::Variable; }
  bool is_literal() const { return kind == TermKind::Literal; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;
  auto operator<=>(const Triple&) const = default;
};

inline constexpr std::string_view kWikpaPrefix = "wikpa";
inline constexpr std::string_view kWikpaBase = "http://wikokit.example/wikt/";

class PrefixTable {
 public:
  PrefixTable() = default;
  /// Table holding only the fixed `wikpa:` binding.
  static PrefixTable standard();

  void bind(std::string prefix, std::string base) { bases_[std::move(prefix)] = std::move(base); }
  bool knows(std::string_view prefix) const { return bases_.count(std::string(prefix)) > 0; }

  /// Resolves a PrefixedName to an Iri; other kinds pass through.
  /// Throws Error on an unbound prefix.
  Term expand(const Term& t) const;
  /// Shortest prefixed form of an IRI, or nullopt when no base matches.
  std::optional<Term> compact(std::string_view iri) const;

 private:
  std::map<std::string, std::string, std::less<>> bases_;
};

/// Display text: literals as their text, IRIs compacted to `prefix:local`
/// when possible and `<iri>` otherwise, variables as `?name`.
std::string render(const Term& t, const PrefixTable& prefixes);

using TermId = std::uint32_t;

/// Immutable set of triples with SPO, POS and OSP indexes.
class TripleStore {
 public:
  TripleStore() : TripleStore(std::vector<Triple>{}) {}
  /// Prefixed names are expanded; duplicates collapse. Throws Error on a
  /// positional violation (literal subject, variable anywhere, ...).
  explicit TripleStore(std::vector<Triple> triples,
                       PrefixTable prefixes = PrefixTable::standard());

  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }
  const PrefixTable& prefixes() const { return prefixes_; }

  /// Triples matching every bound position, sorted by (s, p, o).
  std::vector<Triple> lookup(const std::optional<Term>& s, const std::optional<Term>& p,
                             const std::optional<Term>& o) const;

  // Id-level access used by the query evaluator.
  std::optional<TermId> find(const Term& t) const;
  const Term& term(TermId id) const { return terms_[id]; }
  std::size_t term_count() const { return terms_.size(); }
  std::size_t count(std::optional<TermId> s, std::optional<TermId> p,
                    std::optional<TermId> o) const;
  void match(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o,
             const std::function<void(const std::array<TermId, 3>&)>& visit) const;

 private:
  using Key = std::array<TermId, 3>;
  // Returns the index to scan and how many leading components are bound.
  std::pair<const std::vector<Key>*, std::size_t> choose(std::optional<TermId> s,
                                                         std::optional<TermId> p,
                                                         std::optional<TermId> o, Key& probe,
                                                         int& perm) const;

  PrefixTable prefixes_;
  std::vector<Term> terms_;  // sorted, so id order is term order
  std::vector<Key> spo_;
  std::vector<Key> pos_;  // stored as (p, o, s)
  std::vector<Key> osp_;  // stored as (o, s, p)
};

/// Forward mapping: one subject `wikpa:<table>/<id>` per row, one triple
/// per column with the table's column predicates.
TripleStore to_triples(const dict::DictionaryStore& store);

/// Inverse of to_triples. Throws DataError on triples it cannot place.
dict::Tables to_tables(const TripleStore& triples);

}  // namespace lexalign::rdf
