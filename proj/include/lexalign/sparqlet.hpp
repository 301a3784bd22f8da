#pragma once

// SPARQL subset: SELECT over a basic graph pattern with `;` predicate
// lists and an optional LIMIT.
//
//   query := "SELECT" var+ "WHERE" "{" [group ("." group)* "."?] "}" ("LIMIT" INT)?
//   group := subject pv (";" pv)*        pv := predicate object
//
// Keywords are case-insensitive; `#` starts a comment.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexalign/error.hpp"
#include "lexalign/triplemap.hpp"

namespace lexalign::sparql {

struct TriplePattern {
  rdf::Term subject;
  rdf::Term predicate;
  rdf::Term object;
  bool operator==(const TriplePattern&) const = default;
};

struct Query {
  std::vector<std::string> select_vars;  // names without '?'
  std::vector<TriplePattern> patterns;
  std::optional<std::uint64_t> limit;
  bool operator==(const Query&) const = default;
};

struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool operator==(const ResultTable&) const = default;
};

class EvaluationTimeout : public Error {
 public:
  EvaluationTimeout() : Error("query evaluation exceeded its deadline") {}
};

/// Throws ParseError (with line/column) on syntax errors, unknown prefixes,
/// and select variables that no pattern mentions.
Query parse_query(std::string_view text,
                  const rdf::PrefixTable& prefixes = rdf::PrefixTable::standard());

/// Canonical text form; parse_query(print_query(q)) == q.
std::string print_query(const Query& q);

/// Greedy join order: repeatedly takes the pattern with the fewest unbound
/// positions (variables bound by earlier picks count as bound), then the
/// smallest index cardinality over its constant positions, then input order.
/// Without a store only the first and last keys apply.
std::vector<TriplePattern> plan_order(const Query& q, const rdf::TripleStore* store = nullptr);

struct EvalOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// When false, patterns are joined in the order given.
  bool plan = true;
};

ResultTable evaluate(const Query& q, const rdf::TripleStore& store, const EvalOptions& options = {});

}  // namespace lexalign::sparql
