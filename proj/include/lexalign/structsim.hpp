#pragma once

// Structural matching: the triple rule, the subclass rule and the
// weighted expanding tree.

#include <array>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexalign/ontomodel.hpp"

namespace lexalign::structure {

struct ExpansionConfig {
  std::array<double, 3> level_weights{3.0, 2.0, 1.0};
  double label_matcher_threshold = 0.9;
  bool valid() const;
};

struct TreeNode {
  onto::EntityId entity;
  std::string name;  // display name
  int level = 1;     // 1..3
  double weight = 0;
};

struct WeightedTree {
  onto::EntityId root;
  std::vector<TreeNode> nodes;  // by level, then name
  double total_weight() const;
};

/// Level 1: direct subclasses of `c` and properties with `c` as domain or
/// range. Level k+1: subclasses of level-k classes and class ranges of
/// level-k properties. Each entity appears once, at its shallowest level;
/// the root never appears. Throws UnknownEntity.
WeightedTree expand_tree(const onto::Ontology& o, const onto::EntityId& c,
                         const ExpansionConfig& cfg = {});

using NodeMatcher = std::function<bool(const TreeNode&, const TreeNode&)>;

/// Matched weight of `tx` over its total weight. Each `ty` node is used at
/// most once; `tx` nodes are visited by descending weight, then name.
double tree_similarity(const WeightedTree& tx, const WeightedTree& ty, const NodeMatcher& matcher);

/// Matched-entity relation between the two ontologies (left in o1, right in o2).
using Equivalence = std::function<bool(const onto::EntityId&, const onto::EntityId&)>;

/// Equivalence from a set of (o1 IRI, o2 IRI) pairs.
Equivalence from_pairs(std::set<std::pair<std::string, std::string>> pairs);

struct RuleMatch {
  onto::EntityId left;
  onto::EntityId right;
  auto operator<=>(const RuleMatch&) const = default;
};

/// Object properties with matching domains and matching ranges are
/// emitted; properties that match with matching ranges emit their domains.
/// Sorted and free of duplicates.
std::vector<RuleMatch> triple_rule(const onto::Ontology& o1, const onto::Ontology& o2,
                                   const Equivalence& same);

/// Classes whose non-empty direct-subclass sets correspond one-to-one.
std::vector<RuleMatch> subclass_rule(const onto::Ontology& o1, const onto::Ontology& o2,
                                     const Equivalence& same);

}  // namespace lexalign::structure
