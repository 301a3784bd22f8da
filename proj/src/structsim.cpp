#include "lexalign/structsim.hpp"

#include <algorithm>
#include <map>

#include "lexalign/error.hpp"

namespace lexalign::structure {

using onto::EntityId;
using onto::EntityKind;

bool ExpansionConfig::valid() const {
  return level_weights[0] > level_weights[1] && level_weights[1] > level_weights[2] &&
         level_weights[2] > 0 && label_matcher_threshold > 0 && label_matcher_threshold <= 1;
}

double WeightedTree::total_weight() const {
  double sum = 0;
  for (const auto& n : nodes) sum += n.weight;
  return sum;
}

WeightedTree expand_tree(const onto::Ontology& o, const EntityId& c, const ExpansionConfig& cfg) {
  if (!cfg.valid()) throw Error("invalid expansion config");
  WeightedTree tree;
  tree.root = c;
  std::set<EntityId> seen{c};

  std::vector<EntityId> frontier;
  for (const auto& s : o.direct_subclasses(c)) frontier.push_back(s);
  for (const auto& p : o.properties_of(c)) frontier.push_back(p);

  for (int level = 1; level <= 3 && !frontier.empty(); ++level) {
    std::vector<EntityId> next;
    std::vector<TreeNode> added;
    for (const auto& e : frontier) {
      if (!seen.insert(e).second) continue;
      added.push_back({e, o.display_name(e), level, cfg.level_weights[level - 1]});
      if (e.kind == EntityKind::Class) {
        for (const auto& s : o.direct_subclasses(e)) next.push_back(s);
      } else if (auto r = o.range_class(e)) {
        next.push_back(*r);
      }
    }
    std::sort(added.begin(), added.end(), [](const TreeNode& a, const TreeNode& b) {
      return std::tie(a.name, a.entity) < std::tie(b.name, b.entity);
    });
    tree.nodes.insert(tree.nodes.end(), added.begin(), added.end());
    frontier = std::move(next);
  }
  return tree;
}

double tree_similarity(const WeightedTree& tx, const WeightedTree& ty, const NodeMatcher& matcher) {
  const double total = tx.total_weight();
  if (tx.nodes.empty() || total <= 0) return 0.0;

  auto by_weight = [](const TreeNode& a, const TreeNode& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return std::tie(a.name, a.entity) < std::tie(b.name, b.entity);
  };
  std::vector<TreeNode> xs = tx.nodes;
  std::vector<TreeNode> ys = ty.nodes;
  std::sort(xs.begin(), xs.end(), by_weight);
  std::sort(ys.begin(), ys.end(), by_weight);

  std::vector<bool> used(ys.size(), false);
  double matched = 0;
  for (const auto& x : xs) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (used[j] || !matcher(x, ys[j])) continue;
      used[j] = true;
      matched += x.weight;
      break;
    }
  }
  return std::min(1.0, matched / total);
}

Equivalence from_pairs(std::set<std::pair<std::string, std::string>> pairs) {
  return [pairs = std::move(pairs)](const EntityId& a, const EntityId& b) {
    return pairs.count({a.iri, b.iri}) > 0;
  };
}

std::vector<RuleMatch> triple_rule(const onto::Ontology& o1, const onto::Ontology& o2,
                                   const Equivalence& same) {
  std::set<RuleMatch> out;
  const auto props1 = o1.entities(EntityKind::ObjectProperty);
  const auto props2 = o2.entities(EntityKind::ObjectProperty);
  for (const auto& p1 : props1) {
    const auto d1 = o1.domain_of(p1);
    const auto r1 = o1.range_class(p1);
    if (!r1) continue;
    for (const auto& p2 : props2) {
      const auto d2 = o2.domain_of(p2);
      const auto r2 = o2.range_class(p2);
      if (!r2 || !same(*r1, *r2)) continue;
      // (domain, ?, range) shared: the relations are the same.
      if (d1 && d2 && same(*d1, *d2)) out.insert({p1, p2});
      // (?, predicate, range) shared: the domains are the same.
      if (d1 && d2 && same(p1, p2)) out.insert({*d1, *d2});
    }
  }
  return {out.begin(), out.end()};
}

namespace {

// Perfect matching between two equal-size sets via augmenting paths.
bool perfect_matching(const std::vector<EntityId>& left, const std::vector<EntityId>& right,
                      const Equivalence& same) {
  if (left.size() != right.size()) return false;
  const std::size_t n = left.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (same(left[i], right[j])) adj[i].push_back(j);
  std::vector<std::size_t> owner(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> visited(n, false);
    auto augment = [&](auto& self, std::size_t u) -> bool {
      for (std::size_t v : adj[u]) {
        if (visited[v]) continue;
        visited[v] = true;
        if (owner[v] == n || self(self, owner[v])) {
          owner[v] = u;
          return true;
        }
      }
      return false;
    };
    if (!augment(augment, i)) return false;
  }
  return true;
}

}  // namespace

std::vector<RuleMatch> subclass_rule(const onto::Ontology& o1, const onto::Ontology& o2,
                                     const Equivalence& same) {
  std::vector<RuleMatch> out;
  std::vector<std::pair<EntityId, std::vector<EntityId>>> parents2;
  for (const auto& c2 : o2.entities(EntityKind::Class)) {
    auto subs = o2.direct_subclasses(c2);
    if (!subs.empty()) parents2.emplace_back(c2, std::vector<EntityId>(subs.begin(), subs.end()));
  }
  for (const auto& c1 : o1.entities(EntityKind::Class)) {
    const auto subs1 = o1.direct_subclasses(c1);
    if (subs1.empty()) continue;
    const std::vector<EntityId> left(subs1.begin(), subs1.end());
    for (const auto& [c2, right] : parents2)
      if (perfect_matching(left, right, same)) out.push_back({c1, c2});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lexalign::structure
