#include <doctest.h>

#include "lexalign/error.hpp"
#include "lexalign/structsim.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace lexalign::structure;
using onto::EntityId;
using onto::EntityKind;
using onto::Ontology;
using doctest::Approx;

namespace {

const Ontology& o206() {
  static const Ontology o = Ontology::load(testing::fixture("mini/onto206.nt"));
  return o;
}
const Ontology& o101() {
  static const Ontology o = Ontology::load(testing::fixture("mini/onto101.nt"));
  return o;
}

EntityId c206(const std::string& n) { return {"http://oaei.example/206#" + n, EntityKind::Class}; }
EntityId c101(const std::string& n) { return {"http://oaei.example/101#" + n, EntityKind::Class}; }
std::string i206(const std::string& n) { return "http://oaei.example/206#" + n; }
std::string i101(const std::string& n) { return "http://oaei.example/101#" + n; }

const NodeMatcher same_name = [](const TreeNode& a, const TreeNode& b) { return a.name == b.name; };

Ontology tiny(const std::string& root, const std::vector<std::string>& children) {
  const std::string T = " <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Class> .\n";
  const std::string S = " <http://www.w3.org/2000/01/rdf-schema#subClassOf> ";
  std::string text = "<http://t.example/" + root + ">" + T;
  for (const auto& c : children)
    text += "<http://t.example/" + c + ">" + T + "<http://t.example/" + c + ">" + S + "<http://t.example/" + root + "> .\n";
  return Ontology::parse(text);
}

}  // namespace

TEST_CASE("expanding tree levels") {
  const auto tree = expand_tree(o101(), c101("Reference"));
  CHECK(tree.root == c101("Reference"));
  std::vector<std::pair<std::string, int>> got;
  for (const auto& n : tree.nodes) got.emplace_back(n.name, n.level);
  const std::vector<std::pair<std::string, int>> want = {
      {"Article", 1}, {"Book", 1}, {"Collection", 1}, {"MotionPicture", 1}, {"Part", 1},
      {"firstPublished", 1}, {"key", 1}, {"title", 1}, {"Journal", 2}};
  CHECK(got == want);
  for (const auto& n : tree.nodes) CHECK(n.weight == (n.level == 1 ? 3.0 : 2.0));
  CHECK(tree.total_weight() == Approx(8 * 3.0 + 2.0));
}

TEST_CASE("expanding tree follows property ranges") {
  const auto tree = expand_tree(o101(), c101("Journal"));
  // articles (level 1) ranges over Article (level 2).
  REQUIRE(tree.nodes.size() == 2);
  CHECK(tree.nodes[0].name == "articles");
  CHECK(tree.nodes[1].entity == c101("Article"));
  CHECK(tree.nodes[1].level == 2);
}

TEST_CASE("expanding tree keeps the shallowest occurrence and stops at three levels") {
  std::string text;
  const std::string T = " <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/2002/07/owl#Class> .\n";
  const std::string S = " <http://www.w3.org/2000/01/rdf-schema#subClassOf> ";
  auto iri = [](const std::string& n) { return "<http://t.example/" + n + ">"; };
  for (const char* c : {"R", "A", "B", "C", "D", "E"}) text += iri(c) + T;
  // R > A > B > C > D > E, plus R > C directly.
  for (auto [sub, sup] : std::vector<std::pair<std::string, std::string>>{{"A", "R"}, {"B", "A"}, {"C", "B"}, {"D", "C"}, {"E", "D"}, {"C", "R"}})
    text += iri(sub) + S + iri(sup) + " .\n";
  const auto o = Ontology::parse(text);
  const auto tree = expand_tree(o, {"http://t.example/R", EntityKind::Class});
  std::vector<std::pair<std::string, int>> got;
  for (const auto& n : tree.nodes) got.emplace_back(n.name, n.level);
  CHECK(got == std::vector<std::pair<std::string, int>>{{"A", 1}, {"C", 1}, {"B", 2}, {"D", 2}, {"E", 3}});
  CHECK_THROWS_AS(expand_tree(o, {"http://t.example/Nope", EntityKind::Class}), UnknownEntity);
}

TEST_CASE("tree similarity is asymmetric") {
  const auto ox = tiny("X", {"A"});
  const auto oy = tiny("Y", {"A", "B"});
  const auto tx = expand_tree(ox, {"http://t.example/X", EntityKind::Class});
  const auto ty = expand_tree(oy, {"http://t.example/Y", EntityKind::Class});
  CHECK(tree_similarity(tx, ty, same_name) == 1.0);
  CHECK(tree_similarity(ty, tx, same_name) == Approx(0.5));
}

TEST_CASE("each node of the second tree is used once") {
  const auto ox = tiny("X", {"A", "Ab"});
  const auto oy = tiny("Y", {"A"});
  const auto tx = expand_tree(ox, {"http://t.example/X", EntityKind::Class});
  const auto ty = expand_tree(oy, {"http://t.example/Y", EntityKind::Class});
  const NodeMatcher prefix = [](const TreeNode& a, const TreeNode& b) { return a.name[0] == b.name[0]; };
  CHECK(tree_similarity(tx, ty, prefix) == Approx(0.5));
  // Empty trees have nothing to match.
  const auto empty = expand_tree(tiny("Z", {}), {"http://t.example/Z", EntityKind::Class});
  CHECK(tree_similarity(empty, ty, prefix) == 0.0);
}

TEST_CASE("tree similarity bounds on random hierarchies") {
  for (unsigned seed = 1; seed <= 100; ++seed) {
    std::mt19937 rng(seed);
    auto make = [&](const std::string& root) {
      std::vector<std::string> kids;
      const int n = static_cast<int>(rng() % 6);
      for (int i = 0; i < n; ++i) kids.push_back(std::string(1, static_cast<char>('a' + rng() % 4)) + std::to_string(i));
      return tiny(root, kids);
    };
    const auto ox = make("X");
    const auto oy = make("Y");
    const auto tx = expand_tree(ox, {"http://t.example/X", EntityKind::Class});
    const auto ty = expand_tree(oy, {"http://t.example/Y", EntityKind::Class});
    const NodeMatcher first = [](const TreeNode& a, const TreeNode& b) { return a.name[0] == b.name[0]; };
    const double s = tree_similarity(tx, ty, first);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(tree_similarity(tx, tx, same_name) == (tx.nodes.empty() ? 0.0 : 1.0));
  }
}

TEST_CASE("triple rule on the miniature pair") {
  const auto via_articles = triple_rule(o206(), o101(), from_pairs({{i206("Article"), i101("Article")},
                                                                    {i206("articles"), i101("articles")}}));
  CHECK(via_articles == std::vector<RuleMatch>{{c206("Revue"), c101("Journal")}});

  const auto via_classes = triple_rule(o206(), o101(), from_pairs({{i206("Livre"), i101("Book")},
                                                                   {i206("Personne"), i101("Person")}}));
  CHECK(via_classes == std::vector<RuleMatch>{{{i206("auteur"), EntityKind::ObjectProperty},
                                               {i101("author"), EntityKind::ObjectProperty}}});
  CHECK(triple_rule(o206(), o101(), from_pairs({})).empty());
}

TEST_CASE("subclass rule on the miniature pair") {
  CHECK(subclass_rule(o206(), o101(), from_pairs({{i206("Universite"), i101("School")}})) ==
        std::vector<RuleMatch>{{c206("Organisme"), c101("Institution")}});
  std::set<std::pair<std::string, std::string>> four = {{i206("Livre"), i101("Book")},
                                                        {i206("Article"), i101("Article")},
                                                        {i206("Film"), i101("MotionPicture")},
                                                        {i206("Partie"), i101("Part")}};
  CHECK(subclass_rule(o206(), o101(), from_pairs(four)).empty());
  four.insert({i206("Compilation"), i101("Collection")});
  CHECK(subclass_rule(o206(), o101(), from_pairs(four)) ==
        std::vector<RuleMatch>{{c206("Reference"), c101("Reference")}});
}

TEST_CASE("subclass rule needs a one-to-one correspondence") {
  const auto ox = tiny("X", {"A", "B"});
  const auto oy = tiny("Y", {"C", "D"});
  auto i = [](const char* n) { return std::string("http://t.example/") + n; };
  // A matches both, B matches only C: still perfect (A-D, B-C).
  CHECK(subclass_rule(ox, oy, from_pairs({{i("A"), i("C")}, {i("A"), i("D")}, {i("B"), i("C")}})).size() == 1);
  // Both match only C: no perfect matching.
  CHECK(subclass_rule(ox, oy, from_pairs({{i("A"), i("C")}, {i("B"), i("C")}})).empty());
}

TEST_CASE("expansion config validity") {
  CHECK(ExpansionConfig{}.valid());
  CHECK_FALSE(ExpansionConfig{{3, 2, -1}, 0.9}.valid());
  CHECK_FALSE(ExpansionConfig{{3, 2, 1}, 1.5}.valid());
}
