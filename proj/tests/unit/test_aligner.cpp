#include <doctest.h>

#include <fstream>

#include "lexalign/aligner.hpp"
#include "lexalign/error.hpp"
#include "support.hpp"

using namespace lexalign;
using namespace lexalign::align;
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
const dict::DictionaryStore& biblio() {
  static const auto s = dict::DictionaryStore::ingest(testing::fixture("dict_biblio"));
  return s;
}
const taxsim::Thesaurus& thesaurus() {
  static const auto t = taxsim::Thesaurus::load(testing::fixture("mini/thesaurus_ic.tsv"));
  return t;
}

std::string L(const std::string& n) { return "http://oaei.example/206#" + n; }
std::string R(const std::string& n) { return "http://oaei.example/101#" + n; }
EntityId cls(const std::string& iri) { return {iri, EntityKind::Class}; }

Correspondence corr(const std::string& l, const std::string& r, double s, Strategy st = Strategy::String) {
  return {cls(l), cls(r), s, st};
}

Alignment run(const MatchConfig& cfg = {}, bool with_thesaurus = true) {
  const labels::DictionaryTranslator t(biblio());
  return align::align(o206(), o101(), t, cfg, with_thesaurus ? &thesaurus() : nullptr);
}

}  // namespace

TEST_CASE("alignment keeps one partner per entity") {
  Alignment a;
  a.add(corr("b", "y", 0.5));
  a.add(corr("a", "x", 1.0));
  CHECK(a.size() == 2);
  CHECK(a.correspondences()[0].left.iri == "a");
  CHECK(a.contains("b", "y"));
  CHECK_FALSE(a.contains("b", "x"));
  CHECK(a.for_left("a")->right.iri == "x");
  CHECK(a.for_left("zz") == nullptr);
  CHECK_THROWS_AS(a.add(corr("a", "z", 0.3)), DataError);
  CHECK_THROWS_AS(a.add(corr("c", "x", 0.3)), DataError);
  CHECK_THROWS_AS(a.add(corr("c", "z", 1.5)), DataError);
  CHECK_THROWS_AS(a.add(corr("c", "z", -0.1)), DataError);
  CHECK_THROWS_AS(a.add(corr("c", "z", std::nan(""))), DataError);
  CHECK(a.size() == 2);
  CHECK_THROWS_AS(Alignment({corr("a", "x", 1), corr("a", "y", 1)}), DataError);
}

TEST_CASE("greedy selection properties on random candidates") {
  for (unsigned seed = 1; seed <= 300; ++seed) {
    std::mt19937 rng(seed);
    std::vector<Correspondence> cands;
    const int n = static_cast<int>(rng() % 40);
    for (int i = 0; i < n; ++i)
      cands.push_back(corr("l" + std::to_string(rng() % 6), "r" + std::to_string(rng() % 6),
                           static_cast<double>(rng() % 5) / 4.0, static_cast<Strategy>(rng() % 3)));
    const Alignment a = select_one_to_one(cands);

    std::map<std::pair<std::string, std::string>, double> best;
    for (const auto& c : cands) {
      auto& b = best[{c.left.iri, c.right.iri}];
      b = std::max(b, c.score);
    }
    std::set<std::string> lefts, rights;
    for (const auto& c : a.correspondences()) {
      CHECK(lefts.insert(c.left.iri).second);
      CHECK(rights.insert(c.right.iri).second);
      REQUIRE(best.count({c.left.iri, c.right.iri}));
      CHECK(c.score == best.at({c.left.iri, c.right.iri}));
    }
    // Maximal: every candidate left out conflicts with a chosen pair scoring at least as much.
    for (const auto& [pair, score] : best) {
      if (a.contains(pair.first, pair.second)) continue;
      bool blocked = false;
      for (const auto& c : a.correspondences())
        if ((c.left.iri == pair.first || c.right.iri == pair.second) && c.score >= score) blocked = true;
      CHECK(blocked);
    }
    // Input order does not matter.
    auto shuffled = cands;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(select_one_to_one(shuffled).pairs() == a.pairs());
  }
}

TEST_CASE("ties go to the smaller IRIs") {
  const auto a = select_one_to_one({corr("b", "x", 0.8), corr("a", "x", 0.8), corr("a", "y", 0.8)});
  CHECK(a.pairs() == PairSet{{"a", "x"}});
  const auto b = select_one_to_one({corr("a", "x", 0.8, Strategy::Lexical), corr("a", "x", 0.8, Strategy::String)});
  CHECK(b.correspondences()[0].source == Strategy::Lexical);  // first seen keeps the tie
}

TEST_CASE("metric arithmetic") {
  auto make = [](std::size_t a, std::size_t r, std::size_t both) {
    PairSet A, Rf;
    for (std::size_t i = 0; i < both; ++i) {
      A.emplace("x" + std::to_string(i), "y" + std::to_string(i));
      Rf.emplace("x" + std::to_string(i), "y" + std::to_string(i));
    }
    for (std::size_t i = both; i < a; ++i) A.emplace("a" + std::to_string(i), "b");
    for (std::size_t i = both; i < r; ++i) Rf.emplace("r" + std::to_string(i), "s");
    return evaluate(A, Rf);
  };
  const auto w = make(54, 97, 53);
  CHECK(w.display() == "precision=0.98 recall=0.55 |A|=54 |R|=97 |R∩A|=53");
  CHECK(std::abs(w.precision - 53.0 / 54.0) < 1e-12);
  CHECK(std::abs(w.recall - 53.0 / 97.0) < 1e-12);
  const auto g = make(61, 97, 60);
  CHECK(g.display() == "precision=0.98 recall=0.62 |A|=61 |R|=97 |R∩A|=60");
  const auto none = make(0, 5, 0);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(make(3, 0, 0).recall == 0.0);
}

TEST_CASE("evaluate agrees with set intersection on random alignments") {
  for (unsigned seed = 1; seed <= 500; ++seed) {
    std::mt19937 rng(seed);
    PairSet A, Rf;
    for (int i = 0, n = static_cast<int>(rng() % 30); i < n; ++i)
      A.emplace("l" + std::to_string(rng() % 10), "r" + std::to_string(rng() % 10));
    for (int i = 0, n = static_cast<int>(rng() % 30); i < n; ++i)
      Rf.emplace("l" + std::to_string(rng() % 10), "r" + std::to_string(rng() % 10));
    std::vector<std::pair<std::string, std::string>> both;
    std::set_intersection(A.begin(), A.end(), Rf.begin(), Rf.end(), std::back_inserter(both));
    const auto m = evaluate(A, Rf);
    CHECK(m.intersection == both.size());
    CHECK(m.precision == (A.empty() ? 0.0 : static_cast<double>(both.size()) / static_cast<double>(A.size())));
    CHECK(m.recall == (Rf.empty() ? 0.0 : static_cast<double>(both.size()) / static_cast<double>(Rf.size())));
  }
}

TEST_CASE("string scores for single labels") {
  const labels::DictionaryTranslator t(biblio());
  const MatchConfig cfg;
  auto score = [&](const std::string& label, const std::string& target) {
    return string_score(labels::translate_label(label, t, "fr", "en"), labels::tokenize(target), cfg);
  };
  CHECK(score("Film", "MotionPicture") == 1.0);
  CHECK(score("Université", "School") == 1.0);
  CHECK(score("isbn", "isbn") == 1.0);
  CHECK_FALSE(score("nomCourt", "shortName").has_value());
  CHECK(score("nomCourt", "nameShort") == 1.0);  // same order as the tokens
  CHECK_FALSE(score("Conférence", "Conference").has_value());
  CHECK_FALSE(score("dateDePublication", "firstPublished").has_value());
  CHECK(score("Partie", "Part") == 1.0);
  CHECK_FALSE(score("Film", "Motion").has_value());  // every target word must be covered
}

TEST_CASE("smith-waterman alternative") {
  const auto table = labels::StaticTableTranslator::load(testing::fixture("mini/table_fr_en.tsv"));
  MatchConfig cfg;
  const auto label = labels::translate_label("nomCourt", table, "fr", "en");
  CHECK_FALSE(string_score(label, {"short", "name"}, cfg).has_value());
  cfg.sw_enabled = true;
  CHECK(string_score(label, {"short", "name"}, cfg) == 1.0);
}

TEST_CASE("pipeline behavior on the miniature pair") {
  const auto a = run();
  CHECK(a.contains(L("Film"), R("MotionPicture")));
  CHECK(a.contains(L("Universite"), R("School")));
  CHECK(a.contains(L("isbn"), R("isbn")));
  CHECK(a.for_left(L("nomCourt")) == nullptr);
  CHECK(a.contains(L("Revue"), R("Journal")));
  CHECK(a.for_left(L("Revue"))->source == Strategy::Structure);

  MatchConfig flat;
  flat.structure_enabled = false;
  const auto b = run(flat);
  CHECK(b.for_left(L("Revue")) == nullptr);
  CHECK(b.contains(L("Organisme"), R("Institution")));
  CHECK(b.for_left(L("Organisme"))->score == Approx(0.625).epsilon(1e-12));
  CHECK(b.for_left(L("Organisme"))->source == Strategy::Lexical);
}

TEST_CASE("end-to-end result equals the hand-checked set") {
  const auto mine = run();
  const auto expected = read_alignment(testing::fixture("mini/expected.tsv"), o206(), o101());
  CHECK(mine.pairs() == expected.pairs());
  CHECK(equal_at_file_precision(mine, expected));
  const auto m = evaluate(mine.pairs(), to_pair_set(read_pairs(testing::fixture("mini/reference.tsv"))));
  CHECK(m.precision >= 0.9);
  CHECK(m.display() == "precision=1.00 recall=0.74 |A|=14 |R|=19 |R∩A|=14");
}

TEST_CASE("without a thesaurus the lexical stage is skipped") {
  MatchConfig flat;
  flat.structure_enabled = false;
  CHECK(run(flat, false).for_left(L("Organisme")) == nullptr);
  // The subclass rule still finds it.
  CHECK(run({}, false).contains(L("Organisme"), R("Institution")));
}

TEST_CASE("raising the threshold never adds string matches") {
  const labels::DictionaryTranslator t(biblio());
  const auto table = labels::StaticTableTranslator::load(testing::fixture("mini/table_fr_en.tsv"));
  const labels::IdentityTranslator identity;
  for (const labels::Translator* tr : std::vector<const labels::Translator*>{&t, &table, &identity}) {
    MatchConfig cfg;
    const auto labels = translate_entities(o206(), *tr, cfg);
    PairSet previous;
    bool first = true;
    for (double th = 0.05; th <= 1.0 + 1e-9; th += 0.05) {
      cfg.jw_threshold = std::min(th, 1.0);
      for (const bool sw : {false, true}) {
        cfg.sw_enabled = sw;
        PairSet now;
        for (const auto& c : string_stage(o206(), o101(), labels, cfg)) {
          now.emplace(c.left.iri, c.right.iri);
          CHECK(c.score >= cfg.jw_threshold);
        }
        if (!sw) {
          if (!first) CHECK(std::includes(previous.begin(), previous.end(), now.begin(), now.end()));
          previous = now;
          first = false;
        }
      }
    }
  }
}

TEST_CASE("results do not depend on thread count or repetition") {
  const auto once = run();
  for (unsigned threads : {1u, 2u, 4u, 7u}) {
    MatchConfig cfg;
    cfg.threads = threads;
    const auto again = run(cfg);
    CHECK(again.correspondences() == once.correspondences());
  }
}

TEST_CASE("self alignment contains the identity") {
  const labels::IdentityTranslator id;
  for (const Ontology* o : {&o206(), &o101()}) {
    MatchConfig cfg;
    cfg.source_lang = cfg.target_lang = "en";
    const auto a = align::align(*o, *o, id, cfg);
    for (const auto& e : o->entities()) CHECK_MESSAGE(a.contains(e.iri, e.iri), e.iri);
  }
}

TEST_CASE("translator failures carry the label") {
  struct Down final : labels::Translator {
    std::vector<std::string> translate(std::string_view, std::string_view, std::string_view) const override {
      throw Error("connection refused");
    }
  };
  try {
    align::align(o206(), o101(), Down{}, {});
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("connection refused") != std::string::npos);
    CHECK(what.find("http://oaei.example/206#") != std::string::npos);
  }
}

TEST_CASE("invalid configurations are refused") {
  const labels::IdentityTranslator id;
  MatchConfig cfg;
  cfg.jw_threshold = 0;
  CHECK_THROWS_AS(align::align(o206(), o101(), id, cfg), Error);
  cfg = {};
  cfg.threads = 0;
  CHECK_THROWS_AS(align::align(o206(), o101(), id, cfg), Error);
}

TEST_CASE("alignment files") {
  const auto dir = testing::scratch_dir("alignment_files");
  const auto a = run();
  write_alignment(a, dir / "a.tsv");
  const auto back = read_alignment(dir / "a.tsv", o206(), o101());
  CHECK(equal_at_file_precision(a, back));
  CHECK(back.correspondences()[0].source == Strategy::Imported);

  const auto text = testing::read_file(dir / "a.tsv");
  CHECK(text.rfind("http://oaei.example/206#Article\thttp://oaei.example/101#Article\t1.0000\n", 0) == 0);

  Alignment fractional({corr(L("Livre"), R("Book"), 1.0 / 3.0)});
  write_alignment(fractional, dir / "f.tsv");
  CHECK(testing::read_file(dir / "f.tsv") == L("Livre") + "\t" + R("Book") + "\t0.3333\n");
  CHECK(equal_at_file_precision(fractional, read_alignment(dir / "f.tsv", o206(), o101())));

  auto bad = [&](const std::string& name, const std::string& body) {
    std::ofstream(dir / name) << body;
    return dir / name;
  };
  CHECK_THROWS_AS(read_pairs(bad("cols.tsv", "a\tb\n")), IngestError);
  CHECK_THROWS_AS(read_pairs(bad("score.tsv", "a\tb\thigh\n")), IngestError);
  CHECK_THROWS_AS(read_pairs(bad("range.tsv", "a\tb\t1.5\n")), IngestError);
  CHECK_THROWS_AS(read_pairs(bad("neg.tsv", "a\tb\t-0.5\n")), IngestError);
  CHECK_THROWS_AS(read_alignment(bad("unknown.tsv", L("Livre") + "\t" + R("Nope") + "\t1\n"), o206(), o101()),
                  UnknownEntity);
  CHECK_THROWS_AS(read_alignment(bad("dup.tsv", L("Livre") + "\t" + R("Book") + "\t1\n" + L("Livre") + "\t" +
                                                    R("Part") + "\t1\n"),
                                 o206(), o101()),
                  DataError);
  CHECK(read_pairs(bad("comments.tsv", "# note\n\na\tb\t0.5\n")).size() == 1);
  CHECK_THROWS_AS(read_pairs(dir / "absent.tsv"), DataError);
}
