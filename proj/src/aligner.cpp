#include "lexalign/aligner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "lexalign/error.hpp"
#include "lexalign/tsv.hpp"
#include "lexalign/utf8.hpp"

namespace lexalign::align {

using onto::EntityId;
using onto::EntityKind;

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::String: return "string";
    case Strategy::Lexical: return "lexical";
    case Strategy::Structure: return "structure";
    case Strategy::Imported: return "imported";
  }
  return "?";
}

// --- Alignment -------------------------------------------------------------

namespace {

bool by_pair(const Correspondence& a, const Correspondence& b) {
  return std::tie(a.left.iri, a.right.iri) < std::tie(b.left.iri, b.right.iri);
}

}  // namespace

Alignment::Alignment(std::vector<Correspondence> correspondences) {
  for (auto& c : correspondences) add(std::move(c));
}

void Alignment::add(Correspondence c) {
  if (!(c.score >= 0.0 && c.score <= 1.0))
    throw DataError("score " + std::to_string(c.score) + " outside [0, 1]");
  if (lefts_.count(c.left.iri)) throw DataError("<" + c.left.iri + "> aligned twice");
  if (rights_.count(c.right.iri)) throw DataError("<" + c.right.iri + "> aligned twice");
  lefts_.insert(c.left.iri);
  rights_.insert(c.right.iri);
  items_.insert(std::upper_bound(items_.begin(), items_.end(), c, by_pair), std::move(c));
}

bool Alignment::contains(std::string_view left_iri, std::string_view right_iri) const {
  const Correspondence* c = for_left(left_iri);
  return c && c->right.iri == right_iri;
}

const Correspondence* Alignment::for_left(std::string_view left_iri) const {
  for (const auto& c : items_)
    if (c.left.iri == left_iri) return &c;
  return nullptr;
}

std::set<std::pair<std::string, std::string>> Alignment::pairs() const {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& c : items_) out.emplace(c.left.iri, c.right.iri);
  return out;
}

bool MatchConfig::valid() const {
  return jw_threshold > 0 && jw_threshold <= 1 && jcn_threshold > 0 && expansion.valid() &&
         sw.valid() && threads > 0;
}

// --- metrics ---------------------------------------------------------------

std::string Metrics::display() const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "precision=%.2f recall=%.2f |A|=%zu |R|=%zu |R∩A|=%zu",
                precision, recall, retrieved, reference, intersection);
  return buf;
}

Metrics evaluate(const PairSet& retrieved, const PairSet& reference) {
  Metrics m;
  m.retrieved = retrieved.size();
  m.reference = reference.size();
  for (const auto& p : retrieved) m.intersection += reference.count(p);
  const double inter = static_cast<double>(m.intersection);
  m.precision = m.retrieved ? inter / static_cast<double>(m.retrieved) : 0.0;
  m.recall = m.reference ? inter / static_cast<double>(m.reference) : 0.0;
  return m;
}

Metrics evaluate(const Alignment& retrieved, const Alignment& reference) {
  return evaluate(retrieved.pairs(), reference.pairs());
}

// --- string stage ----------------------------------------------------------

namespace {

using Words = std::vector<std::u32string>;
using Position = std::vector<Words>;  // alternatives at one label position

Words words_of(std::string_view text) {
  Words out;
  for (const auto& t : labels::tokenize(text)) out.push_back(utf8::decode(t));
  return out;
}

// Best sum of per-word Jaro-Winkler over coverings of `target` by the
// positions in order, or a negative value when none exists.
double cover(const std::vector<Position>& positions, const Words& target, double threshold) {
  const std::size_t n = positions.size();
  const std::size_t m = target.size();
  std::vector<double> dp((n + 1) * (m + 1), -1.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return dp[i * (m + 1) + j]; };
  at(0, 0) = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      const double base = at(i, j);
      if (base < 0) continue;
      for (const Words& alt : positions[i]) {
        if (alt.empty() || j + alt.size() > m) continue;
        double sum = base;
        bool ok = true;
        for (std::size_t w = 0; w < alt.size() && ok; ++w) {
          const double s = strsim::jaro_winkler(alt[w], target[j + w]);
          ok = s >= threshold;
          sum += s;
        }
        if (ok) at(i + 1, j + alt.size()) = std::max(at(i + 1, j + alt.size()), sum);
      }
    }
  }
  return at(n, m);
}

std::string concat(const Words& w) {
  std::u32string out;
  for (const auto& x : w) out += x;
  return utf8::encode(out);
}

}  // namespace

TranslatedLabels translate_entities(const onto::Ontology& o1, const labels::Translator& t,
                                    const MatchConfig& cfg) {
  TranslatedLabels out;
  for (const auto& e : o1.entities()) {
    const std::string name = o1.display_name(e);
    try {
      out.emplace(e.iri, labels::translate_label(name, t, cfg.source_lang, cfg.target_lang));
    } catch (const std::exception& ex) {
      throw Error("translating label '" + name + "' of <" + e.iri + ">: " + ex.what());
    }
  }
  return out;
}

std::optional<double> string_score(const labels::TranslatedLabel& label,
                                   const std::vector<std::string>& target_tokens,
                                   const MatchConfig& cfg) {
  Words target;
  for (const auto& t : target_tokens) target.push_back(utf8::decode(utf8::to_lower(t)));
  if (target.empty()) return std::nullopt;
  const double m = static_cast<double>(target.size());
  double best = -1.0;

  for (const auto& candidate : label.whole_label_candidates) {
    std::vector<Position> positions;
    const Words words = words_of(candidate);
    for (const auto& w : words) positions.push_back({Words{w}});
    if (positions.empty()) continue;
    const double sum = cover(positions, target, cfg.jw_threshold);
    if (sum >= 0) best = std::max(best, sum / m);
    if (cfg.sw_enabled) {
      const double sw = strsim::sw_normalized(concat(words), concat(target), cfg.sw);
      if (sw >= cfg.jw_threshold) best = std::max(best, sw);
    }
  }

  // Per-token candidates in label order; an untranslated token stands for itself.
  std::vector<Position> positions;
  for (std::size_t i = 0; i < label.tokens.size(); ++i) {
    Position p;
    const auto& cands = i < label.per_token_candidates.size() ? label.per_token_candidates[i]
                                                               : std::vector<std::string>{};
    for (const auto& c : cands) {
      Words w = words_of(c);
      if (!w.empty()) p.push_back(std::move(w));
    }
    if (p.empty()) p.push_back(words_of(label.tokens[i]));
    positions.push_back(std::move(p));
  }
  const double sum = cover(positions, target, cfg.jw_threshold);
  if (sum >= 0) best = std::max(best, sum / m);

  if (cfg.sw_enabled && label.fallback_used) {
    const double sw = strsim::sw_normalized(concat(words_of(label.original)), concat(target), cfg.sw);
    if (sw >= cfg.jw_threshold) best = std::max(best, sw);
  }

  if (best < cfg.jw_threshold) return std::nullopt;
  return std::min(1.0, best);
}

namespace {

template <typename Fn>
void parallel_rows(std::size_t rows, unsigned threads, Fn fn) {
  if (threads <= 1 || rows < 2) {
    for (std::size_t i = 0; i < rows; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(rows));
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < rows; i += n) fn(i);
    });
  for (auto& th : pool) th.join();
}

std::map<std::string, std::vector<std::string>> target_tokens(const onto::Ontology& o2) {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& e : o2.entities()) out.emplace(e.iri, labels::tokenize(o2.display_name(e)));
  return out;
}

}  // namespace

std::vector<Correspondence> string_stage(const onto::Ontology& o1, const onto::Ontology& o2,
                                         const TranslatedLabels& labels, const MatchConfig& cfg) {
  const auto& left = o1.entities();
  const auto& right = o2.entities();
  const auto tokens = target_tokens(o2);
  std::vector<std::vector<Correspondence>> rows(left.size());
  parallel_rows(left.size(), cfg.threads, [&](std::size_t i) {
    const auto& label = labels.at(left[i].iri);
    for (const auto& r : right) {
      if (r.kind != left[i].kind) continue;
      if (auto s = string_score(label, tokens.at(r.iri), cfg))
        rows[i].push_back({left[i], r, *s, Strategy::String});
    }
  });
  std::vector<Correspondence> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

// --- lexical stage ---------------------------------------------------------

std::vector<Correspondence> lexical_stage(const onto::Ontology& o1, const onto::Ontology& o2,
                                          const TranslatedLabels& labels,
                                          const taxsim::Thesaurus& thesaurus,
                                          const MatchConfig& cfg, const PairSet& skip) {
  auto phrase = [](const std::vector<std::string>& tokens) {
    return tsv::join(tokens, ' ');
  };
  std::vector<Correspondence> out;
  const auto right = o2.entities(EntityKind::Class);
  for (const auto& l : o1.entities(EntityKind::Class)) {
    const auto& label = labels.at(l.iri);
    std::vector<std::string> words;
    for (const auto& c : label.whole_label_candidates) words.push_back(phrase(labels::tokenize(c)));
    if (label.tokens.size() == 1)
      for (const auto& c : label.per_token_candidates[0]) words.push_back(phrase(labels::tokenize(c)));
    if (label.fallback_used) words.push_back(phrase(label.tokens));

    for (const auto& r : right) {
      if (skip.count({l.iri, r.iri})) continue;
      const std::string target = phrase(labels::tokenize(o2.display_name(r)));
      double best = 0;
      for (const auto& w : words) best = std::max(best, taxsim::lexical_match(thesaurus, w, target));
      if (best >= cfg.jcn_threshold) out.push_back({l, r, best / (1.0 + best), Strategy::Lexical});
    }
  }
  return out;
}

// --- structural stage ------------------------------------------------------

std::vector<Correspondence> structural_stage(const onto::Ontology& o1, const onto::Ontology& o2,
                                             const TranslatedLabels& labels,
                                             const std::vector<Correspondence>& candidates,
                                             const MatchConfig& cfg) {
  PairSet seed;
  for (const auto& c : candidates) seed.emplace(c.left.iri, c.right.iri);
  const auto same = structure::from_pairs(seed);

  std::vector<Correspondence> out;
  for (const auto& m : structure::triple_rule(o1, o2, same))
    out.push_back({m.left, m.right, 1.0, Strategy::Structure});
  for (const auto& m : structure::subclass_rule(o1, o2, same))
    out.push_back({m.left, m.right, 1.0, Strategy::Structure});

  MatchConfig node_cfg = cfg;
  node_cfg.jw_threshold = cfg.expansion.label_matcher_threshold;
  const auto tokens = target_tokens(o2);
  std::map<std::pair<std::string, std::string>, bool> node_cache;
  const structure::NodeMatcher matcher = [&](const structure::TreeNode& x,
                                             const structure::TreeNode& y) {
    if (x.entity.kind != y.entity.kind) return false;
    auto [it, fresh] = node_cache.try_emplace({x.entity.iri, y.entity.iri}, false);
    if (fresh)
      it->second = string_score(labels.at(x.entity.iri), tokens.at(y.entity.iri), node_cfg).has_value();
    return it->second;
  };

  std::map<std::string, structure::WeightedTree> trees1, trees2;
  std::set<std::pair<std::string, std::string>> done;
  for (const auto& c : candidates) {
    if (c.left.kind != EntityKind::Class || c.right.kind != EntityKind::Class) continue;
    if (!done.emplace(c.left.iri, c.right.iri).second) continue;
    auto t1 = trees1.find(c.left.iri);
    if (t1 == trees1.end()) t1 = trees1.emplace(c.left.iri, structure::expand_tree(o1, c.left, cfg.expansion)).first;
    auto t2 = trees2.find(c.right.iri);
    if (t2 == trees2.end()) t2 = trees2.emplace(c.right.iri, structure::expand_tree(o2, c.right, cfg.expansion)).first;
    const double sim = structure::tree_similarity(t1->second, t2->second, matcher);
    if (sim > 0) out.push_back({c.left, c.right, sim, Strategy::Structure});
  }
  return out;
}

// --- aggregation -----------------------------------------------------------

Alignment select_one_to_one(const std::vector<Correspondence>& candidates) {
  std::map<std::pair<std::string, std::string>, Correspondence> best;
  for (const auto& c : candidates) {
    auto [it, fresh] = best.try_emplace({c.left.iri, c.right.iri}, c);
    if (!fresh && c.score > it->second.score) it->second = c;
  }
  std::vector<Correspondence> ranked;
  ranked.reserve(best.size());
  for (auto& [key, c] : best) {
    c.score = std::clamp(c.score, 0.0, 1.0);
    ranked.push_back(c);
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Correspondence& a, const Correspondence& b) {
    if (a.score != b.score) return a.score > b.score;
    return by_pair(a, b);
  });

  Alignment out;
  std::set<std::string> lefts, rights;
  for (const auto& c : ranked) {
    if (lefts.count(c.left.iri) || rights.count(c.right.iri)) continue;
    lefts.insert(c.left.iri);
    rights.insert(c.right.iri);
    out.add(c);
  }
  return out;
}

Alignment align(const onto::Ontology& o1, const onto::Ontology& o2, const labels::Translator& t,
                const MatchConfig& cfg, const taxsim::Thesaurus* thesaurus) {
  if (!cfg.valid()) throw Error("invalid match configuration");
  const TranslatedLabels labels = translate_entities(o1, t, cfg);
  std::vector<Correspondence> candidates = string_stage(o1, o2, labels, cfg);
  if (thesaurus) {
    PairSet matched;
    for (const auto& c : candidates) matched.emplace(c.left.iri, c.right.iri);
    auto lexical = lexical_stage(o1, o2, labels, *thesaurus, cfg, matched);
    candidates.insert(candidates.end(), lexical.begin(), lexical.end());
  }
  if (cfg.structure_enabled) {
    auto structural = structural_stage(o1, o2, labels, candidates, cfg);
    candidates.insert(candidates.end(), structural.begin(), structural.end());
  }
  return select_one_to_one(candidates);
}

// --- files -----------------------------------------------------------------

namespace {

std::string format_score(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", s);
  return buf;
}

bool parse_score(const std::string& text, double& out) {
  // Plain fixed-point: digits, optional '.' and digits.
  if (text.empty()) return false;
  bool dot = false, digit = false;
  for (char c : text) {
    if (c == '.') {
      if (dot) return false;
      dot = true;
    } else if (c >= '0' && c <= '9') {
      digit = true;
    } else {
      return false;
    }
  }
  if (!digit) return false;
  out = std::stod(text);
  return true;
}

}  // namespace

void write_alignment(const Alignment& a, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& c : a.correspondences())
    out << c.left.iri << '\t' << c.right.iri << '\t' << format_score(c.score) << '\n';
  if (!out) throw DataError("write failed for " + path.string());
}

std::vector<AlignedPair> read_pairs(const std::filesystem::path& path) {
  std::vector<AlignedPair> out;
  const std::string name = path.filename().string();
  tsv::for_each_line(path, [&](std::size_t line, const std::string& text) {
    if (text.empty() || text[0] == '#') return;
    auto f = tsv::split(text);
    if (f.size() != 3) throw IngestError(name, line, "expected 3 columns");
    if (f[0].empty() || f[1].empty()) throw IngestError(name, line, "empty IRI");
    double score = 0;
    if (!parse_score(f[2], score)) throw IngestError(name, line, "bad score '" + f[2] + "'");
    if (score > 1.0) throw IngestError(name, line, "score " + f[2] + " outside [0, 1]");
    out.push_back({f[0], f[1], score});
  });
  return out;
}

PairSet to_pair_set(const std::vector<AlignedPair>& pairs) {
  PairSet out;
  for (const auto& p : pairs) out.emplace(p.left, p.right);
  return out;
}

Alignment read_alignment(const std::filesystem::path& path, const onto::Ontology& o1,
                         const onto::Ontology& o2) {
  Alignment out;
  for (const auto& p : read_pairs(path)) {
    auto l = o1.find(p.left);
    if (!l) throw UnknownEntity("unknown entity <" + p.left + "> in " + path.filename().string());
    auto r = o2.find(p.right);
    if (!r) throw UnknownEntity("unknown entity <" + p.right + "> in " + path.filename().string());
    out.add({*l, *r, p.score, Strategy::Imported});
  }
  return out;
}

bool equal_at_file_precision(const Alignment& a, const Alignment& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.correspondences()[i];
    const auto& y = b.correspondences()[i];
    if (x.left != y.left || x.right != y.right || format_score(x.score) != format_score(y.score))
      return false;
  }
  return true;
}

}  // namespace lexalign::align
