#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace testing {

using namespace lexalign;

std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(LEXALIGN_FIXTURES) / relative;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::path(LEXALIGN_SCRATCH) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

dict::Tables random_tables(std::mt19937& rng, const RandomDictParams& p) {
  static const std::vector<std::string> codes = {"en", "fr", "de", "sv", "ru", "cs"};
  static const std::vector<std::string> titles = {"rain", "book", "school", "key", "court",
                                                  "film", "part", "name"};
  static const std::vector<std::string> words = {"pluie", "livre", "école", "clé", "regen",
                                                 "buch", "schule", "film", "partie", "nom",
                                                 "ösregna", "лить"};
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  dict::Tables t;
  const int nl = std::clamp(p.languages, 1, static_cast<int>(codes.size()));
  for (int i = 0; i < nl; ++i)
    t.languages.push_back({i + 1, codes[static_cast<std::size_t>(i)], "Lang" + std::to_string(i + 1)});
  const int nt = std::clamp(p.texts, 1, static_cast<int>(words.size()));
  for (int i = 0; i < nt; ++i) t.wiki_texts.push_back({100 + i, words[static_cast<std::size_t>(i)]});

  dict::Id lang_pos_id = 1, meaning_id = 1, translation_id = 1, entry_id = 1;
  for (int pg = 0; pg < p.pages; ++pg) {
    const dict::Id page_id = 10 + pg;
    t.pages.push_back({page_id, titles[static_cast<std::size_t>(pick(0, static_cast<int>(titles.size()) - 1))]});
    std::vector<int> langs(static_cast<std::size_t>(nl));
    for (int i = 0; i < nl; ++i) langs[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(langs.begin(), langs.end(), rng);
    const int n_lp = pick(1, std::min(p.max_lang_pos_per_page, nl));
    for (int k = 0; k < n_lp; ++k) {
      const dict::Id lp = lang_pos_id++;
      t.lang_pos.push_back({lp, page_id, langs[static_cast<std::size_t>(k)]});
      const int n_m = pick(1, p.max_meanings);
      for (int m = 0; m < n_m; ++m) {
        const dict::Id mid = meaning_id++;
        t.meanings.push_back({mid, lp});
        if (pick(0, 3) == 0) continue;  // meaning without a translation block
        const dict::Id tid = translation_id++;
        t.translations.push_back({tid, lp, mid});
        const int n_e = pick(0, p.max_entries);
        for (int e = 0; e < n_e; ++e)
          t.translation_entries.push_back(
              {entry_id++, tid, pick(1, nl), 100 + pick(0, nt - 1)});
      }
    }
  }
  return t;
}

std::vector<std::string> oracle_translations(const dict::Tables& t, const std::string& headword,
                                             const std::string& src, const std::string& tgt) {
  std::set<std::string> out;
  for (const auto& l : t.languages) {
    if (l.lang_code != src) continue;
    for (const auto& pg : t.pages) {
      if (pg.page_title != headword) continue;
      for (const auto& lp : t.lang_pos) {
        if (lp.page_id != pg.page_id || lp.lang_id != l.lang_id) continue;
        for (const auto& m : t.meanings) {
          if (m.lang_pos_id != lp.lang_pos_id) continue;
          for (const auto& tr : t.translations) {
            if (tr.meaning_id != m.meaning_id || tr.lang_pos_id != lp.lang_pos_id) continue;
            for (const auto& tl : t.languages) {
              if (tl.lang_code != tgt) continue;
              for (const auto& e : t.translation_entries) {
                if (e.translation_id != tr.translation_id || e.lang_id != tl.lang_id) continue;
                for (const auto& w : t.wiki_texts)
                  if (w.wiki_text_id == e.wiki_text_id) out.insert(w.text);
              }
            }
          }
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

sparql::ResultTable oracle_sparql(const sparql::Query& q, const std::vector<rdf::Triple>& triples_in,
                                  const rdf::PrefixTable& prefixes) {
  // Work on fully expanded terms.
  std::vector<rdf::Triple> triples;
  for (const auto& t : triples_in)
    triples.push_back({prefixes.expand(t.subject), prefixes.expand(t.predicate), prefixes.expand(t.object)});
  std::set<rdf::Triple> facts(triples.begin(), triples.end());
  std::set<rdf::Term> domain_set;
  for (const auto& t : facts) {
    domain_set.insert(t.subject);
    domain_set.insert(t.predicate);
    domain_set.insert(t.object);
  }
  const std::vector<rdf::Term> domain(domain_set.begin(), domain_set.end());

  std::vector<std::array<rdf::Term, 3>> patterns;
  std::vector<std::string> vars;
  for (const auto& p : q.patterns) {
    std::array<rdf::Term, 3> a{prefixes.expand(p.subject), prefixes.expand(p.predicate),
                               prefixes.expand(p.object)};
    for (const auto& t : a)
      if (t.is_variable() && std::find(vars.begin(), vars.end(), t.value) == vars.end())
        vars.push_back(t.value);
    patterns.push_back(a);
  }

  std::map<std::string, rdf::Term> assignment;
  std::vector<std::vector<std::string>> rows;
  auto resolve = [&](const rdf::Term& t) -> const rdf::Term* {
    if (!t.is_variable()) return &t;
    auto it = assignment.find(t.value);
    return it == assignment.end() ? nullptr : &it->second;
  };
  auto consistent = [&]() {
    for (const auto& p : patterns) {
      const rdf::Term* s = resolve(p[0]);
      const rdf::Term* pr = resolve(p[1]);
      const rdf::Term* o = resolve(p[2]);
      if (s && pr && o && !facts.count({*s, *pr, *o})) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (!consistent()) return;
    if (k == vars.size()) {
      std::vector<std::string> row;
      for (const auto& v : q.select_vars) row.push_back(rdf::render(assignment.at(v), prefixes));
      rows.push_back(std::move(row));
      return;
    }
    for (const auto& value : domain) {
      assignment[vars[k]] = value;
      assign(k + 1);
    }
    assignment.erase(vars[k]);
  };
  assign(0);

  std::sort(rows.begin(), rows.end());
  if (q.limit && rows.size() > *q.limit) rows.resize(static_cast<std::size_t>(*q.limit));
  return {q.select_vars, rows};
}

sparql::Query random_query(std::mt19937& rng, const std::vector<rdf::Triple>& triples,
                           int max_patterns) {
  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  const std::vector<std::string> names = {"a", "b", "c"};
  sparql::Query q;
  const int n = 1 + static_cast<int>(pick(static_cast<std::size_t>(max_patterns)));
  std::set<std::string> used;
  std::map<std::string, rdf::Term> anchor;  // last constant a variable replaced
  for (int i = 0; i < n; ++i) {
    const rdf::Triple& t = triples[pick(triples.size())];
    std::array<rdf::Term, 3> pos{t.subject, t.predicate, t.object};
    for (int k = 0; k < 3; ++k) {
      if (pick(5) < 2) continue;  // keep the constant
      if (k == 1 && pick(3) != 0) continue;  // predicates mostly constant
      const std::string& v = names[pick(names.size())];
      pos[static_cast<std::size_t>(k)] = rdf::Term::variable(v);
      used.insert(v);
    }
    q.patterns.push_back({pos[0], pos[1], pos[2]});
  }
  if (used.empty()) {
    q.patterns[0].subject = rdf::Term::variable("a");
    used.insert("a");
  }
  for (const auto& v : used)
    if (q.select_vars.empty() || pick(3) != 0) q.select_vars.push_back(v);
  std::shuffle(q.select_vars.begin(), q.select_vars.end(), rng);
  if (pick(3) == 0) q.limit = 1 + pick(5);
  return q;
}

int global_score(const std::string& a, const std::string& b, const strsim::SwScoring& sc) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) d[i][0] = d[i - 1][0] + sc.gap;
  for (std::size_t j = 1; j <= m; ++j) d[0][j] = d[0][j - 1] + sc.gap;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j)
      d[i][j] = std::max({d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? sc.match : sc.mismatch),
                          d[i - 1][j] + sc.gap, d[i][j - 1] + sc.gap});
  return d[n][m];
}

int oracle_local_score(const std::string& a, const std::string& b, const strsim::SwScoring& sc) {
  // For each start pair, one global DP gives the scores of every end pair.
  const std::size_t w = b.size() + 1;
  std::vector<int> d((a.size() + 1) * w);
  int best = 0;
  for (std::size_t i0 = 0; i0 < a.size(); ++i0)
    for (std::size_t j0 = 0; j0 < b.size(); ++j0) {
      const std::size_t n = a.size() - i0, m = b.size() - j0;
      d[0] = 0;
      for (std::size_t i = 1; i <= n; ++i) d[i * w] = d[(i - 1) * w] + sc.gap;
      for (std::size_t j = 1; j <= m; ++j) d[j] = d[j - 1] + sc.gap;
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j) {
          const int diag = d[(i - 1) * w + j - 1] + (a[i0 + i - 1] == b[j0 + j - 1] ? sc.match : sc.mismatch);
          const int v = std::max({diag, d[(i - 1) * w + j] + sc.gap, d[i * w + j - 1] + sc.gap});
          d[i * w + j] = v;
          best = std::max(best, v);
        }
    }
  return best;
}

int exhaustive_local_score(const std::string& a, const std::string& b, const strsim::SwScoring& sc) {
  // Every path of diagonal / up / left steps between every pair of substrings.
  std::function<int(std::size_t, std::size_t, std::size_t, std::size_t)> best_path =
      [&](std::size_t i, std::size_t iend, std::size_t j, std::size_t jend) -> int {
    if (i == iend && j == jend) return 0;
    int best = std::numeric_limits<int>::min();
    if (i < iend && j < jend)
      best = std::max(best, (a[i] == b[j] ? sc.match : sc.mismatch) + best_path(i + 1, iend, j + 1, jend));
    if (i < iend) best = std::max(best, sc.gap + best_path(i + 1, iend, j, jend));
    if (j < jend) best = std::max(best, sc.gap + best_path(i, iend, j + 1, jend));
    return best;
  };
  int best = 0;
  for (std::size_t i = 0; i <= a.size(); ++i)
    for (std::size_t ie = i; ie <= a.size(); ++ie)
      for (std::size_t j = 0; j <= b.size(); ++j)
        for (std::size_t je = j; je <= b.size(); ++je) best = std::max(best, best_path(i, ie, j, je));
  return best;
}

double oracle_jaro(const std::string& a, const std::string& b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const int la = static_cast<int>(a.size()), lb = static_cast<int>(b.size());
  const int window = std::max(0, std::max(la, lb) / 2 - 1);
  std::vector<bool> ma(a.size()), mb(b.size());
  int m = 0;
  for (int i = 0; i < la; ++i)
    for (int j = std::max(0, i - window); j < std::min(lb, i + window + 1); ++j)
      if (!mb[static_cast<std::size_t>(j)] && a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)]) {
        ma[static_cast<std::size_t>(i)] = mb[static_cast<std::size_t>(j)] = true;
        ++m;
        break;
      }
  if (m == 0) return 0.0;
  std::string sa, sb;
  for (int i = 0; i < la; ++i)
    if (ma[static_cast<std::size_t>(i)]) sa += a[static_cast<std::size_t>(i)];
  for (int j = 0; j < lb; ++j)
    if (mb[static_cast<std::size_t>(j)]) sb += b[static_cast<std::size_t>(j)];
  int half = 0;
  for (std::size_t k = 0; k < sa.size(); ++k) half += sa[k] != sb[k];
  const double t = half / 2.0;
  return (m / static_cast<double>(la) + m / static_cast<double>(lb) + (m - t) / m) / 3.0;
}

double oracle_jaro_winkler(const std::string& a, const std::string& b) {
  const double j = oracle_jaro(a, b);
  int l = 0;
  while (l < 4 && l < static_cast<int>(a.size()) && l < static_cast<int>(b.size()) &&
         a[static_cast<std::size_t>(l)] == b[static_cast<std::size_t>(l)])
    ++l;
  return j + l * 0.1 * (1.0 - j);
}

std::string random_word(std::mt19937& rng, const std::string& alphabet, int min_len, int max_len) {
  const int n = std::uniform_int_distribution<int>(min_len, max_len)(rng);
  std::uniform_int_distribution<std::size_t> c(0, alphabet.size() - 1);
  std::string s;
  for (int i = 0; i < n; ++i) s += alphabet[c(rng)];
  return s;
}

}  // namespace testing
