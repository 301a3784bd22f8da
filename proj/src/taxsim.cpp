#include "lexalign/taxsim.hpp"

#include <algorithm>
#include <cmath>

#include "lexalign/error.hpp"
#include "lexalign/tsv.hpp"

namespace lexalign::taxsim {

namespace {

constexpr double kIcTolerance = 1e-12;

std::set<std::string> split_set(const std::string& field) {
  std::set<std::string> out;
  if (field.empty() || field == "-") return out;
  for (auto& part : tsv::split(field, '|'))
    if (!part.empty()) out.insert(part);
  return out;
}

}  // namespace

std::size_t Thesaurus::at(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownEntity("unknown synset '" + std::string(id) + "'");
  return it->second;
}

const Synset& Thesaurus::synset(std::string_view id) const { return synsets_[at(id)]; }
double Thesaurus::ic(std::string_view id) const { return ic_[at(id)]; }

std::vector<std::string> Thesaurus::senses(std::string_view word) const {
  auto it = by_word_.find(word);
  return it == by_word_.end() ? std::vector<std::string>{} : it->second;
}

std::set<std::string> Thesaurus::ancestors_or_self(std::string_view id) const {
  std::set<std::string> out;
  for (std::size_t k : ancestors_[at(id)]) out.insert(synsets_[k].id);
  return out;
}

Thesaurus Thesaurus::build(std::vector<Synset> synsets, const std::map<std::string, double>& values,
                           Mode mode) {
  Thesaurus t;
  t.synsets_ = std::move(synsets);
  const std::size_t n = t.synsets_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = t.synsets_[i];
    if (s.words.empty()) throw DataError("synset '" + s.id + "' has no words");
    if (!t.index_.emplace(s.id, i).second) throw DataError("duplicate synset '" + s.id + "'");
  }
  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& h : t.synsets_[i].hypernyms) {
      auto it = t.index_.find(h);
      if (it == t.index_.end())
        throw DataError("synset '" + t.synsets_[i].id + "' has dangling hypernym '" + h + "'");
      parents[i].push_back(it->second);
    }
  }

  // Topological order, children before parents; leftovers mean a cycle.
  std::vector<std::size_t> pending_children(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p : parents[i]) ++pending_children[p];
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (pending_children[i] == 0) order.push_back(i);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t p : parents[order[k]])
      if (--pending_children[p] == 0) order.push_back(p);
  if (order.size() != n) throw DataError("cycle in hypernym graph");

  t.ancestors_.assign(n, {});
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t i = *it;
    std::vector<std::size_t> acc{i};
    for (std::size_t p : parents[i]) acc.insert(acc.end(), t.ancestors_[p].begin(), t.ancestors_[p].end());
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    t.ancestors_[i] = std::move(acc);
  }

  std::vector<double> raw(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = values.find(t.synsets_[i].id);
    if (v == values.end()) throw DataError("no value for synset '" + t.synsets_[i].id + "'");
    if (v->second < 0 || !std::isfinite(v->second))
      throw DataError("negative or non-finite value for synset '" + t.synsets_[i].id + "'");
    raw[i] = v->second;
  }

  t.ic_.assign(n, 0.0);
  if (mode == Mode::Frequency) {
    std::vector<double> cum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a : t.ancestors_[i]) cum[a] += raw[i];
    for (std::size_t i = 0; i < n; ++i) {
      if (cum[i] <= 0)
        throw DataError("synset '" + t.synsets_[i].id + "' has zero cumulative frequency");
      double total = 0;
      for (std::size_t a : t.ancestors_[i])
        if (parents[a].empty()) total = std::max(total, cum[a]);
      t.ic_[i] = -std::log(cum[i] / total);
    }
  } else {
    t.ic_ = raw;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (parents[i].empty() && std::abs(t.ic_[i]) > kIcTolerance)
      throw DataError("root synset '" + t.synsets_[i].id + "' must have IC 0");
    for (std::size_t p : parents[i])
      if (t.ic_[i] + kIcTolerance < t.ic_[p])
        throw DataError("IC decreases from '" + t.synsets_[p].id + "' to '" + t.synsets_[i].id + "'");
  }

  for (std::size_t i = 0; i < n; ++i)
    for (const auto& w : t.synsets_[i].words) t.by_word_[w].push_back(t.synsets_[i].id);
  for (auto& [w, ids] : t.by_word_) std::sort(ids.begin(), ids.end());
  return t;
}

Thesaurus Thesaurus::load(const std::filesystem::path& file) {
  std::vector<Synset> synsets;
  std::map<std::string, double> values;
  std::optional<std::string> mode;
  const std::string name = file.filename().string();
  tsv::for_each_line(file, [&](std::size_t line, const std::string& text) {
    if (text.empty() || text[0] == '#') return;
    auto f = tsv::split(text);
    if (f.size() != 5 && f.size() != 6)
      throw IngestError(name, line, "expected 5 or 6 columns, got " + std::to_string(f.size()));
    if (f[4] != "freq" && f[4] != "ic") throw IngestError(name, line, "mode must be freq or ic");
    if (mode && *mode != f[4]) throw IngestError(name, line, "mode changes within file");
    mode = f[4];
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(f[3], &used);
      if (used != f[3].size()) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
      throw IngestError(name, line, "bad number '" + f[3] + "'");
    }
    if (value < 0) throw IngestError(name, line, "negative value");
    Synset s{f[0], split_set(f[1]), f.size() == 6 ? f[5] : std::string{}, split_set(f[2])};
    if (s.id.empty()) throw IngestError(name, line, "empty synset id");
    values[s.id] = value;
    synsets.push_back(std::move(s));
  });
  return build(std::move(synsets), values,
               mode.value_or("ic") == "freq" ? Mode::Frequency : Mode::InformationContent);
}

std::optional<std::string> lcs(const Thesaurus& t, std::string_view a, std::string_view b) {
  const auto up_a = t.ancestors_or_self(a);
  const auto up_b = t.ancestors_or_self(b);
  std::optional<std::string> best;
  double best_ic = -1;
  for (const auto& id : up_a) {  // sorted, so the first max wins ties
    if (!up_b.count(id)) continue;
    const double v = t.ic(id);
    if (v > best_ic) {
      best = id;
      best_ic = v;
    }
  }
  return best;
}

double jcn_similarity(const Thesaurus& t, std::string_view a, std::string_view b) {
  const auto subsumer = lcs(t, a, b);
  if (!subsumer) return 0.0;
  const double denom = t.ic(a) + t.ic(b) - 2.0 * t.ic(*subsumer);
  if (denom <= kJcnEpsilon) return kJcnMax;
  return 1.0 / denom;
}

double lexical_match(const Thesaurus& t, std::string_view w1, std::string_view w2) {
  double best = 0.0;
  for (const auto& a : t.senses(w1))
    for (const auto& b : t.senses(w2)) best = std::max(best, jcn_similarity(t, a, b));
  return best;
}

}  // namespace lexalign::taxsim
