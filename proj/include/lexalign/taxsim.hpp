#pragma once

// Noun taxonomy with information content, lowest common subsumer and
// Jiang-Conrath similarity.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lexalign::taxsim {

inline constexpr double kJcnMax = 1e9;
inline constexpr double kJcnEpsilon = 1e-9;

struct Synset {
  std::string id;
  std::set<std::string> words;
  std::string gloss;
  std::set<std::string> hypernyms;
};

class Thesaurus {
 public:
  enum class Mode { Frequency, InformationContent };

  /// `values` holds a frequency per synset or an IC per synset, per `mode`.
  /// Frequencies propagate to every ancestor (each once) and
  /// IC(c) = -ln(cum(c) / cum(root)), using the heaviest root above c.
  /// Throws DataError on cycles, dangling hypernyms, negative values,
  /// zero cumulative frequency, or a violated IC invariant.
  static Thesaurus build(std::vector<Synset> synsets, const std::map<std::string, double>& values,
                         Mode mode);

  /// TSV: `id  word1|word2  hyper1|hyper2  value  mode  [gloss]`, where
  /// mode is `freq` or `ic` for every line and an empty or `-` hypernym
  /// field marks a root. Lines starting with '#' are comments.
  static Thesaurus load(const std::filesystem::path& file);

  bool contains(std::string_view id) const { return index_.count(std::string(id)) > 0; }
  const Synset& synset(std::string_view id) const;
  double ic(std::string_view id) const;
  const std::vector<Synset>& synsets() const { return synsets_; }
  std::vector<std::string> senses(std::string_view word) const;

  /// Ancestors including the synset itself.
  std::set<std::string> ancestors_or_self(std::string_view id) const;

 private:
  std::size_t at(std::string_view id) const;

  std::vector<Synset> synsets_;
  std::vector<double> ic_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, std::vector<std::string>, std::less<>> by_word_;
  std::vector<std::vector<std::size_t>> ancestors_;  // ancestor-or-self indices, sorted
};

/// Common subsumer with maximal IC, ties to the smallest id.
/// Throws UnknownEntity for ids not in the thesaurus.
std::optional<std::string> lcs(const Thesaurus& t, std::string_view a, std::string_view b);

/// 1 / (IC(a) + IC(b) - 2 IC(lcs)); kJcnMax when the denominator is at most
/// kJcnEpsilon; 0 when a and b share no subsumer.
double jcn_similarity(const Thesaurus& t, std::string_view a, std::string_view b);

/// Max jcn over all sense pairs; 0 when either word is unknown.
double lexical_match(const Thesaurus& t, std::string_view w1, std::string_view w2);

}  // namespace lexalign::taxsim
