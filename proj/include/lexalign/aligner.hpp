#pragma once

// End-to-end matching: translate the first ontology's labels, collect
// string, lexical and structural candidates, keep the best score per pair
// and select a one-to-one alignment greedily. Also alignment files and
// precision/recall.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexalign/labelkit.hpp"
#include "lexalign/ontomodel.hpp"
#include "lexalign/strsim.hpp"
#include "lexalign/structsim.hpp"
#include "lexalign/taxsim.hpp"

namespace lexalign::align {

enum class Strategy { String, Lexical, Structure, Imported };

std::string_view strategy_name(Strategy s);

struct Correspondence {
  onto::EntityId left;   // first ontology
  onto::EntityId right;  // second ontology
  double score = 0;
  Strategy source = Strategy::String;
  bool operator==(const Correspondence&) const = default;
};

/// One-to-one set of correspondences, kept sorted by (left IRI, right IRI).
class Alignment {
 public:
  Alignment() = default;
  /// Throws DataError when an entity repeats on either side or a score
  /// falls outside [0, 1].
  explicit Alignment(std::vector<Correspondence> correspondences);

  void add(Correspondence c);
  const std::vector<Correspondence>& correspondences() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(std::string_view left_iri, std::string_view right_iri) const;
  const Correspondence* for_left(std::string_view left_iri) const;
  std::set<std::pair<std::string, std::string>> pairs() const;

 private:
  std::vector<Correspondence> items_;
  std::set<std::string, std::less<>> lefts_;
  std::set<std::string, std::less<>> rights_;
};

struct MatchConfig {
  double jw_threshold = 0.9;
  double jcn_threshold = 1.0;
  bool sw_enabled = false;
  bool structure_enabled = true;
  structure::ExpansionConfig expansion;
  strsim::SwScoring sw;
  std::string source_lang = "fr";
  std::string target_lang = "en";
  /// Worker threads for pair scoring; results do not depend on it.
  unsigned threads = 1;
  bool valid() const;
};

struct Metrics {
  double precision = 0;
  double recall = 0;
  std::size_t retrieved = 0;     // |A|
  std::size_t reference = 0;     // |R|
  std::size_t intersection = 0;  // |R ∩ A|
  /// `precision=X recall=Y |A|=a |R|=r |R∩A|=i`, two decimals.
  std::string display() const;
};

using PairSet = std::set<std::pair<std::string, std::string>>;

/// Exact (left, right) pair equality; scores are ignored.
/// precision is 0 when A is empty, recall is 0 when R is empty.
Metrics evaluate(const PairSet& retrieved, const PairSet& reference);
Metrics evaluate(const Alignment& retrieved, const Alignment& reference);

// --- pipeline stages, exposed for testing ---------------------------------

using TranslatedLabels = std::map<std::string, labels::TranslatedLabel>;  // by left IRI

TranslatedLabels translate_entities(const onto::Ontology& o1, const labels::Translator& t,
                                    const MatchConfig& cfg);

/// Token-sequence match of a translated label against target tokens: each
/// translated word must meet the threshold against the target word in the
/// same position. Returns the mean Jaro-Winkler of the best covering, or
/// nullopt when no covering meets the threshold.
std::optional<double> string_score(const labels::TranslatedLabel& label,
                                   const std::vector<std::string>& target_tokens,
                                   const MatchConfig& cfg);

/// All same-kind pairs whose string score meets jw_threshold.
std::vector<Correspondence> string_stage(const onto::Ontology& o1, const onto::Ontology& o2,
                                         const TranslatedLabels& labels, const MatchConfig& cfg);

/// Class pairs absent from `skip` whose lexical match meets jcn_threshold;
/// scored jcn / (1 + jcn).
std::vector<Correspondence> lexical_stage(const onto::Ontology& o1, const onto::Ontology& o2,
                                          const TranslatedLabels& labels,
                                          const taxsim::Thesaurus& thesaurus,
                                          const MatchConfig& cfg, const PairSet& skip);

/// Rule correspondences (score 1) seeded by `candidates`, plus
/// expanding-tree scores for class pairs already in `candidates`. Tree
/// nodes match when their string score meets the expansion threshold.
std::vector<Correspondence> structural_stage(const onto::Ontology& o1, const onto::Ontology& o2,
                                             const TranslatedLabels& labels,
                                             const std::vector<Correspondence>& candidates,
                                             const MatchConfig& cfg);

/// Best score per pair, then greedy one-to-one by descending score with
/// ties broken by (left IRI, right IRI).
Alignment select_one_to_one(const std::vector<Correspondence>& candidates);

/// Translator exceptions propagate wrapped in an Error naming the label.
Alignment align(const onto::Ontology& o1, const onto::Ontology& o2, const labels::Translator& t,
                const MatchConfig& cfg, const taxsim::Thesaurus* thesaurus = nullptr);

// --- files -----------------------------------------------------------------

struct AlignedPair {
  std::string left;
  std::string right;
  double score = 0;
};

/// `left_iri<TAB>right_iri<TAB>score`, score with 4 decimals, sorted by left IRI.
void write_alignment(const Alignment& a, const std::filesystem::path& path);
/// Reads and validates lines without resolving IRIs. '#' comments and blank
/// lines are skipped.
std::vector<AlignedPair> read_pairs(const std::filesystem::path& path);
PairSet to_pair_set(const std::vector<AlignedPair>& pairs);
/// Resolves IRIs against the ontologies; the result is one-to-one.
Alignment read_alignment(const std::filesystem::path& path, const onto::Ontology& o1,
                         const onto::Ontology& o2);

/// Same pairs, and scores equal once rounded to the file's 4 decimals.
bool equal_at_file_precision(const Alignment& a, const Alignment& b);

}  // namespace lexalign::align
