#pragma once

// Shared test helpers: fixture paths, random dictionaries, independent
// reference implementations used as oracles.

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lexalign/dictstore.hpp"
#include "lexalign/sparqlet.hpp"
#include "lexalign/strsim.hpp"
#include "lexalign/triplemap.hpp"

namespace testing {

std::filesystem::path fixture(const std::string& relative);
std::string read_file(const std::filesystem::path& p);

/// Fresh empty directory under the build tree.
std::filesystem::path scratch_dir(const std::string& name);

struct RandomDictParams {
  int languages = 3;
  int pages = 6;
  int texts = 8;
  int max_lang_pos_per_page = 2;
  int max_meanings = 2;
  int max_entries = 3;
};

/// Integrity-clean tables. Titles and texts come from small pools so that
/// lookups hit and duplicates occur across pages.
lexalign::dict::Tables random_tables(std::mt19937& rng, const RandomDictParams& p = {});

// --- oracles ---------------------------------------------------------------

/// Seven-way nested scan with no indexes.
std::vector<std::string> oracle_translations(const lexalign::dict::Tables& t,
                                             const std::string& headword,
                                             const std::string& src,
                                             const std::string& tgt);

/// Enumerates every assignment of store terms to the query variables,
/// pruning only when a pattern with all variables assigned fails.
lexalign::sparql::ResultTable oracle_sparql(const lexalign::sparql::Query& q,
                                            const std::vector<lexalign::rdf::Triple>& triples,
                                            const lexalign::rdf::PrefixTable& prefixes);

/// Random query built around triples of the store: up to `max_patterns`
/// patterns, at most three distinct variables.
lexalign::sparql::Query random_query(std::mt19937& rng,
                                     const std::vector<lexalign::rdf::Triple>& triples,
                                     int max_patterns);

/// Max over all substring pairs of the global alignment score, and 0.
int oracle_local_score(const std::string& a, const std::string& b,
                       const lexalign::strsim::SwScoring& sc);

/// Enumerates every alignment (match/mismatch/gap sequence) of every
/// substring pair explicitly. Exponential; only for short strings.
int exhaustive_local_score(const std::string& a, const std::string& b,
                           const lexalign::strsim::SwScoring& sc);

/// Score of an aligned region pair under the scoring, by global alignment.
int global_score(const std::string& a, const std::string& b, const lexalign::strsim::SwScoring& sc);

/// Textbook Jaro / Jaro-Winkler over bytes (ASCII inputs only).
double oracle_jaro(const std::string& a, const std::string& b);
double oracle_jaro_winkler(const std::string& a, const std::string& b);

std::string random_word(std::mt19937& rng, const std::string& alphabet, int min_len, int max_len);

}  // namespace testing
