#pragma once

// Jaro, Jaro-Winkler and Smith-Waterman over Unicode scalar values.
// Inputs are compared as given; callers lowercase or tokenize first.

#include <string>
#include <string_view>

namespace lexalign::strsim {

struct SwScoring {
  int match = 2;
  int mismatch = -1;
  int gap = -1;
  bool valid() const { return match > 0 && mismatch <= 0 && gap <= 0; }
};

struct LocalAlignment {
  int score = 0;
  std::string region1;  // aligned substring of the first input
  std::string region2;
};

double jaro(std::string_view s1, std::string_view s2);
std::u32string_view::size_type common_prefix(std::u32string_view a, std::u32string_view b);
double jaro_winkler(std::string_view s1, std::string_view s2);

// UTF-32 overloads avoid re-decoding in hot loops.
double jaro(std::u32string_view a, std::u32string_view b);
double jaro_winkler(std::u32string_view a, std::u32string_view b);

/// Best-scoring local alignment. Ties on the maximum go to the smallest
/// (i, j) cell; traceback prefers diagonal, then up, then left.
LocalAlignment smith_waterman(std::string_view s1, std::string_view s2, const SwScoring& sc = {});

/// raw / (match * min(|s1|, |s2|)); 0 when either is empty.
double sw_normalized(std::string_view s1, std::string_view s2, const SwScoring& sc = {});

}  // namespace lexalign::strsim
