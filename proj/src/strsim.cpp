#include "lexalign/strsim.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "lexalign/utf8.hpp"

namespace lexalign::strsim {

namespace {

constexpr double kWinklerScale = 0.1;
constexpr std::size_t kWinklerPrefixCap = 4;

}  // namespace

double jaro(std::u32string_view a, std::u32string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  if (a.empty() || b.empty()) return 0.0;

  const std::size_t longest = std::max(a.size(), b.size());
  const std::size_t window = longest / 2 >= 1 ? longest / 2 - 1 : 0;

  std::vector<bool> used_a(a.size(), false);
  std::vector<bool> used_b(b.size(), false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i >= window ? i - window : 0;
    const std::size_t hi = std::min(b.size(), i + window + 1);
    for (std::size_t j = lo; j < hi; ++j) {
      if (used_b[j] || a[i] != b[j]) continue;
      used_a[i] = used_b[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;

  std::size_t half_transpositions = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!used_a[i]) continue;
    while (!used_b[k]) ++k;
    if (a[i] != b[k]) ++half_transpositions;
    ++k;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions) / 2.0;
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) + (m - t) / m) /
         3.0;
}

std::u32string_view::size_type common_prefix(std::u32string_view a, std::u32string_view b) {
  std::size_t n = 0;
  while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
  return n;
}

double jaro_winkler(std::u32string_view a, std::u32string_view b) {
  const double j = jaro(a, b);
  const auto prefix = static_cast<double>(std::min(common_prefix(a, b), kWinklerPrefixCap));
  return j + prefix * kWinklerScale * (1.0 - j);
}

double jaro(std::string_view s1, std::string_view s2) {
  return jaro(std::u32string_view(utf8::decode(s1)), std::u32string_view(utf8::decode(s2)));
}

double jaro_winkler(std::string_view s1, std::string_view s2) {
  const std::u32string a = utf8::decode(s1);
  const std::u32string b = utf8::decode(s2);
  return jaro_winkler(std::u32string_view(a), std::u32string_view(b));
}

LocalAlignment smith_waterman(std::string_view s1, std::string_view s2, const SwScoring& sc) {
  if (!sc.valid()) throw std::invalid_argument("invalid Smith-Waterman scoring");
  const std::u32string a = utf8::decode(s1);
  const std::u32string b = utf8::decode(s2);
  LocalAlignment out;
  if (a.empty() || b.empty()) return out;

  const std::size_t rows = a.size() + 1;
  const std::size_t cols = b.size() + 1;
  std::vector<int> h(rows * cols, 0);
  auto at = [&](std::size_t i, std::size_t j) -> int& { return h[i * cols + j]; };

  std::size_t best_i = 0, best_j = 0;
  for (std::size_t i = 1; i < rows; ++i) {
    for (std::size_t j = 1; j < cols; ++j) {
      const int diag = at(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? sc.match : sc.mismatch);
      const int up = at(i - 1, j) + sc.gap;
      const int left = at(i, j - 1) + sc.gap;
      const int v = std::max({0, diag, up, left});
      at(i, j) = v;
      if (v > out.score) {
        out.score = v;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (out.score == 0) return out;

  std::size_t i = best_i, j = best_j;
  while (i > 0 && j > 0 && at(i, j) > 0) {
    const int v = at(i, j);
    if (v == at(i - 1, j - 1) + (a[i - 1] == b[j - 1] ? sc.match : sc.mismatch)) {
      --i;
      --j;
    } else if (v == at(i - 1, j) + sc.gap) {
      --i;
    } else {
      --j;
    }
  }
  out.region1 = utf8::encode(std::u32string_view(a).substr(i, best_i - i));
  out.region2 = utf8::encode(std::u32string_view(b).substr(j, best_j - j));
  return out;
}

double sw_normalized(std::string_view s1, std::string_view s2, const SwScoring& sc) {
  const std::size_t n1 = utf8::decode(s1).size();
  const std::size_t n2 = utf8::decode(s2).size();
  if (n1 == 0 || n2 == 0) return 0.0;
  const int raw = smith_waterman(s1, s2, sc).score;
  return static_cast<double>(raw) / (static_cast<double>(sc.match) * static_cast<double>(std::min(n1, n2)));
}

}  // namespace lexalign::strsim
