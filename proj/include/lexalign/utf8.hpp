#pragma once

// Minimal UTF-8 helpers. Case mapping covers Latin-1, Latin Extended-A,
// basic Greek and basic Cyrillic, which is what ontology labels and
// dictionary headwords in this project use.

#include <string>
#include <string_view>
#include <vector>

namespace lexalign::utf8 {

/// Decodes to Unicode scalar values. Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

bool is_upper(char32_t c);
bool is_lower(char32_t c);
char32_t to_lower(char32_t c);

std::string to_lower(std::string_view text);

}  // namespace lexalign::utf8
