#pragma once

// Label tokenization and translation through a pluggable translator.

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lexalign/dictstore.hpp"

namespace lexalign::labels {

/// Splits at lower-to-upper case boundaries and at '-', '_' and whitespace;
/// tokens are lowercased and keep their order.
std::vector<std::string> tokenize(std::string_view label);

/// Translation source. Implementations return a deduplicated list and an
/// empty list for words they do not know.
class Translator {
 public:
  virtual ~Translator() = default;
  virtual std::vector<std::string> translate(std::string_view word, std::string_view from,
                                             std::string_view to) const = 0;
};

/// Backed by a local dictionary: headwords in `from` with `to` translations,
/// plus `to` headwords that list the word as a `from` translation.
class DictionaryTranslator final : public Translator {
 public:
  explicit DictionaryTranslator(const dict::DictionaryStore& store) : store_(store) {}
  std::vector<std::string> translate(std::string_view word, std::string_view from,
                                     std::string_view to) const override;

 private:
  const dict::DictionaryStore& store_;
};

/// Fixed table, one candidate per row: `from_lang  to_lang  word  translation`.
class StaticTableTranslator final : public Translator {
 public:
  StaticTableTranslator() = default;
  static StaticTableTranslator load(const std::filesystem::path& file);

  void add(std::string from, std::string to, std::string word, std::string translation);
  std::vector<std::string> translate(std::string_view word, std::string_view from,
                                     std::string_view to) const override;

 private:
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<std::string>> table_;
};

/// Returns the word itself; for same-language matching.
class IdentityTranslator final : public Translator {
 public:
  std::vector<std::string> translate(std::string_view word, std::string_view,
                                     std::string_view) const override {
    return {std::string(word)};
  }
};

struct TranslatedLabel {
  std::string original;
  std::vector<std::string> tokens;
  std::vector<std::string> whole_label_candidates;
  std::vector<std::vector<std::string>> per_token_candidates;
  bool fallback_used = false;
};

/// Looks up the label as written, then lowercased; and each token. Order
/// of first appearance is kept. Translator exceptions propagate.
TranslatedLabel translate_label(std::string_view label, const Translator& t,
                                std::string_view from, std::string_view to);

}  // namespace lexalign::labels
