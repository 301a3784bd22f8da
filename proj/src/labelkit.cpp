#include "lexalign/labelkit.hpp"

#include <algorithm>

#include "lexalign/error.hpp"
#include "lexalign/tsv.hpp"
#include "lexalign/utf8.hpp"

namespace lexalign::labels {

namespace {

bool is_separator(char32_t c) {
  return c == U'-' || c == U'_' || c == U' ' || c == U'\t' || c == U'\n' || c == U'\r';
}

void append_unique(std::vector<std::string>& out, const std::vector<std::string>& more) {
  for (const auto& m : more)
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view label) {
  const std::u32string cps = utf8::decode(label);
  std::vector<std::string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(utf8::encode(current));
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t c = cps[i];
    if (is_separator(c)) {
      flush();
      continue;
    }
    if (i > 0 && utf8::is_lower(cps[i - 1]) && utf8::is_upper(c)) flush();
    current.push_back(utf8::to_lower(c));
  }
  flush();
  return tokens;
}

std::vector<std::string> DictionaryTranslator::translate(std::string_view word,
                                                         std::string_view from,
                                                         std::string_view to) const {
  std::vector<std::string> out = store_.translations(word, from, to);
  auto reverse = store_.reverse_translations(word, from, to);
  out.insert(out.end(), reverse.begin(), reverse.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

StaticTableTranslator StaticTableTranslator::load(const std::filesystem::path& file) {
  StaticTableTranslator t;
  const std::string name = file.filename().string();
  tsv::for_each_line(file, [&](std::size_t line, const std::string& text) {
    if (text.empty() || text[0] == '#') return;
    auto f = tsv::split(text);
    if (f.size() != 4) throw IngestError(name, line, "expected 4 columns");
    if (f[2].empty() || f[3].empty()) throw IngestError(name, line, "empty word or translation");
    t.add(f[0], f[1], f[2], f[3]);
  });
  return t;
}

void StaticTableTranslator::add(std::string from, std::string to, std::string word,
                                std::string translation) {
  auto& list = table_[{std::move(from), std::move(to), std::move(word)}];
  if (std::find(list.begin(), list.end(), translation) == list.end())
    list.push_back(std::move(translation));
}

std::vector<std::string> StaticTableTranslator::translate(std::string_view word,
                                                          std::string_view from,
                                                          std::string_view to) const {
  auto it = table_.find({std::string(from), std::string(to), std::string(word)});
  return it == table_.end() ? std::vector<std::string>{} : it->second;
}

TranslatedLabel translate_label(std::string_view label, const Translator& t,
                                std::string_view from, std::string_view to) {
  TranslatedLabel out;
  out.original = std::string(label);
  out.tokens = tokenize(label);
  if (out.tokens.empty()) out.tokens.push_back(out.original);

  append_unique(out.whole_label_candidates, t.translate(label, from, to));
  const std::string lowered = utf8::to_lower(label);
  if (lowered != label) append_unique(out.whole_label_candidates, t.translate(lowered, from, to));

  bool any = !out.whole_label_candidates.empty();
  for (const auto& token : out.tokens) {
    std::vector<std::string> candidates;
    append_unique(candidates, t.translate(token, from, to));
    const std::string low = utf8::to_lower(token);
    if (low != token) append_unique(candidates, t.translate(low, from, to));
    any = any || !candidates.empty();
    out.per_token_candidates.push_back(std::move(candidates));
  }
  out.fallback_used = !any;
  return out;
}

}  // namespace lexalign::labels
