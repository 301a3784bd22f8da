#pragma once

// In-memory relational model of the machine-readable dictionary.
//
// Seven tables mirror the translation path of the Wiktionary database:
// a page (headword) has language sections (lang_pos), each with meanings;
// a translation block hangs off a meaning and lists translation entries,
// one per target-language term stored in wiki_text.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexalign::dict {

using Id = std::int64_t;

struct LanguageRow {
  Id lang_id = 0;
  std::string lang_code;
  std::string lang_name;
  bool operator==(const LanguageRow&) const = default;
};

struct PageRow {
  Id page_id = 0;
  std::string page_title;
  bool operator==(const PageRow&) const = default;
};

struct LangPosRow {
  Id lang_pos_id = 0;
  Id page_id = 0;
  Id lang_id = 0;
  bool operator==(const LangPosRow&) const = default;
};

struct MeaningRow {
  Id meaning_id = 0;
  Id lang_pos_id = 0;
  bool operator==(const MeaningRow&) const = default;
};

struct TranslationRow {
  Id translation_id = 0;
  Id lang_pos_id = 0;
  Id meaning_id = 0;
  bool operator==(const TranslationRow&) const = default;
};

struct TranslationEntryRow {
  Id translation_entry_id = 0;
  Id translation_id = 0;
  Id lang_id = 0;  // target language of the term
  Id wiki_text_id = 0;
  bool operator==(const TranslationEntryRow&) const = default;
};

struct WikiTextRow {
  Id wiki_text_id = 0;
  std::string text;
  bool operator==(const WikiTextRow&) const = default;
};

struct Tables {
  std::vector<LanguageRow> languages;
  std::vector<PageRow> pages;
  std::vector<LangPosRow> lang_pos;
  std::vector<MeaningRow> meanings;
  std::vector<TranslationRow> translations;
  std::vector<TranslationEntryRow> translation_entries;
  std::vector<WikiTextRow> wiki_texts;
  bool operator==(const Tables&) const = default;
};

/// File names (without directory) in the order tables are loaded.
inline constexpr std::string_view kTableFiles[] = {
    "language.tsv", "page.tsv",        "lang_pos.tsv",        "meaning.tsv",
    "translation.tsv", "translation_entry.tsv", "wiki_text.tsv"};

struct StoreStats {
  /// An entry is one (page, language) section.
  std::size_t total_entries = 0;
  std::map<std::string, std::size_t> entries_per_language;
  std::size_t total_translation_entries = 0;
  /// Keyed by (entry language, translation language).
  std::map<std::pair<std::string, std::string>, std::size_t> translation_entries_per_pair;
  bool operator==(const StoreStats&) const = default;
};

/// Full-scan referential integrity check. Throws IngestError naming the
/// offending table file and row (row N is line N of that file).
void verify_integrity(const Tables& tables);

class DictionaryStore {
 public:
  DictionaryStore() = default;

  /// Reads the seven TSV files from `directory`.
  static DictionaryStore ingest(const std::filesystem::path& directory);
  static DictionaryStore from_tables(Tables tables);

  /// Writes the seven TSV files; `ingest` of the result reproduces the store.
  void write(const std::filesystem::path& directory) const;

  const Tables& tables() const { return tables_; }

  /// Terms listed for `headword` (an entry in `src_lang`) in `tgt_lang`.
  /// Deduplicated and sorted by byte order. Throws UnknownLanguage.
  std::vector<std::string> translations(std::string_view headword, std::string_view src_lang,
                                        std::string_view tgt_lang) const;

  /// Headwords in `entry_lang` whose translations into `term_lang` contain `term`.
  std::vector<std::string> reverse_translations(std::string_view term, std::string_view term_lang,
                                                std::string_view entry_lang) const;

  StoreStats stats() const;

  bool has_language(std::string_view code) const;
  /// Sorted, deduplicated page titles.
  std::vector<std::string> headwords() const;

 private:
  Id language_id(std::string_view code) const;
  void build_indexes();

  Tables tables_;
  std::unordered_map<std::string, Id> lang_by_code_;
  std::unordered_map<Id, std::string> code_by_lang_;
  std::unordered_map<std::string, std::vector<Id>> pages_by_title_;
  std::unordered_map<Id, std::size_t> page_index_;
  std::unordered_map<Id, std::vector<std::size_t>> lang_pos_by_page_;
  std::unordered_map<Id, std::size_t> lang_pos_index_;
  std::unordered_map<Id, std::vector<std::size_t>> translations_by_lang_pos_;
  std::unordered_map<Id, std::size_t> translation_index_;
  std::unordered_map<Id, std::vector<std::size_t>> entries_by_translation_;
  std::unordered_map<Id, std::size_t> wiki_text_index_;
  std::unordered_map<std::string, std::vector<std::size_t>> entries_by_text_;
};

}  // namespace lexalign::dict
