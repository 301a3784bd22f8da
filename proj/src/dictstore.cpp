#include "lexalign/dictstore.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_set>

#include "lexalign/error.hpp"
#include "lexalign/tsv.hpp"

namespace lexalign::dict {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Reads one table file, splitting each line into exactly `columns` fields.
template <typename Row, typename Convert>
std::vector<Row> load_table(const fs::path& dir, std::string_view name, std::size_t columns,
                            Convert convert) {
  const fs::path path = dir / name;
  if (!fs::exists(path)) throw IngestError(std::string(name), 0, "missing file");
  std::vector<Row> rows;
  tsv::for_each_line(path, [&](std::size_t line, const std::string& text) {
    auto fields = tsv::split(text);
    if (fields.size() != columns) {
      throw IngestError(std::string(name), line,
                        "expected " + std::to_string(columns) + " columns, got " +
                            std::to_string(fields.size()));
    }
    auto id = [&](std::size_t col) {
      Id v = 0;
      if (!tsv::parse_id(fields[col], v))
        throw IngestError(std::string(name), line, "bad integer '" + fields[col] + "'");
      return v;
    };
    rows.push_back(convert(fields, id));
  });
  return rows;
}

template <typename Row, typename KeyOf>
void check_unique(const std::vector<Row>& rows, std::string_view file, KeyOf key) {
  std::unordered_set<Id> seen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!seen.insert(key(rows[i])).second)
      throw IngestError(std::string(file), i + 1,
                        "duplicate key " + std::to_string(key(rows[i])));
  }
}

template <typename Row, typename KeyOf>
std::unordered_map<Id, std::size_t> index_by(const std::vector<Row>& rows, KeyOf key) {
  std::unordered_map<Id, std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.emplace(key(rows[i]), i);
  return out;
}

void write_lines(const fs::path& path, const std::vector<std::vector<std::string>>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  for (const auto& fields : lines) out << tsv::join(fields) << '\n';
}

}  // namespace

void verify_integrity(const Tables& t) {
  check_unique(t.languages, "language.tsv", [](const auto& r) { return r.lang_id; });
  check_unique(t.pages, "page.tsv", [](const auto& r) { return r.page_id; });
  check_unique(t.lang_pos, "lang_pos.tsv", [](const auto& r) { return r.lang_pos_id; });
  check_unique(t.meanings, "meaning.tsv", [](const auto& r) { return r.meaning_id; });
  check_unique(t.translations, "translation.tsv", [](const auto& r) { return r.translation_id; });
  check_unique(t.translation_entries, "translation_entry.tsv",
               [](const auto& r) { return r.translation_entry_id; });
  check_unique(t.wiki_texts, "wiki_text.tsv", [](const auto& r) { return r.wiki_text_id; });

  std::unordered_set<std::string> codes;
  for (std::size_t i = 0; i < t.languages.size(); ++i) {
    const auto& code = t.languages[i].lang_code;
    if (code.empty()) throw IngestError("language.tsv", i + 1, "empty lang_code");
    if (!codes.insert(code).second)
      throw IngestError("language.tsv", i + 1, "duplicate lang_code '" + code + "'");
  }
  for (std::size_t i = 0; i < t.pages.size(); ++i)
    if (t.pages[i].page_title.empty()) throw IngestError("page.tsv", i + 1, "empty page_title");
  for (std::size_t i = 0; i < t.wiki_texts.size(); ++i)
    if (t.wiki_texts[i].text.empty()) throw IngestError("wiki_text.tsv", i + 1, "empty text");

  const auto langs = index_by(t.languages, [](const auto& r) { return r.lang_id; });
  const auto pages = index_by(t.pages, [](const auto& r) { return r.page_id; });
  const auto lang_pos = index_by(t.lang_pos, [](const auto& r) { return r.lang_pos_id; });
  const auto meanings = index_by(t.meanings, [](const auto& r) { return r.meaning_id; });
  const auto translations = index_by(t.translations, [](const auto& r) { return r.translation_id; });
  const auto texts = index_by(t.wiki_texts, [](const auto& r) { return r.wiki_text_id; });

  auto require = [](const std::unordered_map<Id, std::size_t>& idx, Id id, const char* file,
                    std::size_t row, const char* column) {
    if (!idx.count(id))
      throw IngestError(file, row + 1,
                        std::string("dangling ") + column + " " + std::to_string(id));
  };

  for (std::size_t i = 0; i < t.lang_pos.size(); ++i) {
    require(pages, t.lang_pos[i].page_id, "lang_pos.tsv", i, "page_id");
    require(langs, t.lang_pos[i].lang_id, "lang_pos.tsv", i, "lang_id");
  }
  for (std::size_t i = 0; i < t.meanings.size(); ++i)
    require(lang_pos, t.meanings[i].lang_pos_id, "meaning.tsv", i, "lang_pos_id");
  for (std::size_t i = 0; i < t.translations.size(); ++i) {
    const auto& row = t.translations[i];
    require(lang_pos, row.lang_pos_id, "translation.tsv", i, "lang_pos_id");
    require(meanings, row.meaning_id, "translation.tsv", i, "meaning_id");
    if (t.meanings[meanings.at(row.meaning_id)].lang_pos_id != row.lang_pos_id)
      throw IngestError("translation.tsv", i + 1,
                        "meaning " + std::to_string(row.meaning_id) +
                            " belongs to a different lang_pos");
  }
  for (std::size_t i = 0; i < t.translation_entries.size(); ++i) {
    const auto& row = t.translation_entries[i];
    require(translations, row.translation_id, "translation_entry.tsv", i, "translation_id");
    require(langs, row.lang_id, "translation_entry.tsv", i, "lang_id");
    require(texts, row.wiki_text_id, "translation_entry.tsv", i, "wiki_text_id");
  }
}

DictionaryStore DictionaryStore::ingest(const fs::path& dir) {
  Tables t;
  t.languages = load_table<LanguageRow>(dir, "language.tsv", 3, [](auto& f, auto id) {
    return LanguageRow{id(0), f[1], f[2]};
  });
  t.pages = load_table<PageRow>(dir, "page.tsv", 2,
                                [](auto& f, auto id) { return PageRow{id(0), f[1]}; });
  t.lang_pos = load_table<LangPosRow>(dir, "lang_pos.tsv", 3, [](auto&, auto id) {
    return LangPosRow{id(0), id(1), id(2)};
  });
  t.meanings = load_table<MeaningRow>(dir, "meaning.tsv", 2,
                                      [](auto&, auto id) { return MeaningRow{id(0), id(1)}; });
  t.translations = load_table<TranslationRow>(dir, "translation.tsv", 3, [](auto&, auto id) {
    return TranslationRow{id(0), id(1), id(2)};
  });
  t.translation_entries =
      load_table<TranslationEntryRow>(dir, "translation_entry.tsv", 4, [](auto&, auto id) {
        return TranslationEntryRow{id(0), id(1), id(2), id(3)};
      });
  t.wiki_texts = load_table<WikiTextRow>(dir, "wiki_text.tsv", 2,
                                         [](auto& f, auto id) { return WikiTextRow{id(0), f[1]}; });
  return from_tables(std::move(t));
}

DictionaryStore DictionaryStore::from_tables(Tables tables) {
  verify_integrity(tables);
  DictionaryStore store;
  store.tables_ = std::move(tables);
  store.build_indexes();
  return store;
}

void DictionaryStore::build_indexes() {
  const Tables& t = tables_;
  for (const auto& r : t.languages) {
    lang_by_code_.emplace(r.lang_code, r.lang_id);
    code_by_lang_.emplace(r.lang_id, r.lang_code);
  }
  for (std::size_t i = 0; i < t.pages.size(); ++i) {
    pages_by_title_[t.pages[i].page_title].push_back(t.pages[i].page_id);
    page_index_.emplace(t.pages[i].page_id, i);
  }
  for (std::size_t i = 0; i < t.lang_pos.size(); ++i) {
    lang_pos_by_page_[t.lang_pos[i].page_id].push_back(i);
    lang_pos_index_.emplace(t.lang_pos[i].lang_pos_id, i);
  }
  for (std::size_t i = 0; i < t.translations.size(); ++i) {
    translations_by_lang_pos_[t.translations[i].lang_pos_id].push_back(i);
    translation_index_.emplace(t.translations[i].translation_id, i);
  }
  for (std::size_t i = 0; i < t.wiki_texts.size(); ++i)
    wiki_text_index_.emplace(t.wiki_texts[i].wiki_text_id, i);
  for (std::size_t i = 0; i < t.translation_entries.size(); ++i) {
    const auto& e = t.translation_entries[i];
    entries_by_translation_[e.translation_id].push_back(i);
    entries_by_text_[t.wiki_texts[wiki_text_index_.at(e.wiki_text_id)].text].push_back(i);
  }
}

void DictionaryStore::write(const fs::path& dir) const {
  fs::create_directories(dir);
  const Tables& t = tables_;
  auto s = [](Id v) { return std::to_string(v); };
  std::vector<std::vector<std::string>> lines;

  for (const auto& r : t.languages) lines.push_back({s(r.lang_id), r.lang_code, r.lang_name});
  write_lines(dir / "language.tsv", lines);
  lines.clear();
  for (const auto& r : t.pages) lines.push_back({s(r.page_id), r.page_title});
  write_lines(dir / "page.tsv", lines);
  lines.clear();
  for (const auto& r : t.lang_pos) lines.push_back({s(r.lang_pos_id), s(r.page_id), s(r.lang_id)});
  write_lines(dir / "lang_pos.tsv", lines);
  lines.clear();
  for (const auto& r : t.meanings) lines.push_back({s(r.meaning_id), s(r.lang_pos_id)});
  write_lines(dir / "meaning.tsv", lines);
  lines.clear();
  for (const auto& r : t.translations)
    lines.push_back({s(r.translation_id), s(r.lang_pos_id), s(r.meaning_id)});
  write_lines(dir / "translation.tsv", lines);
  lines.clear();
  for (const auto& r : t.translation_entries)
    lines.push_back(
        {s(r.translation_entry_id), s(r.translation_id), s(r.lang_id), s(r.wiki_text_id)});
  write_lines(dir / "translation_entry.tsv", lines);
  lines.clear();
  for (const auto& r : t.wiki_texts) lines.push_back({s(r.wiki_text_id), r.text});
  write_lines(dir / "wiki_text.tsv", lines);
}

Id DictionaryStore::language_id(std::string_view code) const {
  auto it = lang_by_code_.find(std::string(code));
  if (it == lang_by_code_.end()) throw UnknownLanguage(std::string(code));
  return it->second;
}

bool DictionaryStore::has_language(std::string_view code) const {
  return lang_by_code_.count(std::string(code)) > 0;
}

std::vector<std::string> DictionaryStore::translations(std::string_view headword,
                                                       std::string_view src_lang,
                                                       std::string_view tgt_lang) const {
  const Id src = language_id(src_lang);
  const Id tgt = language_id(tgt_lang);
  std::vector<std::string> out;
  auto pages = pages_by_title_.find(std::string(headword));
  if (pages == pages_by_title_.end()) return out;
  for (Id page : pages->second) {
    auto sections = lang_pos_by_page_.find(page);
    if (sections == lang_pos_by_page_.end()) continue;
    for (std::size_t lp : sections->second) {
      const auto& section = tables_.lang_pos[lp];
      if (section.lang_id != src) continue;
      auto blocks = translations_by_lang_pos_.find(section.lang_pos_id);
      if (blocks == translations_by_lang_pos_.end()) continue;
      for (std::size_t tr : blocks->second) {
        auto entries = entries_by_translation_.find(tables_.translations[tr].translation_id);
        if (entries == entries_by_translation_.end()) continue;
        for (std::size_t e : entries->second) {
          const auto& entry = tables_.translation_entries[e];
          if (entry.lang_id != tgt) continue;
          out.push_back(tables_.wiki_texts[wiki_text_index_.at(entry.wiki_text_id)].text);
        }
      }
    }
  }
  return sorted_unique(std::move(out));
}

std::vector<std::string> DictionaryStore::reverse_translations(std::string_view term,
                                                               std::string_view term_lang,
                                                               std::string_view entry_lang) const {
  const Id term_id = language_id(term_lang);
  const Id entry_id = language_id(entry_lang);
  std::vector<std::string> out;
  auto entries = entries_by_text_.find(std::string(term));
  if (entries == entries_by_text_.end()) return out;
  for (std::size_t e : entries->second) {
    const auto& entry = tables_.translation_entries[e];
    if (entry.lang_id != term_id) continue;
    const auto& block = tables_.translations[translation_index_.at(entry.translation_id)];
    const auto& section = tables_.lang_pos[lang_pos_index_.at(block.lang_pos_id)];
    if (section.lang_id != entry_id) continue;
    out.push_back(tables_.pages[page_index_.at(section.page_id)].page_title);
  }
  return sorted_unique(std::move(out));
}

StoreStats DictionaryStore::stats() const {
  StoreStats st;
  std::set<std::pair<Id, Id>> entries;  // (page, lang)
  for (const auto& r : tables_.lang_pos) entries.emplace(r.page_id, r.lang_id);
  st.total_entries = entries.size();
  for (const auto& r : tables_.languages) st.entries_per_language[r.lang_code] = 0;
  for (const auto& [page, lang] : entries) ++st.entries_per_language[code_by_lang_.at(lang)];

  st.total_translation_entries = tables_.translation_entries.size();
  for (const auto& e : tables_.translation_entries) {
    const auto& block = tables_.translations[translation_index_.at(e.translation_id)];
    const auto& section = tables_.lang_pos[lang_pos_index_.at(block.lang_pos_id)];
    ++st.translation_entries_per_pair[{code_by_lang_.at(section.lang_id),
                                       code_by_lang_.at(e.lang_id)}];
  }
  return st;
}

std::vector<std::string> DictionaryStore::headwords() const {
  std::vector<std::string> out;
  out.reserve(tables_.pages.size());
  for (const auto& p : tables_.pages) out.push_back(p.page_title);
  return sorted_unique(std::move(out));
}

}  // namespace lexalign::dict
