#include "lexalign/triplemap.hpp"

#include <algorithm>
#include <unordered_map>

#include "lexalign/error.hpp"
#include "lexalign/tsv.hpp"

namespace lexalign::rdf {

PrefixTable PrefixTable::standard() {
  PrefixTable t;
  t.bind(std::string(kWikpaPrefix), std::string(kWikpaBase));
  return t;
}

Term PrefixTable::expand(const Term& t) const {
  if (t.kind != TermKind::PrefixedName) return t;
  auto it = bases_.find(t.value);
  if (it == bases_.end()) throw Error("unknown prefix '" + t.value + ":'");
  return Term::iri(it->second + t.local);
}

std::optional<Term> PrefixTable::compact(std::string_view iri) const {
  std::optional<Term> best;
  std::size_t best_len = 0;
  for (const auto& [prefix, base] : bases_) {
    if (iri.size() > base.size() && iri.substr(0, base.size()) == base &&
        base.size() > best_len) {
      best = Term::prefixed(prefix, std::string(iri.substr(base.size())));
      best_len = base.size();
    }
  }
  return best;
}

std::string render(const Term& t, const PrefixTable& prefixes) {
  switch (t.kind) {
    case TermKind::Literal:
      return t.value;
    case TermKind::Variable:
      return "?" + t.value;
    case TermKind::PrefixedName:
      return t.value + ":" + t.local;
    case TermKind::Iri:
      if (auto c = prefixes.compact(t.value)) return c->value + ":" + c->local;
      return "<" + t.value + ">";
  }
  return {};
}

TripleStore::TripleStore(std::vector<Triple> triples, PrefixTable prefixes)
    : prefixes_(std::move(prefixes)) {
  for (auto& t : triples) {
    t.subject = prefixes_.expand(t.subject);
    t.predicate = prefixes_.expand(t.predicate);
    t.object = prefixes_.expand(t.object);
    if (t.subject.kind != TermKind::Iri) throw Error("triple subject must be an IRI");
    if (t.predicate.kind != TermKind::Iri) throw Error("triple predicate must be an IRI");
    if (t.object.is_variable()) throw Error("triple object must not be a variable");
  }

  terms_.reserve(triples.size() * 3);
  for (const auto& t : triples) {
    terms_.push_back(t.subject);
    terms_.push_back(t.predicate);
    terms_.push_back(t.object);
  }
  std::sort(terms_.begin(), terms_.end());
  terms_.erase(std::unique(terms_.begin(), terms_.end()), terms_.end());

  spo_.reserve(triples.size());
  for (const auto& t : triples) spo_.push_back({*find(t.subject), *find(t.predicate), *find(t.object)});
  std::sort(spo_.begin(), spo_.end());
  spo_.erase(std::unique(spo_.begin(), spo_.end()), spo_.end());

  pos_.reserve(spo_.size());
  osp_.reserve(spo_.size());
  for (const auto& k : spo_) {
    pos_.push_back({k[1], k[2], k[0]});
    osp_.push_back({k[2], k[0], k[1]});
  }
  std::sort(pos_.begin(), pos_.end());
  std::sort(osp_.begin(), osp_.end());
}

std::optional<TermId> TripleStore::find(const Term& t) const {
  const Term resolved = t.kind == TermKind::PrefixedName && prefixes_.knows(t.value)
                            ? prefixes_.expand(t)
                            : t;
  auto it = std::lower_bound(terms_.begin(), terms_.end(), resolved);
  if (it == terms_.end() || *it != resolved) return std::nullopt;
  return static_cast<TermId>(it - terms_.begin());
}

std::pair<const std::vector<TripleStore::Key>*, std::size_t> TripleStore::choose(
    std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o, Key& probe,
    int& perm) const {
  probe = {0, 0, 0};
  if (s) {
    if (!p && o) {
      perm = 2;
      probe = {*o, *s, 0};
      return {&osp_, 2};
    }
    perm = 0;
    probe = {*s, p ? *p : 0, o ? *o : 0};
    return {&spo_, p ? (o ? 3 : 2) : 1};
  }
  if (p) {
    perm = 1;
    probe = {*p, o ? *o : 0, 0};
    return {&pos_, o ? 2 : 1};
  }
  if (o) {
    perm = 2;
    probe = {*o, 0, 0};
    return {&osp_, 1};
  }
  perm = 0;
  return {&spo_, 0};
}

namespace {

struct PrefixLess {
  std::size_t n;
  bool operator()(const std::array<TermId, 3>& a, const std::array<TermId, 3>& b) const {
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

std::array<TermId, 3> to_spo(const std::array<TermId, 3>& k, int perm) {
  switch (perm) {
    case 1:
      return {k[2], k[0], k[1]};
    case 2:
      return {k[1], k[2], k[0]};
    default:
      return k;
  }
}

}  // namespace

std::size_t TripleStore::count(std::optional<TermId> s, std::optional<TermId> p,
                               std::optional<TermId> o) const {
  Key probe;
  int perm = 0;
  auto [index, bound] = choose(s, p, o, probe, perm);
  auto range = std::equal_range(index->begin(), index->end(), probe, PrefixLess{bound});
  return static_cast<std::size_t>(range.second - range.first);
}

void TripleStore::match(std::optional<TermId> s, std::optional<TermId> p,
                        std::optional<TermId> o,
                        const std::function<void(const Key&)>& visit) const {
  Key probe;
  int perm = 0;
  auto [index, bound] = choose(s, p, o, probe, perm);
  auto range = std::equal_range(index->begin(), index->end(), probe, PrefixLess{bound});
  for (auto it = range.first; it != range.second; ++it) visit(to_spo(*it, perm));
}

std::vector<Triple> TripleStore::lookup(const std::optional<Term>& s,
                                        const std::optional<Term>& p,
                                        const std::optional<Term>& o) const {
  std::optional<TermId> ids[3];
  const std::optional<Term>* in[3] = {&s, &p, &o};
  for (int i = 0; i < 3; ++i) {
    if (!*in[i]) continue;
    ids[i] = find(**in[i]);
    if (!ids[i]) return {};
  }
  std::vector<Key> keys;
  match(ids[0], ids[1], ids[2], [&](const Key& k) { keys.push_back(k); });
  std::sort(keys.begin(), keys.end());
  std::vector<Triple> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back({terms_[k[0]], terms_[k[1]], terms_[k[2]]});
  return out;
}

namespace {

std::string subject_iri(std::string_view table, dict::Id id) {
  return std::string(kWikpaBase) + std::string(table) + "/" + std::to_string(id);
}

Term predicate(std::string_view column) {
  return Term::iri(std::string(kWikpaBase) + std::string(column));
}

// Column predicates per table; index 0 is always the key column.
struct TableShape {
  std::string_view table;
  std::vector<std::string_view> columns;
};

const std::vector<TableShape>& shapes() {
  static const std::vector<TableShape> kShapes = {
      {"language", {"lang_id", "lang_code", "lang_name"}},
      {"page", {"page_id", "page_page_title"}},
      {"lang_pos", {"lang_pos_id", "lang_pos_page_id", "lang_pos_lang_id"}},
      {"meaning", {"meaning_id", "meaning_lang_pos_id"}},
      {"translation", {"translation_id", "translation_lang_pos_id", "translation_meaning_id"}},
      {"translation_entry",
       {"translation_entry_id", "translation_entry_translation_id", "translation_entry_lang_id",
        "translation_entry_wiki_text_id"}},
      {"wiki_text", {"wiki_text_id", "wiki_text_text"}},
  };
  return kShapes;
}

void emit(std::vector<Triple>& out, std::size_t shape, dict::Id id,
          const std::vector<std::string>& values) {
  const auto& s = shapes()[shape];
  const Term subject = Term::iri(subject_iri(s.table, id));
  for (std::size_t c = 0; c < s.columns.size(); ++c)
    out.push_back({subject, predicate(s.columns[c]), Term::literal(values[c])});
}

}  // namespace

TripleStore to_triples(const dict::DictionaryStore& store) {
  const auto& t = store.tables();
  auto n = [](dict::Id v) { return std::to_string(v); };
  std::vector<Triple> out;
  for (const auto& r : t.languages) emit(out, 0, r.lang_id, {n(r.lang_id), r.lang_code, r.lang_name});
  for (const auto& r : t.pages) emit(out, 1, r.page_id, {n(r.page_id), r.page_title});
  for (const auto& r : t.lang_pos)
    emit(out, 2, r.lang_pos_id, {n(r.lang_pos_id), n(r.page_id), n(r.lang_id)});
  for (const auto& r : t.meanings) emit(out, 3, r.meaning_id, {n(r.meaning_id), n(r.lang_pos_id)});
  for (const auto& r : t.translations)
    emit(out, 4, r.translation_id, {n(r.translation_id), n(r.lang_pos_id), n(r.meaning_id)});
  for (const auto& r : t.translation_entries)
    emit(out, 5, r.translation_entry_id,
         {n(r.translation_entry_id), n(r.translation_id), n(r.lang_id), n(r.wiki_text_id)});
  for (const auto& r : t.wiki_texts) emit(out, 6, r.wiki_text_id, {n(r.wiki_text_id), r.text});
  return TripleStore(std::move(out));
}

dict::Tables to_tables(const TripleStore& triples) {
  // subject -> (shape, column values)
  struct Pending {
    std::size_t shape = 0;
    std::vector<std::optional<std::string>> values;
  };
  std::map<std::string, Pending> rows;
  const std::string base(kWikpaBase);

  for (const auto& t : triples.lookup(std::nullopt, std::nullopt, std::nullopt)) {
    const std::string& s = t.subject.value;
    if (s.compare(0, base.size(), base) != 0) throw DataError("foreign subject <" + s + ">");
    const std::string rest = s.substr(base.size());
    const auto slash = rest.find('/');
    if (slash == std::string::npos) throw DataError("bad subject <" + s + ">");
    const std::string table = rest.substr(0, slash);
    std::size_t shape = 0;
    while (shape < shapes().size() && shapes()[shape].table != table) ++shape;
    if (shape == shapes().size()) throw DataError("unknown table in <" + s + ">");

    auto& cols = shapes()[shape].columns;
    const std::string& p = t.predicate.value;
    std::size_t col = 0;
    while (col < cols.size() && p != base + std::string(cols[col])) ++col;
    if (col == cols.size() || !t.object.is_literal())
      throw DataError("unexpected triple on <" + s + ">");

    auto& row = rows[s];
    row.shape = shape;
    row.values.resize(cols.size());
    if (row.values[col]) throw DataError("repeated column on <" + s + ">");
    row.values[col] = t.object.value;
  }

  dict::Tables out;
  for (const auto& [subject, row] : rows) {
    std::vector<std::string> v;
    for (const auto& cell : row.values) {
      if (!cell) throw DataError("incomplete row <" + subject + ">");
      v.push_back(*cell);
    }
    auto id = [&](std::size_t c) {
      dict::Id x = 0;
      if (!tsv::parse_id(v[c], x)) throw DataError("non-integer key on <" + subject + ">");
      return x;
    };
    switch (row.shape) {
      case 0: out.languages.push_back({id(0), v[1], v[2]}); break;
      case 1: out.pages.push_back({id(0), v[1]}); break;
      case 2: out.lang_pos.push_back({id(0), id(1), id(2)}); break;
      case 3: out.meanings.push_back({id(0), id(1)}); break;
      case 4: out.translations.push_back({id(0), id(1), id(2)}); break;
      case 5: out.translation_entries.push_back({id(0), id(1), id(2), id(3)}); break;
      case 6: out.wiki_texts.push_back({id(0), v[1]}); break;
    }
  }
  auto by_key = [](auto& rows, auto key) {
    std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  };
  by_key(out.languages, [](const auto& r) { return r.lang_id; });
  by_key(out.pages, [](const auto& r) { return r.page_id; });
  by_key(out.lang_pos, [](const auto& r) { return r.lang_pos_id; });
  by_key(out.meanings, [](const auto& r) { return r.meaning_id; });
  by_key(out.translations, [](const auto& r) { return r.translation_id; });
  by_key(out.translation_entries, [](const auto& r) { return r.translation_entry_id; });
  by_key(out.wiki_texts, [](const auto& r) { return r.wiki_text_id; });
  return out;
}

}  // namespace lexalign::rdf
