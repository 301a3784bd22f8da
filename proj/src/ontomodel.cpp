#include "lexalign/ontomodel.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lexalign/error.hpp"
#include "lexalign/utf8.hpp"

namespace lexalign::onto {

std::string_view kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::Class: return "class";
    case EntityKind::ObjectProperty: return "object-property";
    case EntityKind::DataProperty: return "data-property";
    case EntityKind::Individual: return "individual";
  }
  return "?";
}

std::string local_name(std::string_view iri) {
  const auto cut = iri.find_last_of("#/");
  if (cut == std::string_view::npos || cut + 1 == iri.size()) return std::string(iri);
  return std::string(iri.substr(cut + 1));
}

namespace {

struct NtTerm {
  enum Kind { Iri, Literal, Blank } kind = Iri;
  std::string value;
};

struct NtLine {
  std::size_t line = 0;
  NtTerm s, p, o;
};

class LineReader {
 public:
  LineReader(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError("line " + std::to_string(line_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }

  NtTerm term() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of line");
    NtTerm t;
    const char c = text_[pos_];
    if (c == '<') {
      const auto close = text_.find('>', pos_);
      if (close == std::string_view::npos) fail("unterminated IRI");
      t.value = std::string(text_.substr(pos_ + 1, close - pos_ - 1));
      if (t.value.empty()) fail("empty IRI");
      pos_ = close + 1;
      return t;
    }
    if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
      t.kind = NtTerm::Blank;
      pos_ += 2;
      while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t') t.value.push_back(text_[pos_++]);
      return t;
    }
    if (c == '"') {
      t.kind = NtTerm::Literal;
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated literal");
        const char ch = text_[pos_++];
        if (ch == '"') break;
        if (ch == '\\') {
          if (pos_ >= text_.size()) fail("dangling escape");
          const char e = text_[pos_++];
          switch (e) {
            case '"': t.value.push_back('"'); break;
            case '\\': t.value.push_back('\\'); break;
            case 'n': t.value.push_back('\n'); break;
            case 't': t.value.push_back('\t'); break;
            case 'r': t.value.push_back('\r'); break;
            case 'u':
            case 'U': {
              const std::size_t n = e == 'u' ? 4 : 8;
              if (pos_ + n > text_.size()) fail("short \\u escape");
              char32_t cp = 0;
              for (std::size_t k = 0; k < n; ++k) {
                const char h = text_[pos_++];
                int v = -1;
                if (h >= '0' && h <= '9') v = h - '0';
                else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
                else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
                if (v < 0) fail("bad hex digit in escape");
                cp = cp * 16 + static_cast<char32_t>(v);
              }
              t.value += utf8::encode(std::u32string(1, cp));
              break;
            }
            default: fail(std::string("unknown escape '\\") + e + "'");
          }
          continue;
        }
        t.value.push_back(ch);
      }
      if (pos_ < text_.size() && text_[pos_] == '@') {
        while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '.') ++pos_;
      } else if (text_.substr(pos_, 3) == "^^<") {
        const auto close = text_.find('>', pos_);
        if (close == std::string_view::npos) fail("unterminated datatype IRI");
        pos_ = close + 1;
      }
      return t;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void dot() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected '.'");
    ++pos_;
    if (!at_end()) fail("trailing characters after '.'");
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Ontology Ontology::parse(std::string_view text) {
  Ontology o;
  std::vector<NtLine> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++number;
    start = end + 1;
    LineReader reader(raw, number);
    if (reader.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    NtLine l;
    l.line = number;
    l.s = reader.term();
    l.p = reader.term();
    l.o = reader.term();
    reader.dot();
    if (l.s.kind == NtTerm::Literal) reader.fail("literal subject");
    if (l.p.kind != NtTerm::Iri) reader.fail("predicate must be an IRI");
    if (l.s.kind == NtTerm::Blank || l.o.kind == NtTerm::Blank) {
      o.warnings_.push_back("line " + std::to_string(number) + ": blank node skipped");
      continue;
    }
    lines.push_back(std::move(l));
    if (end == text.size()) break;
  }

  auto where = [](const NtLine& l) { return "line " + std::to_string(l.line) + ": "; };

  for (const auto& l : lines) {
    if (l.p.value != vocab::kRdfType) continue;
    std::optional<EntityKind> kind;
    if (l.o.value == vocab::kOwlClass) kind = EntityKind::Class;
    else if (l.o.value == vocab::kOwlObjectProperty) kind = EntityKind::ObjectProperty;
    else if (l.o.value == vocab::kOwlDatatypeProperty) kind = EntityKind::DataProperty;
    else if (l.o.value == vocab::kOwlNamedIndividual) kind = EntityKind::Individual;
    if (!kind || l.o.kind != NtTerm::Iri) {
      o.warnings_.push_back(where(l) + "unrecognized rdf:type object ignored");
      continue;
    }
    auto [it, fresh] = o.kinds_.emplace(l.s.value, *kind);
    if (!fresh && it->second != *kind)
      throw DataError(where(l) + "<" + l.s.value + "> declared with two kinds");
  }

  auto kind_of = [&](const std::string& iri) -> std::optional<EntityKind> {
    auto it = o.kinds_.find(iri);
    if (it == o.kinds_.end()) return std::nullopt;
    return it->second;
  };
  auto is_property = [](std::optional<EntityKind> k) {
    return k == EntityKind::ObjectProperty || k == EntityKind::DataProperty;
  };

  for (const auto& l : lines) {
    const std::string& p = l.p.value;
    if (p == vocab::kRdfType) continue;
    if (p == vocab::kRdfsLabel) {
      if (l.o.kind != NtTerm::Literal) throw DataError(where(l) + "rdfs:label needs a literal");
      if (!kind_of(l.s.value)) {
        o.warnings_.push_back(where(l) + "label on undeclared entity ignored");
        continue;
      }
      if (!o.labels_.emplace(l.s.value, l.o.value).second)
        o.warnings_.push_back(where(l) + "extra label for <" + l.s.value + "> ignored");
      continue;
    }
    if (l.o.kind != NtTerm::Iri) {
      if (p == vocab::kRdfsSubClassOf || p == vocab::kRdfsDomain || p == vocab::kRdfsRange)
        throw DataError(where(l) + "object must be an IRI");
      o.warnings_.push_back(where(l) + "unknown predicate ignored");
      continue;
    }
    if (p == vocab::kRdfsSubClassOf) {
      if (l.o.value == vocab::kOwlThing) {
        o.warnings_.push_back(where(l) + "subclass of owl:Thing ignored");
        continue;
      }
      if (kind_of(l.s.value) != EntityKind::Class || kind_of(l.o.value) != EntityKind::Class)
        throw DataError(where(l) + "rdfs:subClassOf between undeclared classes");
      o.subclass_of_.emplace(l.s.value, l.o.value);
    } else if (p == vocab::kRdfsDomain || p == vocab::kRdfsRange) {
      const auto k = kind_of(l.s.value);
      const bool domain = p == vocab::kRdfsDomain;
      const char* what = domain ? "rdfs:domain" : "rdfs:range";
      if (!is_property(k)) throw DataError(where(l) + what + " on undeclared property <" + l.s.value + ">");
      const bool needs_class = domain || k == EntityKind::ObjectProperty;
      if (needs_class && kind_of(l.o.value) != EntityKind::Class)
        throw DataError(where(l) + what + " names undeclared class <" + l.o.value + ">");
      auto& target = domain ? o.domain_ : o.range_;
      if (!target.emplace(l.s.value, l.o.value).second)
        o.warnings_.push_back(where(l) + "extra " + what + " ignored");
    } else {
      o.warnings_.push_back(where(l) + "unknown predicate ignored");
    }
  }

  // Cycle check over the subclass graph (iterative DFS with colors).
  std::map<std::string, std::vector<std::string>> up;
  for (const auto& [sub, super] : o.subclass_of_) up[sub].push_back(super);
  std::map<std::string, int> color;
  for (const auto& [start_node, unused] : up) {
    (void)unused;
    if (color[start_node]) continue;
    std::vector<std::pair<std::string, std::size_t>> stack{{start_node, 0}};
    color[start_node] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      auto& outs = up[node];
      if (next < outs.size()) {
        const std::string child = outs[next++];
        int& c = color[child];
        if (c == 1) throw DataError("subclass cycle through <" + child + ">");
        if (c == 0) {
          c = 1;
          stack.emplace_back(child, 0);
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }

  for (const auto& [iri, kind] : o.kinds_) o.entities_.push_back({iri, kind});
  std::sort(o.entities_.begin(), o.entities_.end());
  return o;
}

Ontology Ontology::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const DataError& e) {
    throw DataError(file.filename().string() + ": " + e.what());
  }
}

std::vector<EntityId> Ontology::entities(EntityKind kind) const {
  std::vector<EntityId> out;
  for (const auto& e : entities_)
    if (e.kind == kind) out.push_back(e);
  return out;
}

std::optional<EntityId> Ontology::find(std::string_view iri) const {
  auto it = kinds_.find(iri);
  if (it == kinds_.end()) return std::nullopt;
  return EntityId{it->first, it->second};
}

bool Ontology::contains(const EntityId& e) const {
  auto it = kinds_.find(e.iri);
  return it != kinds_.end() && it->second == e.kind;
}

void Ontology::require(const EntityId& e) const {
  if (!contains(e)) throw UnknownEntity("unknown entity <" + e.iri + ">");
}

void Ontology::require_class(const EntityId& c) const {
  require(c);
  if (c.kind != EntityKind::Class) throw UnknownEntity("<" + c.iri + "> is not a class");
}

std::optional<std::string> Ontology::label(const EntityId& e) const {
  require(e);
  auto it = labels_.find(e.iri);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::string Ontology::display_name(const EntityId& e) const {
  if (auto l = label(e)) return *l;
  return local_name(e.iri);
}

std::set<EntityId> Ontology::direct_subclasses(const EntityId& c) const {
  require_class(c);
  std::set<EntityId> out;
  for (const auto& [sub, super] : subclass_of_)
    if (super == c.iri) out.insert({sub, EntityKind::Class});
  return out;
}

std::set<EntityId> Ontology::superclasses(const EntityId& c) const {
  require_class(c);
  std::set<EntityId> out;
  for (const auto& [sub, super] : subclass_of_)
    if (sub == c.iri) out.insert({super, EntityKind::Class});
  return out;
}

std::set<EntityId> Ontology::properties_of(const EntityId& c) const {
  require_class(c);
  std::set<EntityId> out;
  for (const auto& [prop, cls] : domain_)
    if (cls == c.iri) out.insert({prop, kinds_.at(prop)});
  for (const auto& [prop, cls] : range_)
    if (cls == c.iri && kinds_.at(prop) == EntityKind::ObjectProperty) out.insert({prop, kinds_.at(prop)});
  return out;
}

std::optional<EntityId> Ontology::domain_of(const EntityId& property) const {
  require(property);
  auto it = domain_.find(property.iri);
  if (it == domain_.end()) return std::nullopt;
  return EntityId{it->second, EntityKind::Class};
}

std::optional<EntityId> Ontology::range_class(const EntityId& property) const {
  require(property);
  auto it = range_.find(property.iri);
  if (it == range_.end()) return std::nullopt;
  auto k = kinds_.find(it->second);
  if (k == kinds_.end() || k->second != EntityKind::Class) return std::nullopt;
  return EntityId{it->second, EntityKind::Class};
}

std::optional<std::string> Ontology::range_iri(const EntityId& property) const {
  require(property);
  auto it = range_.find(property.iri);
  if (it == range_.end()) return std::nullopt;
  return it->second;
}

}  // namespace lexalign::onto
