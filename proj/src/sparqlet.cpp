#include "lexalign/sparqlet.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace lexalign::sparql {

namespace {

using rdf::Term;
using rdf::TermKind;

enum class Tok { Name, Var, PName, Literal, Int, LBrace, RBrace, Dot, Semicolon, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;   // name / var name / literal value / digits / prefix
  std::string local;  // PName local part
  std::size_t line = 1;
  std::size_t column = 1;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}
bool local_char(char c) { return name_char(c) || c == '/'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_space();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;
    const char c = text_[pos_];
    switch (c) {
      case '{': advance(); tok.kind = Tok::LBrace; return tok;
      case '}': advance(); tok.kind = Tok::RBrace; return tok;
      case '.': advance(); tok.kind = Tok::Dot; return tok;
      case ';': advance(); tok.kind = Tok::Semicolon; return tok;
      case '"': return literal(tok);
      case '?': {
        advance();
        std::string name;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                        text_[pos_] == '_'))
          name.push_back(advance());
        if (name.empty()) throw ParseError(tok.line, tok.column, "empty variable name");
        tok.kind = Tok::Var;
        tok.text = std::move(name);
        return tok;
      }
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        tok.text.push_back(advance());
      tok.kind = Tok::Int;
      return tok;
    }
    if (name_start(c)) {
      while (pos_ < text_.size() && name_char(text_[pos_])) tok.text.push_back(advance());
      if (pos_ < text_.size() && text_[pos_] == ':') {
        advance();
        while (pos_ < text_.size() && local_char(text_[pos_])) tok.local.push_back(advance());
        if (tok.local.empty())
          throw ParseError(tok.line, tok.column, "empty local name after '" + tok.text + ":'");
        tok.kind = Tok::PName;
        return tok;
      }
      tok.kind = Tok::Name;
      return tok;
    }
    throw ParseError(tok.line, tok.column, std::string("unexpected character '") + c + "'");
  }

 private:
  char advance() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++column_;  // count code points, not bytes
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token literal(Token tok) {
    advance();  // opening quote
    while (true) {
      if (pos_ >= text_.size() || text_[pos_] == '\n')
        throw ParseError(tok.line, tok.column, "unterminated string literal");
      const char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= text_.size()) throw ParseError(line_, column_, "dangling escape");
        const std::size_t l = line_, col = column_;
        const char e = advance();
        switch (e) {
          case '"': tok.text.push_back('"'); break;
          case '\\': tok.text.push_back('\\'); break;
          case 'n': tok.text.push_back('\n'); break;
          case 't': tok.text.push_back('\t'); break;
          case 'r': tok.text.push_back('\r'); break;
          default: throw ParseError(l, col, std::string("unknown escape '\\") + e + "'");
        }
        continue;
      }
      tok.text.push_back(c);
    }
    tok.kind = Tok::Literal;
    return tok;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool keyword(const Token& t, std::string_view word) {
  if (t.kind != Tok::Name || t.text.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (std::toupper(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, const rdf::PrefixTable& prefixes)
      : lexer_(text), prefixes_(prefixes) {
    tok_ = lexer_.next();
  }

  Query parse() {
    Query q;
    expect_keyword("SELECT");
    std::vector<Token> select_tokens;
    while (tok_.kind == Tok::Var) {
      select_tokens.push_back(tok_);
      q.select_vars.push_back(tok_.text);
      shift();
    }
    if (q.select_vars.empty()) fail("expected a variable after SELECT");
    expect_keyword("WHERE");
    expect(Tok::LBrace, "'{'");
    while (tok_.kind != Tok::RBrace) {
      parse_group(q);
      if (tok_.kind == Tok::Dot) {
        shift();
      } else if (tok_.kind != Tok::RBrace) {
        fail("expected '.' or '}'");
      }
    }
    shift();
    if (keyword(tok_, "LIMIT")) {
      shift();
      if (tok_.kind != Tok::Int) fail("expected an integer after LIMIT");
      const Token digits = tok_;
      std::uint64_t value = 0;
      try {
        value = std::stoull(digits.text);
      } catch (const std::exception&) {
        throw ParseError(digits.line, digits.column, "LIMIT out of range");
      }
      if (value == 0) throw ParseError(digits.line, digits.column, "LIMIT must be positive");
      q.limit = value;
      shift();
    }
    if (tok_.kind != Tok::End) fail("unexpected input after query");

    std::set<std::string> used;
    for (const auto& p : q.patterns)
      for (const Term* t : {&p.subject, &p.predicate, &p.object})
        if (t->is_variable()) used.insert(t->value);
    for (const auto& v : select_tokens)
      if (!used.count(v.text))
        throw ParseError(v.line, v.column, "select variable ?" + v.text + " is not used in WHERE");
    return q;
  }

 private:
  void shift() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(tok_.line, tok_.column, what);
  }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what);
    shift();
  }

  void expect_keyword(std::string_view word) {
    if (!keyword(tok_, word)) fail("expected " + std::string(word));
    shift();
  }

  Term term(bool allow_literal, const char* role) {
    Term t;
    switch (tok_.kind) {
      case Tok::Var:
        t = Term::variable(tok_.text);
        break;
      case Tok::PName:
        if (!prefixes_.knows(tok_.text)) fail("unknown prefix '" + tok_.text + ":'");
        t = Term::prefixed(tok_.text, tok_.local);
        break;
      case Tok::Literal:
        if (!allow_literal) fail(std::string("literal not allowed as ") + role);
        t = Term::literal(tok_.text);
        break;
      default:
        fail(std::string("expected ") + role);
    }
    shift();
    return t;
  }

  void parse_group(Query& q) {
    const Term subject = term(false, "subject");
    while (true) {
      Term predicate = term(false, "predicate");
      Term object = term(true, "object");
      q.patterns.push_back({subject, std::move(predicate), std::move(object)});
      if (tok_.kind != Tok::Semicolon) break;
      shift();
      if (tok_.kind == Tok::Dot || tok_.kind == Tok::RBrace) break;
    }
  }

  Lexer lexer_;
  const rdf::PrefixTable& prefixes_;
  Token tok_;
};

std::string print_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Variable:
      return "?" + t.value;
    case TermKind::PrefixedName:
      return t.value + ":" + t.local;
    case TermKind::Iri:
      return "<" + t.value + ">";
    case TermKind::Literal: {
      std::string out = "\"";
      for (char c : t.value) {
        switch (c) {
          case '"': out += "\\\""; break;
          case '\\': out += "\\\\"; break;
          case '\n': out += "\\n"; break;
          case '\t': out += "\\t"; break;
          case '\r': out += "\\r"; break;
          default: out.push_back(c);
        }
      }
      return out + "\"";
    }
  }
  return {};
}

}  // namespace

Query parse_query(std::string_view text, const rdf::PrefixTable& prefixes) {
  return Parser(text, prefixes).parse();
}

std::string print_query(const Query& q) {
  std::string out = "SELECT";
  for (const auto& v : q.select_vars) out += " ?" + v;
  out += "\nWHERE {\n";
  for (const auto& p : q.patterns)
    out += "  " + print_term(p.subject) + " " + print_term(p.predicate) + " " +
           print_term(p.object) + " .\n";
  out += "}";
  if (q.limit) out += " LIMIT " + std::to_string(*q.limit);
  out += "\n";
  return out;
}

namespace {

// A pattern position resolved against a store: a constant id, a variable
// slot, or a constant the store has never seen.
struct Slot {
  enum Kind { Const, Var, Missing } kind = Const;
  rdf::TermId id = 0;
  std::size_t var = 0;
};

struct Compiled {
  std::vector<std::string> vars;
  std::vector<std::array<Slot, 3>> patterns;
  bool unsatisfiable = false;
};

Compiled compile(const std::vector<TriplePattern>& patterns, const rdf::TripleStore* store) {
  Compiled c;
  auto var_index = [&](const std::string& name) {
    auto it = std::find(c.vars.begin(), c.vars.end(), name);
    if (it != c.vars.end()) return static_cast<std::size_t>(it - c.vars.begin());
    c.vars.push_back(name);
    return c.vars.size() - 1;
  };
  for (const auto& p : patterns) {
    std::array<Slot, 3> slots;
    const Term* terms[3] = {&p.subject, &p.predicate, &p.object};
    for (int i = 0; i < 3; ++i) {
      if (terms[i]->is_variable()) {
        slots[i].kind = Slot::Var;
        slots[i].var = var_index(terms[i]->value);
      } else if (store) {
        auto id = store->find(*terms[i]);
        if (id) {
          slots[i].id = *id;
        } else {
          slots[i].kind = Slot::Missing;
          c.unsatisfiable = true;
        }
      }
    }
    c.patterns.push_back(slots);
  }
  return c;
}

}  // namespace

std::vector<TriplePattern> plan_order(const Query& q, const rdf::TripleStore* store) {
  const Compiled c = compile(q.patterns, store);
  std::vector<bool> bound(c.vars.size(), false);
  std::vector<bool> taken(q.patterns.size(), false);
  std::vector<TriplePattern> order;
  order.reserve(q.patterns.size());

  for (std::size_t step = 0; step < q.patterns.size(); ++step) {
    std::size_t best = q.patterns.size();
    std::pair<int, std::size_t> best_key{0, 0};
    for (std::size_t i = 0; i < q.patterns.size(); ++i) {
      if (taken[i]) continue;
      int unbound = 0;
      std::optional<rdf::TermId> ids[3];
      std::size_t cardinality = 0;
      bool missing = false;
      for (int k = 0; k < 3; ++k) {
        const Slot& s = c.patterns[i][k];
        if (s.kind == Slot::Var) {
          if (!bound[s.var]) ++unbound;
        } else if (s.kind == Slot::Missing) {
          missing = true;
        } else {
          ids[k] = s.id;
        }
      }
      if (store && !missing) cardinality = store->count(ids[0], ids[1], ids[2]);
      const std::pair<int, std::size_t> key{unbound, cardinality};
      if (best == q.patterns.size() || key < best_key) {
        best = i;
        best_key = key;
      }
    }
    taken[best] = true;
    for (const Slot& s : c.patterns[best])
      if (s.kind == Slot::Var) bound[s.var] = true;
    order.push_back(q.patterns[best]);
  }
  return order;
}

ResultTable evaluate(const Query& q, const rdf::TripleStore& store, const EvalOptions& options) {
  ResultTable result;
  result.header = q.select_vars;

  const std::vector<TriplePattern> ordered = options.plan ? plan_order(q, &store) : q.patterns;
  const Compiled c = compile(ordered, &store);
  if (c.unsatisfiable) return result;

  std::vector<std::size_t> projection;
  for (const auto& v : q.select_vars) {
    auto it = std::find(c.vars.begin(), c.vars.end(), v);
    if (it == c.vars.end()) throw Error("select variable ?" + v + " is not used in WHERE");
    projection.push_back(static_cast<std::size_t>(it - c.vars.begin()));
  }

  std::vector<std::optional<rdf::TermId>> binding(c.vars.size());
  std::vector<std::vector<rdf::TermId>> solutions;
  std::size_t steps = 0;

  auto search = [&](auto& self, std::size_t depth) -> void {
    if (options.deadline && (++steps & 1023) == 0 &&
        std::chrono::steady_clock::now() > *options.deadline)
      throw EvaluationTimeout();
    if (depth == c.patterns.size()) {
      std::vector<rdf::TermId> row;
      row.reserve(projection.size());
      for (std::size_t v : projection) row.push_back(*binding[v]);
      solutions.push_back(std::move(row));
      return;
    }
    const auto& slots = c.patterns[depth];
    std::optional<rdf::TermId> probe[3];
    for (int k = 0; k < 3; ++k) {
      if (slots[k].kind == Slot::Const)
        probe[k] = slots[k].id;
      else
        probe[k] = binding[slots[k].var];
    }
    store.match(probe[0], probe[1], probe[2], [&](const std::array<rdf::TermId, 3>& t) {
      std::size_t newly[3];
      std::size_t n = 0;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k) {
        if (slots[k].kind != Slot::Var) continue;
        auto& b = binding[slots[k].var];
        if (!b) {
          b = t[k];
          newly[n++] = slots[k].var;
        } else if (*b != t[k]) {
          ok = false;  // repeated variable inside one pattern
        }
      }
      if (ok) self(self, depth + 1);
      for (std::size_t i = 0; i < n; ++i) binding[newly[i]].reset();
    });
  };
  search(search, 0);

  result.rows.reserve(solutions.size());
  for (const auto& s : solutions) {
    std::vector<std::string> cells;
    cells.reserve(s.size());
    for (rdf::TermId id : s) cells.push_back(rdf::render(store.term(id), store.prefixes()));
    result.rows.push_back(std::move(cells));
  }
  std::sort(result.rows.begin(), result.rows.end());
  if (q.limit && result.rows.size() > *q.limit) result.rows.resize(*q.limit);
  return result;
}

}  // namespace lexalign::sparql
