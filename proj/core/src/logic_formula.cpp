#include <algorithm>
#include <cctype>

#include "structo/error.hpp"
#include "structo/logic.hpp"
#include "structo/util.hpp"

namespace structo {

namespace {

Formula make(Op op, std::string name = {}, std::vector<std::string> vars = {}, std::vector<Formula> kids = {}) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->name = std::move(name);
  n->vars = std::move(vars);
  n->kids = std::move(kids);
  return n;
}

}  // namespace

Formula f_true() {
  static const Formula t = make(Op::True);
  return t;
}
Formula f_false() {
  static const Formula f = make(Op::False);
  return f;
}
Formula f_atom(std::string symbol, std::vector<std::string> vars) {
  return make(Op::Atom, std::move(symbol), std::move(vars));
}
Formula f_eq(std::string a, std::string b) { return make(Op::Eq, {}, {std::move(a), std::move(b)}); }
Formula f_not(Formula a) { return make(Op::Not, {}, {}, {std::move(a)}); }
Formula f_and(std::vector<Formula> parts) { return make(Op::And, {}, {}, std::move(parts)); }
Formula f_or(std::vector<Formula> parts) { return make(Op::Or, {}, {}, std::move(parts)); }
Formula f_exists(std::string var, Formula body) { return make(Op::Exists, std::move(var), {}, {std::move(body)}); }
Formula f_forall(std::string var, Formula body) { return make(Op::Forall, std::move(var), {}, {std::move(body)}); }
Formula f_implies(Formula a, Formula b) { return f_or({f_not(std::move(a)), std::move(b)}); }
Formula f_iff(Formula a, Formula b) { return f_and({f_implies(a, b), f_implies(b, a)}); }

Formula f_exists_unique(const std::string& var, Formula body) {
  std::set<std::string> used = all_vars(body);
  used.insert(var);
  const std::string w = fresh_var(used, var);
  Formula moved = rename_free(body, {{var, w}});
  return f_exists(var, f_and({body, f_forall(w, f_implies(moved, f_eq(w, var)))}));
}

// ---------------------------------------------------------------- parsing

namespace {

struct Token {
  enum Kind { Open, Close, Word, End } kind;
  std::string text;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) { advance(); }

  Formula formula() {
    if (tok_.kind != Token::Open) fail("expected '('");
    advance();
    if (tok_.kind != Token::Word) fail("expected a connective");
    const std::string head = tok_.text;
    const std::size_t head_offset = tok_.offset;
    advance();
    Formula out;
    if (head == "true") {
      out = f_true();
    } else if (head == "false") {
      out = f_false();
    } else if (head == "rel") {
      std::string sym = word("relation symbol");
      std::vector<std::string> vars;
      while (tok_.kind == Token::Word) vars.push_back(word("variable"));
      if (vars.empty()) fail("relation needs at least one argument");
      out = f_atom(sym, vars);
    } else if (head == "eq") {
      std::string a = word("variable");
      std::string b = word("variable");
      out = f_eq(a, b);
    } else if (head == "not") {
      out = f_not(formula());
    } else if (head == "and" || head == "or") {
      std::vector<Formula> parts;
      while (tok_.kind == Token::Open) parts.push_back(formula());
      if (parts.empty()) out = head == "and" ? f_true() : f_false();
      else out = head == "and" ? f_and(parts) : f_or(parts);
    } else if (head == "exists" || head == "forall") {
      std::string v = word("variable");
      Formula body = formula();
      out = head == "exists" ? f_exists(v, body) : f_forall(v, body);
    } else if (head == "implies" || head == "iff") {
      Formula a = formula();
      Formula b = formula();
      out = head == "implies" ? f_implies(a, b) : f_iff(a, b);
    } else {
      fail_at("unknown connective '" + head + "'", head_offset);
    }
    if (tok_.kind != Token::Close) fail("expected ')'");
    advance();
    return out;
  }

  void expect_end() {
    if (tok_.kind != Token::End) fail("trailing input");
  }

 private:
  std::string word(const char* what) {
    if (tok_.kind != Token::Word) fail(std::string("expected ") + what);
    std::string w = tok_.text;
    advance();
    return w;
  }

  void advance() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) {
      tok_ = {Token::End, "", pos_};
      return;
    }
    char c = text_[pos_];
    if (c == '(' || c == ')') {
      tok_ = {c == '(' ? Token::Open : Token::Close, std::string(1, c), pos_};
      ++pos_;
      return;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      ++pos_;
    }
    tok_ = {Token::Word, text_.substr(start, pos_ - start), start};
  }

  [[noreturn]] void fail(const std::string& what) {
    fail_at(tok_.kind == Token::End ? what + " (unexpected end of input)" : what, tok_.offset);
  }

  [[noreturn]] void fail_at(const std::string& what, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(what, offset, line, col);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token tok_{Token::End, "", 0};
};

void print_into(const Formula& f, std::string& out) {
  switch (f->op) {
    case Op::True: out += "(true)"; return;
    case Op::False: out += "(false)"; return;
    case Op::Atom:
      out += "(rel " + f->name;
      for (const auto& v : f->vars) out += " " + v;
      out += ")";
      return;
    case Op::Eq: out += "(eq " + f->vars[0] + " " + f->vars[1] + ")"; return;
    case Op::Not:
      out += "(not ";
      print_into(f->kids[0], out);
      out += ")";
      return;
    case Op::And:
    case Op::Or:
      out += f->op == Op::And ? "(and" : "(or";
      for (const auto& k : f->kids) {
        out += " ";
        print_into(k, out);
      }
      out += ")";
      return;
    case Op::Exists:
    case Op::Forall:
      out += (f->op == Op::Exists ? "(exists " : "(forall ") + f->name + " ";
      print_into(f->kids[0], out);
      out += ")";
      return;
  }
}

void free_into(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f->op) {
    case Op::Atom:
    case Op::Eq:
      for (const auto& v : f->vars)
        if (!bound.count(v)) out.insert(v);
      return;
    case Op::Exists:
    case Op::Forall: {
      bool fresh = bound.insert(f->name).second;
      free_into(f->kids[0], bound, out);
      if (fresh) bound.erase(f->name);
      return;
    }
    default:
      for (const auto& k : f->kids) free_into(k, bound, out);
  }
}

}  // namespace

Formula parse_formula(const std::string& text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (a->op != b->op || a->name != b->name || a->vars != b->vars || a->kids.size() != b->kids.size()) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!formula_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  free_into(f, bound, out);
  return out;
}

std::set<std::string> all_vars(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    out.insert(g->vars.begin(), g->vars.end());
    if (g->op == Op::Exists || g->op == Op::Forall) out.insert(g->name);
    for (const auto& k : g->kids) rec(k);
  };
  rec(f);
  return out;
}

std::set<std::string> symbols_used(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    if (g->op == Op::Atom) out.insert(g->name);
    for (const auto& k : g->kids) rec(k);
  };
  rec(f);
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& k : f->kids) d = std::max(d, quantifier_depth(k));
  return d + ((f->op == Op::Exists || f->op == Op::Forall) ? 1 : 0);
}

bool is_quantifier_free(const Formula& f) { return quantifier_depth(f) == 0; }

void check_formula(const Formula& f, const Language& lang) {
  if (f->op == Op::Atom) {
    auto i = lang.find(f->name);
    if (!i) throw input_error("unknown relation symbol '" + f->name + "'");
    if (lang[*i].arity != f->vars.size())
      throw input_error("symbol '" + f->name + "' has arity " + std::to_string(lang[*i].arity) + " but is applied to " +
                        std::to_string(f->vars.size()) + " variables");
  }
  for (const auto& k : f->kids) check_formula(k, lang);
}

std::string fresh_var(const std::set<std::string>& used, const std::string& base) {
  if (!used.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string v = base + std::to_string(i);
    if (!used.count(v)) return v;
  }
}

Formula rename_free(const Formula& f, const std::map<std::string, std::string>& renaming) {
  if (renaming.empty()) return f;
  switch (f->op) {
    case Op::True:
    case Op::False: return f;
    case Op::Atom:
    case Op::Eq: {
      std::vector<std::string> vars = f->vars;
      bool changed = false;
      for (auto& v : vars) {
        auto it = renaming.find(v);
        if (it != renaming.end()) {
          v = it->second;
          changed = true;
        }
      }
      if (!changed) return f;
      return make(f->op, f->name, std::move(vars));
    }
    case Op::Not:
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f->kids) kids.push_back(rename_free(k, renaming));
      return make(f->op, {}, {}, std::move(kids));
    }
    case Op::Exists:
    case Op::Forall: {
      std::map<std::string, std::string> inner = renaming;
      inner.erase(f->name);
      const std::set<std::string> body_free = free_vars(f->kids[0]);
      // Only renamings that actually apply inside the body matter for capture.
      bool capture = false;
      for (const auto& [from, to] : inner)
        if (to == f->name && body_free.count(from)) capture = true;
      std::string v = f->name;
      if (capture) {
        std::set<std::string> used = all_vars(f->kids[0]);
        for (const auto& [from, to] : inner) {
          used.insert(from);
          used.insert(to);
        }
        v = fresh_var(used, f->name);
        inner[f->name] = v;
      }
      Formula body = rename_free(f->kids[0], inner);
      return make(f->op, v, {}, {body});
    }
  }
  return f;
}

// ---------------------------------------------------------------- Theory

Theory::Theory() : sentence(f_true()) {}

Theory::Theory(Language lang, Formula s) : language(std::move(lang)), sentence(std::move(s)) {
  check_formula(sentence, language);
  auto fv = free_vars(sentence);
  if (!fv.empty()) throw input_error("sentence has unbound variable '" + *fv.begin() + "'");
}

std::string Theory::to_string() const {
  return "language: " + language.to_string() + "\nsentence: " + print(sentence) + "\n";
}

}  // namespace structo
