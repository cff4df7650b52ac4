#include "tg/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace tg {

namespace {

enum class Tok {
  End, Ident, Number, Plus, Minus, Star, Slash, LParen, RParen,
  Lt, Le, Eq, Ge, Gt, Tilde, Amp, Pipe, Arrow, Iff, Dot, Colon
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool is_keyword(const std::string& s) {
  return s == "not" || s == "exists" || s == "forall" || s == "true" || s == "false" ||
         s == "mod" || s == "floor" || s == "frac" || s == "Z" || s == "L" || s == "QisL";
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t pos = 0;
  int line = 1, col = 1;
  auto push = [&](Tok k, std::string text, int c) { out.push_back({k, std::move(text), line, c}); };
  while (pos < s.size()) {
    char c = s[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
      continue;
    }
    int start_col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        ++pos;
        ++col;
      }
      push(Tok::Number, s.substr(start, pos - start), start_col);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
        ++pos;
        ++col;
      }
      push(Tok::Ident, s.substr(start, pos - start), start_col);
      continue;
    }
    auto two = [&](const char* pat, Tok k) {
      if (pos + 1 < s.size() && s[pos + 1] == pat[1]) {
        push(k, pat, start_col);
        pos += 2;
        col += 2;
        return true;
      }
      return false;
    };
    switch (c) {
      case '+': push(Tok::Plus, "+", start_col); break;
      case '*': push(Tok::Star, "*", start_col); break;
      case '/': push(Tok::Slash, "/", start_col); break;
      case '(': push(Tok::LParen, "(", start_col); break;
      case ')': push(Tok::RParen, ")", start_col); break;
      case '~': push(Tok::Tilde, "~", start_col); break;
      case '&': push(Tok::Amp, "&", start_col); break;
      case '|': push(Tok::Pipe, "|", start_col); break;
      case '.': push(Tok::Dot, ".", start_col); break;
      case ':': push(Tok::Colon, ":", start_col); break;
      case '=': push(Tok::Eq, "=", start_col); break;
      case '-':
        if (two("->", Tok::Arrow)) continue;
        push(Tok::Minus, "-", start_col);
        break;
      case '<':
        if (pos + 2 < s.size() && s[pos + 1] == '-' && s[pos + 2] == '>') {
          push(Tok::Iff, "<->", start_col);
          pos += 3;
          col += 3;
          continue;
        }
        if (two("<=", Tok::Le)) continue;
        push(Tok::Lt, "<", start_col);
        break;
      case '>':
        if (two(">=", Tok::Ge)) continue;
        push(Tok::Gt, ">", start_col);
        break;
      default:
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    ++pos;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// A parsed term: linear form plus pending guards from floor/frac applied to
// compound arguments. Each guard introduces a fresh variable u constrained
// by Z(u) & u <= arg & arg < u + 1.
struct Guard {
  std::string var;
  LinearForm arg;
};

struct Term {
  LinearForm form;
  std::vector<Guard> guards;
};

class Parser {
public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {
    for (const auto& t : toks_) {
      if (t.kind == Tok::Ident) used_names_.insert(t.text);
    }
  }

  Formula run() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return rename_unique(f);
  }

private:
  const Token& peek() const { return toks_[idx_]; }
  Token take() { return toks_[idx_++]; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(peek().line, peek().col, msg);
  }

  Token expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what + ", found '" + peek().text + "'");
    return take();
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++idx_;
    return true;
  }

  bool at_keyword(const std::string& kw) {
    return peek().kind == Tok::Ident && peek().text == kw;
  }

  std::string fresh_var() {
    for (;;) {
      std::string name = "u" + std::to_string(++fresh_counter_);
      if (!used_names_.count(name)) {
        used_names_.insert(name);
        return name;
      }
    }
  }

  // Right-associative -> and <->; & binds tighter than |.
  Formula formula() {
    Formula lhs = imp();
    if (accept(Tok::Iff)) return Formula::iff(std::move(lhs), formula());
    return lhs;
  }

  Formula imp() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(std::move(lhs), imp());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Pipe)) f = Formula::disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conj(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (at_keyword("not")) {
      take();
      return Formula::negation(unary());
    }
    if (at_keyword("exists") || at_keyword("forall")) return quantifier();
    if (peek().kind == Tok::LParen) {
      take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_keyword("true")) {
      take();
      return Formula::truth();
    }
    if (at_keyword("false")) {
      take();
      return Formula::falsity();
    }
    return atom();
  }

  Formula quantifier() {
    bool is_exists = take().text == "exists";
    Token v = expect(Tok::Ident, "variable");
    check_var_name(v);
    std::optional<char> sort;
    if (accept(Tok::Colon)) {
      Token s = expect(Tok::Ident, "sort 'Z' or 'L'");
      if (s.text != "Z" && s.text != "L") throw ParseError(s.line, s.col, "sort must be Z or L");
      sort = s.text[0];
    }
    expect(Tok::Dot, "'.'");
    Formula body = formula();
    if (sort) {
      LinearForm x = LinearForm::whole(v.text);
      Formula guard = *sort == 'Z' ? Formula::atom(InZAtom{x}) : Formula::atom(InLAtom{x});
      body = Formula::conj(std::move(guard), std::move(body));
    }
    return is_exists ? Formula::exists(v.text, std::move(body))
                     : Formula::forall(v.text, std::move(body));
  }

  void check_var_name(const Token& t) {
    if (is_keyword(t.text) || !std::islower(static_cast<unsigned char>(t.text[0]))) {
      throw ParseError(t.line, t.col, "not a valid variable name: " + t.text);
    }
  }

  Formula atom() {
    if (at_keyword("QisL")) {
      take();
      return Formula::atom(QIsLAtom{});
    }
    if (at_keyword("Z") || at_keyword("L")) {
      std::string pred = take().text;
      expect(Tok::LParen, "'('");
      Term t = term();
      expect(Tok::RParen, "')'");
      Atom a = pred == "Z" ? Atom(InZAtom{t.form}) : Atom(InLAtom{t.form});
      return with_guards(std::move(t.guards), Formula::atom(std::move(a)));
    }
    Term lhs = term();
    Token op = take();
    switch (op.kind) {
      case Tok::Lt:
      case Tok::Le:
      case Tok::Eq:
      case Tok::Ge:
      case Tok::Gt: {
        Rel rel = op.kind == Tok::Lt   ? Rel::Lt
                  : op.kind == Tok::Le ? Rel::Le
                  : op.kind == Tok::Eq ? Rel::Eq
                  : op.kind == Tok::Ge ? Rel::Ge
                                       : Rel::Gt;
        Term rhs = term();
        std::vector<Guard> gs = std::move(lhs.guards);
        gs.insert(gs.end(), rhs.guards.begin(), rhs.guards.end());
        return with_guards(std::move(gs),
                           Formula::atom(CmpAtom{std::move(lhs.form), rel, std::move(rhs.form)}));
      }
      case Tok::Tilde: {
        Rational k = rat_literal();
        if (!k.is_integer()) throw ParseError(op.line, op.col, "congruence residue must be an integer");
        if (!at_keyword("mod")) fail("expected 'mod'");
        take();
        Token m = expect(Tok::Number, "modulus");
        Int modulus(m.text);
        if (modulus <= 0 || k.num() < 0 || k.num() >= modulus) {
          throw ParseError(op.line, op.col, "congruence requires 0 <= k < m with m > 0");
        }
        return with_guards(std::move(lhs.guards),
                           Formula::atom(CongAtom{std::move(lhs.form), k.num(), modulus}));
      }
      default:
        throw ParseError(op.line, op.col, "expected a relation after term");
    }
  }

  Formula with_guards(std::vector<Guard> guards, Formula f) {
    // Wrap back to front: an earlier guard may be referenced by a later one.
    for (auto it = guards.rbegin(); it != guards.rend(); ++it) {
      LinearForm u = LinearForm::whole(it->var);
      std::vector<Formula> parts;
      parts.push_back(Formula::atom(InZAtom{u}));
      parts.push_back(Formula::atom(CmpAtom{u, Rel::Le, it->arg}));
      LinearForm succ = u;
      succ.add_constant(Rational(1));
      parts.push_back(Formula::atom(CmpAtom{it->arg, Rel::Lt, succ}));
      parts.push_back(std::move(f));
      f = Formula::exists(it->var, Formula::conj_all(parts));
    }
    return f;
  }

  Rational rat_literal() {
    bool negative = accept(Tok::Minus);
    Token n = expect(Tok::Number, "number");
    Int num(n.text);
    Int den(1);
    if (accept(Tok::Slash)) {
      Token d = expect(Tok::Number, "denominator");
      den = Int(d.text);
      if (den == 0) throw ParseError(d.line, d.col, "zero denominator");
    }
    if (negative) num = -num;
    return Rational(num, den);
  }

  Term term() {
    Term t = primary();
    for (;;) {
      if (accept(Tok::Plus)) {
        Term r = primary();
        t.form += r.form;
        t.guards.insert(t.guards.end(), r.guards.begin(), r.guards.end());
      } else if (peek().kind == Tok::Minus) {
        take();
        Term r = primary();
        t.form -= r.form;
        t.guards.insert(t.guards.end(), r.guards.begin(), r.guards.end());
      } else {
        return t;
      }
    }
  }

  Term primary() {
    if (peek().kind == Tok::Minus || peek().kind == Tok::Number) {
      Rational r = rat_literal();
      if (accept(Tok::Star)) {
        Term u = unit();
        u.form = u.form.scaled(r);
        return u;
      }
      return {LinearForm(r), {}};
    }
    return unit();
  }

  Term unit() {
    Token t = expect(Tok::Ident, "variable, floor or frac");
    if (t.text == "floor" || t.text == "frac") {
      bool is_floor = t.text == "floor";
      expect(Tok::LParen, "'('");
      Term inner = term();
      expect(Tok::RParen, "')'");
      return apply_part(is_floor, std::move(inner));
    }
    check_var_name(t);
    return {LinearForm::whole(t.text), {}};
  }

  // floor/frac of a term. Shapes with a definable floor are rewritten in
  // place; compound arguments introduce a fresh guarded integer variable.
  Term apply_part(bool is_floor, Term inner) {
    const LinearForm& f = inner.form;
    // floor(g + c) = floor(g) + c and frac(g + c) = frac(g) for integer c, so
    // a single component with unit coefficient plus an integer constant stays
    // linear. Integer-valued forms are their own floor.
    if (f.is_integer_valued()) {
      if (is_floor) return inner;
      return {LinearForm(), std::move(inner.guards)};
    }
    if (f.is_constant()) {
      Rational c = f.constant();
      LinearForm out(is_floor ? Rational(c.floor()) : c.frac());
      return {std::move(out), std::move(inner.guards)};
    }
    if (f.constant().is_integer() && f.coeffs().size() == 1) {
      const auto& [v, k] = *f.coeffs().begin();
      if (k == Rational(1) && v.part != VarPart::Floor) {
        Rational c = f.constant();
        LinearForm out = LinearForm::var({v.name, VarPart::Frac});
        if (is_floor) {
          // floor(x + c) = floor(x) + c; floor(frac(x) + c) = c
          out = v.part == VarPart::Whole ? LinearForm::floor_of(v.name) : LinearForm();
          out.add_constant(c);
        }
        return {std::move(out), std::move(inner.guards)};
      }
    }
    std::string u = fresh_var();
    inner.guards.push_back(Guard{u, f});
    LinearForm uf = LinearForm::whole(u);
    if (is_floor) return {std::move(uf), std::move(inner.guards)};
    return {inner.form - uf, std::move(inner.guards)};
  }

  // Renames shadowed binders so that every bound variable is unique and no
  // binder reuses a free name.
  Formula rename_unique(const Formula& f) {
    std::set<std::string> taken = free_vars(f);
    std::map<std::string, std::vector<std::string>> active;
    return rename_rec(f, taken, active);
  }

  std::string fresh_rename(const std::string& base, std::set<std::string>& taken) {
    for (int i = 2;; ++i) {
      std::string cand = base + "_" + std::to_string(i);
      if (!taken.count(cand) && !used_names_.count(cand)) {
        taken.insert(cand);
        return cand;
      }
    }
  }

  LinearForm rename_form(const LinearForm& f,
                         const std::map<std::string, std::vector<std::string>>& active) {
    LinearForm out;
    out.add_constant(f.constant());
    for (const auto& [v, c] : f.coeffs()) {
      auto it = active.find(v.name);
      const std::string& name =
          (it != active.end() && !it->second.empty()) ? it->second.back() : v.name;
      out.add_term({name, v.part}, c);
    }
    return out;
  }

  Formula rename_rec(const Formula& f, std::set<std::string>& taken,
                     std::map<std::string, std::vector<std::string>>& active) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
      case Formula::Kind::Special:
        return f;
      case Formula::Kind::Atom: {
        const Atom& a = f.atom_ref();
        if (const auto* c = std::get_if<CmpAtom>(&a)) {
          return Formula::atom(
              CmpAtom{rename_form(c->lhs, active), c->rel, rename_form(c->rhs, active)});
        }
        if (const auto* z = std::get_if<InZAtom>(&a)) {
          return Formula::atom(InZAtom{rename_form(z->term, active)});
        }
        if (const auto* l = std::get_if<InLAtom>(&a)) {
          return Formula::atom(InLAtom{rename_form(l->term, active)});
        }
        if (const auto* g = std::get_if<CongAtom>(&a)) {
          return Formula::atom(CongAtom{rename_form(g->term, active), g->residue, g->modulus});
        }
        return f;
      }
      case Formula::Kind::Not:
        return Formula::negation(rename_rec(f.child(), taken, active));
      case Formula::Kind::And:
        return Formula::conj(rename_rec(f.left(), taken, active),
                             rename_rec(f.right(), taken, active));
      case Formula::Kind::Or:
        return Formula::disj(rename_rec(f.left(), taken, active),
                             rename_rec(f.right(), taken, active));
      case Formula::Kind::Implies:
        return Formula::implies(rename_rec(f.left(), taken, active),
                                rename_rec(f.right(), taken, active));
      case Formula::Kind::Iff:
        return Formula::iff(rename_rec(f.left(), taken, active),
                            rename_rec(f.right(), taken, active));
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        std::string name = f.qvar();
        if (taken.count(name)) {
          name = fresh_rename(name, taken);
        } else {
          taken.insert(name);
        }
        active[f.qvar()].push_back(name);
        Formula body = rename_rec(f.body(), taken, active);
        active[f.qvar()].pop_back();
        return f.kind() == Formula::Kind::Exists ? Formula::exists(name, std::move(body))
                                                 : Formula::forall(name, std::move(body));
      }
    }
    return f;
  }

  std::vector<Token> toks_;
  size_t idx_ = 0;
  std::set<std::string> used_names_;
  int fresh_counter_ = 0;
};

}  // namespace

Formula parse(const std::string& text) {
  Parser p(text);
  return p.run();
}

}  // namespace tg
