#include <functional>
#include <optional>
#include <stdexcept>

#include "tg/normalize.hpp"

namespace tg {

namespace {

// floor(t) as a linear form, when the shape of t allows one: integer-valued
// forms, constants, and x + c / frac(x) + c with integer c.
std::optional<LinearForm> linear_floor(const LinearForm& t) {
  if (t.is_integer_valued()) return t;
  if (t.is_constant()) return LinearForm(Rational(t.constant().floor()));
  if (t.constant().is_integer() && t.coeffs().size() == 1) {
    const auto& [v, k] = *t.coeffs().begin();
    if (k == Rational(1) && v.part == VarPart::Whole) {
      LinearForm out = LinearForm::floor_of(v.name);
      out.add_constant(t.constant());
      return out;
    }
    if (k == Rational(1) && v.part == VarPart::Frac) {
      return LinearForm(t.constant());
    }
  }
  return std::nullopt;
}

struct Replacer {
  std::string var;
  LinearForm term;
  std::set<std::string> used;
  int fresh_counter = 0;

  std::string fresh() {
    for (;;) {
      std::string name = "u" + std::to_string(++fresh_counter);
      if (!used.count(name)) {
        used.insert(name);
        return name;
      }
    }
  }

  // Rewrites one linear form; when floor/frac of the substituted term cannot
  // be expressed linearly, uses `guard_floor` (the fresh variable standing
  // for floor(term)) which the caller then binds.
  LinearForm rewrite(const LinearForm& f, const std::optional<LinearForm>& floor_term) {
    LinearForm out;
    out.add_constant(f.constant());
    for (const auto& [v, c] : f.coeffs()) {
      if (v.name != var) {
        out.add_term(v, c);
        continue;
      }
      switch (v.part) {
        case VarPart::Whole:
          out += term.scaled(c);
          break;
        case VarPart::Floor:
          out += floor_term->scaled(c);
          break;
        case VarPart::Frac:
          out += (term - *floor_term).scaled(c);
          break;
      }
    }
    return out;
  }

  bool atom_mentions(const Atom& a) const {
    if (const auto* c = std::get_if<CmpAtom>(&a)) {
      return c->lhs.mentions(var) || c->rhs.mentions(var);
    }
    if (const auto* z = std::get_if<InZAtom>(&a)) return z->term.mentions(var);
    if (const auto* l = std::get_if<InLAtom>(&a)) return l->term.mentions(var);
    if (const auto* g = std::get_if<CongAtom>(&a)) return g->term.mentions(var);
    return false;
  }

  bool atom_needs_floor(const Atom& a) const {
    auto needs = [&](const LinearForm& f) {
      return !f.coeff({var, VarPart::Floor}).is_zero() || !f.coeff({var, VarPart::Frac}).is_zero();
    };
    if (const auto* c = std::get_if<CmpAtom>(&a)) return needs(c->lhs) || needs(c->rhs);
    if (const auto* z = std::get_if<InZAtom>(&a)) return needs(z->term);
    if (const auto* l = std::get_if<InLAtom>(&a)) return needs(l->term);
    if (const auto* g = std::get_if<CongAtom>(&a)) return needs(g->term);
    return false;
  }

  Formula rewrite_atom(const Atom& a) {
    if (!atom_mentions(a)) return Formula::atom(a);
    std::optional<LinearForm> floor_term;
    std::optional<std::string> guard_var;
    if (atom_needs_floor(a)) {
      floor_term = linear_floor(term);
      if (!floor_term) {
        guard_var = fresh();
        floor_term = LinearForm::whole(*guard_var);
      }
    }
    Atom out = a;
    if (auto* c = std::get_if<CmpAtom>(&out)) {
      c->lhs = rewrite(c->lhs, floor_term);
      c->rhs = rewrite(c->rhs, floor_term);
    } else if (auto* z = std::get_if<InZAtom>(&out)) {
      z->term = rewrite(z->term, floor_term);
    } else if (auto* l = std::get_if<InLAtom>(&out)) {
      l->term = rewrite(l->term, floor_term);
    } else if (auto* g = std::get_if<CongAtom>(&out)) {
      g->term = rewrite(g->term, floor_term);
    }
    Formula base = Formula::atom(std::move(out));
    if (!guard_var) return base;
    // exists u. Z(u) & u <= term & term < u + 1 & atom
    LinearForm u = LinearForm::whole(*guard_var);
    LinearForm succ = u;
    succ.add_constant(Rational(1));
    return Formula::exists(*guard_var,
                           Formula::conj_all({Formula::atom(InZAtom{u}),
                                              Formula::atom(CmpAtom{u, Rel::Le, term}),
                                              Formula::atom(CmpAtom{term, Rel::Lt, succ}),
                                              std::move(base)}));
  }

  // Special atoms that mention the variable are lowered to primitive atoms
  // first; a later normalize pass recovers the special shape.
  Formula rewrite_special(const SpecialAtom& a) {
    if (const auto* f = std::get_if<FracGeAtom>(&a)) {
      if (!f->coeffs.count(var)) return Formula::special(a);
      LinearForm lhs;
      for (const auto& [v, c] : f->coeffs) lhs.add_term({v, VarPart::Frac}, Rational(c));
      return rewrite_atom(CmpAtom{lhs, Rel::Ge, LinearForm(Rational(f->bound))});
    }
    if (const auto* f2 = std::get_if<FloorGeAtom>(&a)) {
      if (!f2->coeffs.count(var)) return Formula::special(a);
      LinearForm lhs;
      for (const auto& [v, c] : f2->coeffs) lhs.add_term({v, VarPart::Floor}, Rational(c));
      return rewrite_atom(CmpAtom{lhs, Rel::Ge, LinearForm(Rational(f2->bound))});
    }
    if (const auto* c = std::get_if<FloorCongAtom>(&a)) {
      if (c->var != var) return Formula::special(a);
      return rewrite_atom(CongAtom{LinearForm::floor_of(c->var), c->residue, c->modulus});
    }
    if (const auto* l = std::get_if<LinInLAtom>(&a)) {
      if (!l->coeffs.count(var)) return Formula::special(a);
      LinearForm t;
      for (const auto& [v, c] : l->coeffs) t.add_term({v, VarPart::Whole}, Rational(c));
      return rewrite_atom(InLAtom{t});
    }
    return Formula::special(a);
  }

  Formula walk(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
        return f;
      case Formula::Kind::Atom:
        return rewrite_atom(f.atom_ref());
      case Formula::Kind::Special:
        return rewrite_special(f.special_ref());
      case Formula::Kind::Not:
        return Formula::negation(walk(f.child()));
      case Formula::Kind::And:
        return Formula::conj(walk(f.left()), walk(f.right()));
      case Formula::Kind::Or:
        return Formula::disj(walk(f.left()), walk(f.right()));
      case Formula::Kind::Implies:
        return Formula::implies(walk(f.left()), walk(f.right()));
      case Formula::Kind::Iff:
        return Formula::iff(walk(f.left()), walk(f.right()));
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        if (f.qvar() == var) return f;  // binding occludes
        Formula body = f.body();
        std::string name = f.qvar();
        if (term.mentions(name)) {
          // binder would capture a variable of the term: alpha-rename
          std::string renamed = fresh();
          Replacer alpha{name, LinearForm::whole(renamed), used, 0};
          body = alpha.walk(body);
          name = renamed;
        }
        Formula new_body = walk(body);
        return f.kind() == Formula::Kind::Exists ? Formula::exists(name, std::move(new_body))
                                                 : Formula::forall(name, std::move(new_body));
      }
    }
    return f;
  }
};

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const LinearForm& term) {
  if (term.mentions(var)) {
    throw std::invalid_argument("substitute: term mentions the substituted variable");
  }
  Replacer r;
  r.var = var;
  r.term = term;
  r.used = all_var_names(f);
  for (const auto& n : term.var_names()) r.used.insert(n);
  return r.walk(f);
}

}  // namespace tg
