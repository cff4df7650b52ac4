#include "tg/normalize.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tg {

namespace {

struct SplitParts {
  std::map<std::string, Int> floor_coeffs;
  std::map<std::string, Int> frac_coeffs;
  Int constant;
};

// Scales the form by the lcm of its denominators and splits it into integer
// floor/frac coefficient maps. The form must not contain whole components.
SplitParts scale_and_split(const LinearForm& f) {
  Int lambda = f.denominator_lcm();
  LinearForm g = f.scaled(Rational(lambda));
  SplitParts out;
  out.constant = g.constant().num();
  for (const auto& [v, c] : g.coeffs()) {
    (v.part == VarPart::Floor ? out.floor_coeffs : out.frac_coeffs)[v.name] = c.num();
  }
  return out;
}

Int neg_coeff_sum(const std::map<std::string, Int>& coeffs) {
  Int s = 0;
  for (const auto& [v, c] : coeffs) {
    if (c < 0) s += c;
  }
  return s;
}

Int pos_coeff_sum(const std::map<std::string, Int>& coeffs) {
  Int s = 0;
  for (const auto& [v, c] : coeffs) {
    if (c > 0) s += c;
  }
  return s;
}

std::map<std::string, Int> negated(const std::map<std::string, Int>& coeffs) {
  std::map<std::string, Int> out;
  for (const auto& [v, c] : coeffs) out.emplace(v, -c);
  return out;
}

// sum frac_coeffs * frac(x) == value, denominators cleared.
Formula frac_eq_value(const std::map<std::string, Int>& frac, const Rational& value) {
  Int lambda = value.den();
  std::map<std::string, Int> scaled;
  for (const auto& [v, c] : frac) scaled.emplace(v, c * lambda);
  Int rhs = (value * Rational(lambda)).num();
  return Formula::conj_all({make_frac_ge(scaled, rhs), make_frac_ge(negated(scaled), -rhs)});
}

// Multi-variable congruence sum a_v*floor(v) + b ≡ r (mod m), expanded into a
// disjunction of per-variable floor congruences over residue tuples.
Formula multi_cong(const std::map<std::string, Int>& coeffs, const Int& b, const Int& r,
                   const Int& m) {
  if (m == 1) return Formula::truth();
  std::vector<std::string> vars;
  for (const auto& [v, c] : coeffs) vars.push_back(v);
  std::vector<Formula> disjuncts;
  std::vector<Int> tuple(vars.size(), 0);
  std::function<void(size_t, Int)> rec = [&](size_t i, Int acc) {
    if (i == vars.size()) {
      if (mod_floor(acc + b - r, m) == 0) {
        std::vector<Formula> cs;
        for (size_t j = 0; j < vars.size(); ++j) cs.push_back(make_floor_cong(vars[j], tuple[j], m));
        disjuncts.push_back(Formula::conj_all(cs));
      }
      return;
    }
    for (Int k = 0; k < m; ++k) {
      tuple[i] = k;
      rec(i + 1, acc + coeffs.at(vars[i]) * k);
    }
  };
  rec(0, 0);
  return Formula::disj_all(disjuncts);
}

// d >= 0 for a form over floor/frac components.
Formula atomize_ge(const LinearForm& d) {
  SplitParts p = scale_and_split(d);
  if (p.frac_coeffs.empty()) return make_floor_ge(p.floor_coeffs, -p.constant);
  if (p.floor_coeffs.empty()) return make_frac_ge(p.frac_coeffs, -p.constant);
  // P + F >= 0 with P integer-valued iff P + floor(F) >= 0; enumerate the
  // attainable values of floor(F).
  Int lo = neg_coeff_sum(p.frac_coeffs);
  Int hi = pos_coeff_sum(p.frac_coeffs);
  std::vector<Formula> disjuncts;
  for (Int k = lo; k <= hi; ++k) {
    disjuncts.push_back(Formula::conj_all({
        make_frac_ge(p.frac_coeffs, k),
        Formula::negation(make_frac_ge(p.frac_coeffs, k + 1)),
        make_floor_ge(p.floor_coeffs, -p.constant - k),
    }));
  }
  return Formula::disj_all(disjuncts);
}

// d == 0 for a form over floor/frac components.
Formula atomize_eq(const LinearForm& d) {
  SplitParts p = scale_and_split(d);
  if (p.frac_coeffs.empty() && p.floor_coeffs.empty()) return Formula::boolean(p.constant == 0);
  if (p.frac_coeffs.empty()) {
    return Formula::conj_all({make_floor_ge(p.floor_coeffs, -p.constant),
                              make_floor_ge(negated(p.floor_coeffs), p.constant)});
  }
  if (p.floor_coeffs.empty()) {
    return Formula::conj_all({make_frac_ge(p.frac_coeffs, -p.constant),
                              make_frac_ge(negated(p.frac_coeffs), p.constant)});
  }
  Int lo = neg_coeff_sum(p.frac_coeffs);
  Int hi = pos_coeff_sum(p.frac_coeffs);
  std::vector<Formula> disjuncts;
  for (Int k = lo; k <= hi; ++k) {
    disjuncts.push_back(Formula::conj_all({
        make_frac_ge(p.frac_coeffs, k),
        make_frac_ge(negated(p.frac_coeffs), -k),
        make_floor_ge(p.floor_coeffs, -p.constant - k),
        make_floor_ge(negated(p.floor_coeffs), p.constant + k),
    }));
  }
  return Formula::disj_all(disjuncts);
}

// term in Z. Splits the term into a (1/M)Z-valued floor part and a bounded
// frac part, cases on the floor part's residue mod M and on the handful of
// integers the frac part can make up.
Formula atomize_in_z(const LinearForm& term) {
  LinearForm t = term.split_whole();
  std::map<std::string, Int> floor_m;  // coefficients of M*D
  std::map<std::string, Int> frac_c;   // rational frac coefficients, scaled separately
  LinearForm frac_part;
  LinearForm floor_part(t.constant());
  for (const auto& [v, c] : t.coeffs()) {
    if (v.part == VarPart::Floor) {
      floor_part.add_term(v, c);
    } else {
      frac_part.add_term(v, c);
    }
  }
  Int m = floor_part.denominator_lcm();
  LinearForm md = floor_part.scaled(Rational(m));
  for (const auto& [v, c] : md.coeffs()) floor_m[v.name] = c.num();
  Int md_const = md.constant().num();

  Int mu = frac_part.denominator_lcm();
  LinearForm muh = frac_part.scaled(Rational(mu));
  for (const auto& [v, c] : muh.coeffs()) frac_c[v.name] = c.num();
  // Attainable hull of the frac sum H: (neg_sum/mu, pos_sum/mu).
  Rational h_lo = Rational(neg_coeff_sum(frac_c), mu);
  Rational h_hi = Rational(pos_coeff_sum(frac_c), mu);

  std::vector<Formula> disjuncts;
  for (Int r = 0; r < m; ++r) {
    Formula cong = multi_cong(floor_m, md_const, r, m);
    if (cong.is_false()) continue;
    // Need H + r/m to be an integer k, i.e. H = k - r/m within H's hull.
    Rational shift(r, m);
    std::vector<Formula> values;
    for (Int k = (h_lo + shift).ceil(); Rational(k) <= h_hi + shift; ++k) {
      // frac_c holds mu*H, so H = k - shift reads as sum frac_c = mu*(k - shift).
      values.push_back(frac_eq_value(frac_c, (Rational(k) - shift) * Rational(mu)));
    }
    disjuncts.push_back(Formula::conj_all({cong, Formula::disj_all(values)}));
  }
  return Formula::disj_all(disjuncts);
}

// term in L: frac components and constants always lie in L, floors differ
// from wholes by fracs, so only the whole-variable image matters.
Formula atomize_in_l(const LinearForm& term) {
  std::map<std::string, Rational> whole;
  for (const auto& [v, c] : term.coeffs()) {
    if (v.part == VarPart::Frac) continue;
    auto [it, inserted] = whole.emplace(v.name, c);
    if (!inserted) it->second += c;
  }
  Int lambda = 1;
  for (const auto& [v, c] : whole) lambda = lcm(lambda, c.den());
  std::map<std::string, Int> coeffs;
  for (const auto& [v, c] : whole) {
    Rational s = c * Rational(lambda);
    if (!s.is_zero()) coeffs.emplace(v, s.num());
  }
  return make_lin_in_l(std::move(coeffs));
}

Formula atomize_atom(const Atom& a) {
  if (const auto* c = std::get_if<CmpAtom>(&a)) {
    LinearForm d = (c->lhs - c->rhs).split_whole();
    switch (c->rel) {
      case Rel::Ge: return atomize_ge(d);
      case Rel::Le: return atomize_ge(-d);
      case Rel::Gt: return Formula::negation(atomize_ge(-d));
      case Rel::Lt: return Formula::negation(atomize_ge(d));
      case Rel::Eq: return atomize_eq(d);
    }
  }
  if (const auto* z = std::get_if<InZAtom>(&a)) return atomize_in_z(z->term);
  if (const auto* l = std::get_if<InLAtom>(&a)) return atomize_in_l(l->term);
  if (const auto* g = std::get_if<CongAtom>(&a)) {
    LinearForm t = g->term;
    t.add_constant(Rational(-g->residue));
    return atomize_in_z(t.scaled(Rational(Int(1), g->modulus)));
  }
  return Formula::special(QIsLAtom{});
}

// --- normalize ---

// Recognizes atoms that are already in a special shape; returns nothing when
// the atom genuinely mixes components and needs the full atomize treatment.
std::optional<Formula> normalize_atom(const Atom& a) {
  if (const auto* c = std::get_if<CmpAtom>(&a)) {
    LinearForm d = c->lhs - c->rhs;
    if (d.has_part(VarPart::Whole)) return std::nullopt;
    bool has_floor = d.has_part(VarPart::Floor);
    bool has_frac = d.has_part(VarPart::Frac);
    if (has_floor && has_frac) return std::nullopt;
    SplitParts p = scale_and_split(d);
    if (!has_floor && !has_frac) {
      int sign = p.constant > 0 ? 1 : p.constant < 0 ? -1 : 0;
      switch (c->rel) {
        case Rel::Lt: return Formula::boolean(sign < 0);
        case Rel::Le: return Formula::boolean(sign <= 0);
        case Rel::Eq: return Formula::boolean(sign == 0);
        case Rel::Ge: return Formula::boolean(sign >= 0);
        case Rel::Gt: return Formula::boolean(sign > 0);
      }
    }
    if (has_frac) {
      switch (c->rel) {
        case Rel::Ge: return make_frac_ge(p.frac_coeffs, -p.constant);
        case Rel::Le: return make_frac_ge(negated(p.frac_coeffs), p.constant);
        case Rel::Gt: return Formula::negation(make_frac_ge(negated(p.frac_coeffs), p.constant));
        case Rel::Lt: return Formula::negation(make_frac_ge(p.frac_coeffs, -p.constant));
        case Rel::Eq:
          return Formula::conj_all({make_frac_ge(p.frac_coeffs, -p.constant),
                                    make_frac_ge(negated(p.frac_coeffs), p.constant)});
      }
    }
    // floor-only: strict bounds shift by one since the value is an integer
    switch (c->rel) {
      case Rel::Ge: return make_floor_ge(p.floor_coeffs, -p.constant);
      case Rel::Gt: return make_floor_ge(p.floor_coeffs, -p.constant + 1);
      case Rel::Le: return make_floor_ge(negated(p.floor_coeffs), p.constant);
      case Rel::Lt: return make_floor_ge(negated(p.floor_coeffs), p.constant + 1);
      case Rel::Eq:
        return Formula::conj_all({make_floor_ge(p.floor_coeffs, -p.constant),
                                  make_floor_ge(negated(p.floor_coeffs), p.constant)});
    }
  }
  if (std::get_if<InZAtom>(&a)) return std::nullopt;
  if (const auto* l = std::get_if<InLAtom>(&a)) return atomize_in_l(l->term);
  if (const auto* g = std::get_if<CongAtom>(&a)) {
    const LinearForm& t = g->term;
    if (t.is_constant()) {
      if (!t.constant().is_integer()) return Formula::falsity();
      return Formula::boolean(mod_floor(t.constant().num() - g->residue, g->modulus) == 0);
    }
    if (t.coeffs().size() == 1 && t.constant().is_integer()) {
      const auto& [v, c] = *t.coeffs().begin();
      Int base = g->residue - t.constant().num();
      if (v.part == VarPart::Floor && c == Rational(1)) {
        return make_floor_cong(v.name, base, g->modulus);
      }
      if (v.part == VarPart::Floor && c == Rational(-1)) {
        return make_floor_cong(v.name, -base, g->modulus);
      }
    }
    return std::nullopt;
  }
  if (std::get_if<QIsLAtom>(&a)) return Formula::special(QIsLAtom{});
  return std::nullopt;
}

Formula rebuild_special(const SpecialAtom& a) {
  if (const auto* f = std::get_if<FracGeAtom>(&a)) return make_frac_ge(f->coeffs, f->bound);
  if (const auto* f2 = std::get_if<FloorGeAtom>(&a)) return make_floor_ge(f2->coeffs, f2->bound);
  if (const auto* c = std::get_if<FloorCongAtom>(&a)) {
    return make_floor_cong(c->var, c->residue, c->modulus);
  }
  if (const auto* l = std::get_if<LinInLAtom>(&a)) return make_lin_in_l(l->coeffs);
  return Formula::special(QIsLAtom{});
}

template <typename AtomFn>
Formula map_formula(const Formula& f, AtomFn&& fn) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom:
    case Formula::Kind::Special:
      return fn(f);
    case Formula::Kind::Not:
      return Formula::negation(map_formula(f.child(), fn));
    case Formula::Kind::And:
      return Formula::conj(map_formula(f.left(), fn), map_formula(f.right(), fn));
    case Formula::Kind::Or:
      return Formula::disj(map_formula(f.left(), fn), map_formula(f.right(), fn));
    case Formula::Kind::Implies:
      return Formula::implies(map_formula(f.left(), fn), map_formula(f.right(), fn));
    case Formula::Kind::Iff:
      return Formula::iff(map_formula(f.left(), fn), map_formula(f.right(), fn));
    case Formula::Kind::Exists:
      return Formula::exists(f.qvar(), map_formula(f.body(), fn));
    case Formula::Kind::Forall:
      return Formula::forall(f.qvar(), map_formula(f.body(), fn));
  }
  return f;
}

}  // namespace

Formula normalize(const Formula& f) {
  return map_formula(f, [](const Formula& leaf) {
    if (leaf.kind() == Formula::Kind::Special) return rebuild_special(leaf.special_ref());
    auto n = normalize_atom(leaf.atom_ref());
    return n ? *n : leaf;
  });
}

bool is_special(const Formula& f) {
  Formula n = normalize(f);
  bool ok = true;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!ok) return;
    switch (g.kind()) {
      case Formula::Kind::True:
      case Formula::Kind::False:
      case Formula::Kind::Special:
        return;
      case Formula::Kind::Atom:
      case Formula::Kind::Exists:
      case Formula::Kind::Forall:
        ok = false;
        return;
      case Formula::Kind::Not:
        walk(g.child());
        return;
      default:
        walk(g.left());
        walk(g.right());
        return;
    }
  };
  walk(n);
  return ok;
}

Formula atomize(const Formula& f) {
  Formula n = map_formula(normalize(f), [](const Formula& leaf) {
    if (leaf.kind() == Formula::Kind::Special) return leaf;
    return atomize_atom(leaf.atom_ref());
  });
  std::function<void(const Formula&)> check = [&](const Formula& g) {
    if (g.kind() == Formula::Kind::Exists || g.kind() == Formula::Kind::Forall) {
      throw std::invalid_argument("atomize requires a quantifier-free formula");
    }
    switch (g.kind()) {
      case Formula::Kind::Not: check(g.child()); break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
      case Formula::Kind::Iff:
        check(g.left());
        check(g.right());
        break;
      default:
        break;
    }
  };
  check(f);
  return simplify(n);
}

}  // namespace tg
