#include "tg/witness.hpp"

#include <algorithm>
#include <stdexcept>

namespace tg {

WitnessAtom WitnessAtom::frac_gt(Int n, Rational bound) {
  if (n == 0) throw std::invalid_argument("frac atom needs a nonzero coefficient");
  return {Kind::FracGt, std::move(n), std::move(bound), 0, 1, Rational(0)};
}

WitnessAtom WitnessAtom::floor_ge(Int n, Rational bound) {
  if (n == 0) throw std::invalid_argument("floor atom needs a nonzero coefficient");
  return {Kind::FloorGe, std::move(n), std::move(bound), 0, 1, Rational(0)};
}

WitnessAtom WitnessAtom::floor_cong(Int residue, Int modulus) {
  if (modulus <= 0 || residue < 0 || residue >= modulus) {
    throw std::invalid_argument("floor congruence requires 0 <= k < m");
  }
  return {Kind::FloorCong, 1, Rational(0), std::move(residue), std::move(modulus), Rational(0)};
}

WitnessAtom WitnessAtom::param_cong(Rational param, Int residue, Int modulus) {
  if (modulus <= 0 || residue < 0 || residue >= modulus) {
    throw std::invalid_argument("parameter congruence requires 0 <= k < m");
  }
  return {Kind::ParamCong, 1, Rational(0), std::move(residue), std::move(modulus), std::move(param)};
}

std::string WitnessAtom::str() const {
  switch (kind) {
    case Kind::FracGt:
      return coeff.get_str() + "*frac(x) > " + bound.str();
    case Kind::FloorGe:
      return coeff.get_str() + "*floor(x) >= " + bound.str();
    case Kind::FloorCong:
      return "floor(x) ~ " + residue.get_str() + " mod " + modulus.get_str();
    case Kind::ParamCong:
      return param.str() + " ~ " + residue.get_str() + " mod " + modulus.get_str();
  }
  return "";
}

std::string WitnessConstraint::str() const {
  if (disjuncts.empty()) return "false";
  std::string out;
  for (size_t i = 0; i < disjuncts.size(); ++i) {
    if (i) out += " | ";
    out += disjuncts[i].str();
  }
  return out;
}

Int least_geq_congruent(const Int& w, const Int& k, const Int& m) {
  return m * ceil_div(w - k, m) + k;
}

namespace {

bool atom_holds(const WitnessAtom& a, const Rational& x) {
  Rational fl(x.floor());
  switch (a.kind) {
    case WitnessAtom::Kind::FracGt:
      return (x - fl) * Rational(a.coeff) > a.bound;
    case WitnessAtom::Kind::FloorGe:
      return fl * Rational(a.coeff) >= a.bound;
    case WitnessAtom::Kind::FloorCong:
      return mod_floor(x.floor() - a.residue, a.modulus) == 0;
    case WitnessAtom::Kind::ParamCong:
      return a.param.is_integer() && mod_floor(a.param.num() - a.residue, a.modulus) == 0;
  }
  return false;
}

// Resolves parameter-only disjuncts: a true one satisfies the whole
// constraint (drop it), false ones just disappear from the disjunction.
std::vector<WitnessConstraint> folded(const std::vector<WitnessConstraint>& cs) {
  std::vector<WitnessConstraint> out;
  for (const auto& c : cs) {
    WitnessConstraint kept;
    bool satisfied = false;
    for (const auto& a : c.disjuncts) {
      if (a.kind == WitnessAtom::Kind::ParamCong) {
        if (atom_holds(a, Rational(0))) {
          satisfied = true;
          break;
        }
        continue;
      }
      kept.disjuncts.push_back(a);
    }
    if (!satisfied) out.push_back(std::move(kept));
  }
  return out;
}

template <typename T>
void sort_unique(std::vector<T>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

bool truth_pred(const WitnessConstraint& c, const Rational& x) {
  for (const auto& a : c.disjuncts) {
    if (atom_holds(a, x)) return true;
  }
  return false;
}

CandidateSet build_candidates(const std::vector<WitnessConstraint>& cs) {
  std::vector<WitnessConstraint> work = folded(cs);
  CandidateSet out;

  std::vector<Rational> thresholds;  // (1/n) * bound of each frac atom
  std::vector<Int> w_raw;
  for (const auto& c : work) {
    for (const auto& a : c.disjuncts) {
      switch (a.kind) {
        case WitnessAtom::Kind::FracGt:
          thresholds.push_back(a.bound / Rational(a.coeff));
          break;
        case WitnessAtom::Kind::FloorGe: {
          Rational q = a.bound / Rational(a.coeff);
          // n*floor(x) >= b flips truth exactly at ceil(b/n) (n > 0) or just
          // above floor(b/n) (n < 0)
          w_raw.push_back(a.coeff > 0 ? q.ceil() : q.floor() + 1);
          break;
        }
        case WitnessAtom::Kind::FloorCong:
          out.m_t = lcm(out.m_t, a.modulus);
          break;
        case WitnessAtom::Kind::ParamCong:
          break;  // folded away
      }
    }
  }

  out.v.push_back(Rational(0));
  for (const auto& t : thresholds) {
    if (t > Rational(0) && t < Rational(1)) out.v.push_back(t);
  }
  out.v.push_back(Rational(1));
  sort_unique(out.v);
  for (size_t i = 0; i + 1 < out.v.size(); ++i) {
    out.v_mid.push_back((out.v[i] + out.v[i + 1]) * Rational(Int(1), Int(2)));
  }

  out.w = w_raw;
  sort_unique(out.w);
  if (out.w.empty()) {
    for (Int k = 0; k < out.m_t; ++k) out.floor_candidates.push_back(k);
  } else {
    for (const auto& wj : out.w) {
      for (Int k = 0; k < out.m_t; ++k) {
        out.floor_candidates.push_back(least_geq_congruent(wj, k, out.m_t));
      }
    }
    // representatives of the region below the least threshold
    for (Int k = 0; k < out.m_t; ++k) {
      out.floor_candidates.push_back(least_geq_congruent(out.w.front(), k, out.m_t) - out.m_t);
    }
  }
  sort_unique(out.floor_candidates);

  if (work.empty()) {
    // no constraints at all: the single candidate 0 suffices
    out.x.push_back(Rational(0));
    return out;
  }

  // fractional candidates: the midpoints plus the exact lower endpoints
  std::vector<Rational> frac_cands = out.v_mid;
  for (size_t i = 0; i + 1 < out.v.size(); ++i) frac_cands.push_back(out.v[i]);
  sort_unique(frac_cands);

  for (const auto& w : out.floor_candidates) {
    for (const auto& f : frac_cands) out.x.push_back(Rational(w) + f);
  }
  sort_unique(out.x);
  return out;
}

std::optional<Rational> find_witness(const std::vector<WitnessConstraint>& cs) {
  CandidateSet cands = build_candidates(cs);
  for (const auto& x : cands.x) {
    bool ok = true;
    for (const auto& c : cs) {
      if (!truth_pred(c, x)) {
        ok = false;
        break;
      }
    }
    if (ok) return x;
  }
  return std::nullopt;
}

bool grid_sat(const std::vector<WitnessConstraint>& cs) {
  std::vector<WitnessConstraint> work = folded(cs);
  for (const auto& c : work) {
    if (c.disjuncts.empty()) return false;
  }
  if (work.empty()) return true;

  Int m_t = 1;
  Int denom = 1;
  std::vector<Int> w_raw;
  for (const auto& c : work) {
    for (const auto& a : c.disjuncts) {
      switch (a.kind) {
        case WitnessAtom::Kind::FracGt:
          denom = lcm(denom, (a.bound / Rational(a.coeff)).den());
          break;
        case WitnessAtom::Kind::FloorGe: {
          Rational q = a.bound / Rational(a.coeff);
          w_raw.push_back(a.coeff > 0 ? q.ceil() : q.floor() + 1);
          break;
        }
        case WitnessAtom::Kind::FloorCong:
          m_t = lcm(m_t, a.modulus);
          break;
        case WitnessAtom::Kind::ParamCong:
          break;
      }
    }
  }
  Int step = 2 * lcm(denom, m_t);
  Int lo = -m_t, hi = 2 * m_t;
  if (!w_raw.empty()) {
    lo = *std::min_element(w_raw.begin(), w_raw.end()) - m_t;
    hi = *std::max_element(w_raw.begin(), w_raw.end()) + 2 * m_t;
  }
  for (Int i = lo; i <= hi; ++i) {
    for (Int j = 0; j < step; ++j) {
      Rational x = Rational(i) + Rational(j, step);
      bool ok = true;
      for (const auto& c : work) {
        if (!truth_pred(c, x)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

namespace {

void collect_junction(const Formula& f, Formula::Kind kind, std::vector<Formula>& out) {
  if (f.kind() == kind) {
    collect_junction(f.left(), kind, out);
    collect_junction(f.right(), kind, out);
  } else {
    out.push_back(f);
  }
}

WitnessAtom atom_from_formula(const Formula& f, const std::string& var) {
  if (f.kind() != Formula::Kind::Atom) {
    throw std::invalid_argument("witness constraints allow only plain atoms: " + print(f));
  }
  const Atom& a = f.atom_ref();
  if (const auto* g = std::get_if<CongAtom>(&a)) {
    const LinearForm& t = g->term;
    if (t.is_constant()) return WitnessAtom::param_cong(t.constant(), g->residue, g->modulus);
    if (t.coeffs().size() == 1 && t.constant().is_zero()) {
      const auto& [v, c] = *t.coeffs().begin();
      if (v.part == VarPart::Floor && v.name == var && c == Rational(1)) {
        return WitnessAtom::floor_cong(g->residue, g->modulus);
      }
    }
    throw std::invalid_argument("congruences must be on floor(" + var + ") or a constant: " +
                                print(f));
  }
  const auto* c = std::get_if<CmpAtom>(&a);
  if (!c) throw std::invalid_argument("unsupported witness atom: " + print(f));
  LinearForm d = c->lhs - c->rhs;
  VarRef frac_ref{var, VarPart::Frac};
  VarRef floor_ref{var, VarPart::Floor};
  Rational frac_coeff = d.coeff(frac_ref);
  Rational floor_coeff = d.coeff(floor_ref);
  LinearForm rest = d.without(frac_ref).without(floor_ref);
  if (!rest.is_constant() || (frac_coeff.is_zero() == floor_coeff.is_zero())) {
    throw std::invalid_argument(
        "witness atoms are n*frac(x) > c, n*floor(x) >= c or congruences: " + print(f));
  }
  if (!frac_coeff.is_integer() || !floor_coeff.is_integer()) {
    throw std::invalid_argument("witness atom coefficients must be integers: " + print(f));
  }
  Rational bound = -rest.constant();
  if (!frac_coeff.is_zero()) {
    // n*frac(x) REL bound with strict relations only
    Int n = frac_coeff.num();
    switch (c->rel) {
      case Rel::Gt: return WitnessAtom::frac_gt(n, bound);
      case Rel::Lt: return WitnessAtom::frac_gt(-n, -bound);
      default:
        throw std::invalid_argument("frac atoms must be strict inequalities: " + print(f));
    }
  }
  Int n = floor_coeff.num();
  switch (c->rel) {
    case Rel::Ge: return WitnessAtom::floor_ge(n, bound);
    case Rel::Gt: return WitnessAtom::floor_ge(n, Rational(bound.floor() + 1));
    case Rel::Le: return WitnessAtom::floor_ge(-n, -bound);
    case Rel::Lt: return WitnessAtom::floor_ge(-n, Rational((-bound).floor() + 1));
    default:
      throw std::invalid_argument("floor equalities are not a witness atom form: " + print(f));
  }
}

}  // namespace

std::vector<WitnessConstraint> to_witness_constraints(const Formula& f, const std::string& var) {
  std::vector<Formula> conjuncts;
  collect_junction(f, Formula::Kind::And, conjuncts);
  std::vector<WitnessConstraint> out;
  for (const auto& cj : conjuncts) {
    if (cj.is_true()) continue;
    WitnessConstraint c;
    if (cj.is_false()) {
      out.push_back(std::move(c));  // empty disjunction, unsatisfiable
      continue;
    }
    std::vector<Formula> disjuncts;
    collect_junction(cj, Formula::Kind::Or, disjuncts);
    bool trivially_true = false;
    for (const auto& dj : disjuncts) {
      if (dj.is_false()) continue;
      if (dj.is_true()) {
        trivially_true = true;
        break;
      }
      c.disjuncts.push_back(atom_from_formula(dj, var));
    }
    if (!trivially_true) out.push_back(std::move(c));
  }
  return out;
}

Formula witness_formula(const std::vector<WitnessConstraint>& cs, const std::string& var) {
  std::vector<Formula> conjuncts;
  for (const auto& c : cs) {
    std::vector<Formula> disjuncts;
    for (const auto& a : c.disjuncts) {
      switch (a.kind) {
        case WitnessAtom::Kind::FracGt:
          disjuncts.push_back(Formula::atom(CmpAtom{
              LinearForm::frac_of(var, Rational(a.coeff)), Rel::Gt, LinearForm(a.bound)}));
          break;
        case WitnessAtom::Kind::FloorGe:
          disjuncts.push_back(Formula::atom(CmpAtom{
              LinearForm::floor_of(var, Rational(a.coeff)), Rel::Ge, LinearForm(a.bound)}));
          break;
        case WitnessAtom::Kind::FloorCong:
          disjuncts.push_back(
              Formula::atom(CongAtom{LinearForm::floor_of(var), a.residue, a.modulus}));
          break;
        case WitnessAtom::Kind::ParamCong:
          disjuncts.push_back(Formula::atom(CongAtom{LinearForm(a.param), a.residue, a.modulus}));
          break;
      }
    }
    conjuncts.push_back(Formula::disj_all(disjuncts));
  }
  return Formula::conj_all(conjuncts);
}

}  // namespace tg
