#include "tg/qe.hpp"

#include <functional>
#include <set>
#include <stdexcept>

#include "tg/normalize.hpp"

namespace tg {

QeStats& QeStats::operator+=(const QeStats& o) {
  eliminations += o.eliminations;
  crt_merges += o.crt_merges;
  crt_unsat += o.crt_unsat;
  closure_splits += o.closure_splits;
  frac_zero_branch += o.frac_zero_branch;
  frac_equality_branch += o.frac_equality_branch;
  frac_fm_branch += o.frac_fm_branch;
  floor_eq11 += o.floor_eq11;
  floor_q_ne_l += o.floor_q_ne_l;
  floor_cong_only += o.floor_cong_only;
  floor_j_plus += o.floor_j_plus;
  return *this;
}

std::string QeStats::str() const {
  std::string out;
  auto row = [&](const char* name, long v) { out += std::string(name) + "=" + std::to_string(v) + " "; };
  row("eliminations", eliminations);
  row("crt_merges", crt_merges);
  row("crt_unsat", crt_unsat);
  row("closure_splits", closure_splits);
  row("frac_zero", frac_zero_branch);
  row("frac_equality", frac_equality_branch);
  row("frac_fm", frac_fm_branch);
  row("floor_eq11", floor_eq11);
  row("floor_q_ne_l", floor_q_ne_l);
  row("floor_cong_only", floor_cong_only);
  row("floor_j_plus", floor_j_plus);
  out.pop_back();
  return out;
}

std::optional<std::pair<Int, Int>> crt_merge(const std::pair<Int, Int>& c0,
                                             const std::pair<Int, Int>& c1) {
  const auto& [k0, m0] = c0;
  const auto& [k1, m1] = c1;
  if (m0 < 1 || m1 < 1 || k0 < 0 || k0 >= m0 || k1 < 0 || k1 >= m1) {
    throw std::invalid_argument("crt_merge: congruences require 0 <= k < m");
  }
  Int g, p, q;
  mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), m0.get_mpz_t(), m1.get_mpz_t());
  if (mod_floor(k1 - k0, g) != 0) return std::nullopt;
  Int l = m0 / g * m1;
  Int t = mod_floor((k1 - k0) / g * p, m1 / g);
  return std::make_pair(mod_floor(k0 + m0 * t, l), l);
}

namespace {

void bump(QeStats* s, long QeStats::* field) {
  if (s) ++(s->*field);
}

// --- special-formula helpers over component forms ---

// d >= 0 where d ranges over frac components with a rational constant.
Formula frac_ge_zero(const LinearForm& d) {
  Int lambda = d.denominator_lcm();
  LinearForm g = d.scaled(Rational(lambda));
  std::map<std::string, Int> coeffs;
  for (const auto& [v, c] : g.coeffs()) coeffs[v.name] = c.num();
  return make_frac_ge(std::move(coeffs), -g.constant().num());
}

Formula frac_gt_zero(const LinearForm& d) {
  return Formula::negation(frac_ge_zero(-d));
}

Formula frac_eq_zero(const LinearForm& d) {
  return Formula::conj_all({frac_ge_zero(d), frac_ge_zero(-d)});
}

// d >= 0 where d ranges over floor components with integer coefficients.
Formula floor_ge_zero(const LinearForm& d) {
  std::map<std::string, Int> coeffs;
  for (const auto& [v, c] : d.coeffs()) coeffs[v.name] = c.num();
  return make_floor_ge(std::move(coeffs), -d.constant().num());
}

// Membership in L for a form over floor components; floors differ from the
// whole variables by bounded fracs and constants are bounded, so both drop.
Formula in_l_of_floor_form(const LinearForm& d) {
  std::map<std::string, Int> coeffs;
  for (const auto& [v, c] : d.coeffs()) coeffs[v.name] = c.num();
  return make_lin_in_l(std::move(coeffs));
}

// --- DNF over special atoms ---

struct Lit {
  SpecialAtom atom;
  bool neg = false;
};

using Cube = std::vector<Lit>;

Formula lit_formula(const Lit& l) {
  Formula f = Formula::special(l.atom);
  return l.neg ? Formula::negation(f) : f;
}

std::string lit_key(const Lit& l) {
  return (l.neg ? "!" : "") + special_atom_str(l.atom);
}

std::string coeffs_key(const std::map<std::string, Int>& coeffs, bool negate = false) {
  std::string out;
  for (const auto& [v, c] : coeffs) out += v + ":" + (negate ? Int(-c) : c).get_str() + ";";
  return out;
}

// Cheap syntactic refutation of a cube: complementary literals, clashing
// one-variable congruences, and opposed inequality bounds on the same
// coefficient vector.
bool cube_consistent(const Cube& cube) {
  std::set<std::string> keys;
  std::map<std::string, Int> floor_max, frac_max, frac_neg_min;
  std::map<std::string, std::pair<Int, Int>> cong_seen;  // var -> (modulus, residue)
  auto keep = [](std::map<std::string, Int>& m, const std::string& k, const Int& v, bool max) {
    auto it = m.find(k);
    if (it == m.end()) {
      m.emplace(k, v);
    } else if (max ? v > it->second : v < it->second) {
      it->second = v;
    }
  };
  for (const Lit& l : cube) {
    if (keys.count((l.neg ? "" : "!") + special_atom_str(l.atom))) return false;
    keys.insert(lit_key(l));
    if (const auto* fg = std::get_if<FloorGeAtom>(&l.atom)) {
      keep(floor_max, coeffs_key(fg->coeffs), fg->bound, true);
    } else if (const auto* fr = std::get_if<FracGeAtom>(&l.atom)) {
      if (!l.neg) {
        keep(frac_max, coeffs_key(fr->coeffs), fr->bound, true);
      } else {
        keep(frac_neg_min, coeffs_key(fr->coeffs), fr->bound, false);
      }
    } else if (const auto* fc = std::get_if<FloorCongAtom>(&l.atom)) {
      auto it = cong_seen.find(fc->var);
      if (it == cong_seen.end()) {
        cong_seen.emplace(fc->var, std::make_pair(fc->modulus, fc->residue));
      } else if (it->second.first == fc->modulus && it->second.second != fc->residue) {
        return false;
      }
    }
  }
  // Opposed bounds: v >= n1 together with -v >= n2 (so v <= -n2) is empty
  // when n1 > -n2; same for sums of fracs.
  for (const Lit& l : cube) {
    const std::map<std::string, Int>* coeffs = nullptr;
    const std::map<std::string, Int>* table = nullptr;
    if (const auto* fg = std::get_if<FloorGeAtom>(&l.atom)) {
      coeffs = &fg->coeffs;
      table = &floor_max;
    } else if (const auto* fr = std::get_if<FracGeAtom>(&l.atom); fr && !l.neg) {
      coeffs = &fr->coeffs;
      table = &frac_max;
    } else {
      continue;
    }
    auto self = table->find(coeffs_key(*coeffs));
    auto opp = table->find(coeffs_key(*coeffs, true));
    if (opp != table->end() && self->second + opp->second > 0) return false;
  }
  // F >= n1 (closed) with F < n2 (negated frac bound) is empty when n1 >= n2.
  for (const auto& [k, n1] : frac_max) {
    auto it = frac_neg_min.find(k);
    if (it != frac_neg_min.end() && n1 >= it->second) return false;
  }
  return true;
}

std::vector<Cube> dnf_pos(const Formula& f);
std::vector<Cube> dnf_neg(const Formula& f);

std::vector<Cube> dnf_product(const std::vector<Cube>& a, const std::vector<Cube>& b) {
  std::vector<Cube> out;
  for (const auto& ca : a) {
    for (const auto& cb : b) {
      Cube merged = ca;
      std::set<std::string> keys;
      for (const auto& l : merged) keys.insert(lit_key(l));
      for (const auto& l : cb) {
        std::string key = lit_key(l);
        if (keys.count(key)) continue;
        keys.insert(key);
        merged.push_back(l);
      }
      if (cube_consistent(merged)) out.push_back(std::move(merged));
    }
  }
  return out;
}

std::vector<Cube> dnf_concat(std::vector<Cube> a, std::vector<Cube> b) {
  a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  return a;
}

std::vector<Cube> dnf_pos(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return {Cube{}};
    case Formula::Kind::False:
      return {};
    case Formula::Kind::Special:
      return {Cube{Lit{f.special_ref(), false}}};
    case Formula::Kind::Atom:
      throw std::invalid_argument("quantifier elimination needs a special formula (atomize first)");
    case Formula::Kind::Not:
      return dnf_neg(f.child());
    case Formula::Kind::And:
      return dnf_product(dnf_pos(f.left()), dnf_pos(f.right()));
    case Formula::Kind::Or:
      return dnf_concat(dnf_pos(f.left()), dnf_pos(f.right()));
    case Formula::Kind::Implies:
      return dnf_concat(dnf_neg(f.left()), dnf_pos(f.right()));
    case Formula::Kind::Iff:
      return dnf_concat(dnf_product(dnf_pos(f.left()), dnf_pos(f.right())),
                        dnf_product(dnf_neg(f.left()), dnf_neg(f.right())));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw std::invalid_argument("eliminate_exists body must be quantifier-free");
  }
  return {};
}

std::vector<Cube> dnf_neg(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return {};
    case Formula::Kind::False:
      return {Cube{}};
    case Formula::Kind::Special: {
      const SpecialAtom& a = f.special_ref();
      if (const auto* fl = std::get_if<FloorGeAtom>(&a)) {
        // not(sum >= n) is sum <= n-1, i.e. -sum >= 1-n, over integer values
        std::map<std::string, Int> neg;
        for (const auto& [v, c] : fl->coeffs) neg.emplace(v, -c);
        return dnf_pos(make_floor_ge(std::move(neg), 1 - fl->bound));
      }
      if (const auto* fc = std::get_if<FloorCongAtom>(&a)) {
        std::vector<Formula> others;
        for (Int r = 0; r < fc->modulus; ++r) {
          if (r != fc->residue) others.push_back(make_floor_cong(fc->var, r, fc->modulus));
        }
        return dnf_pos(Formula::disj_all(others));
      }
      return {Cube{Lit{a, true}}};
    }
    case Formula::Kind::Atom:
      throw std::invalid_argument("quantifier elimination needs a special formula (atomize first)");
    case Formula::Kind::Not:
      return dnf_pos(f.child());
    case Formula::Kind::And:
      return dnf_concat(dnf_neg(f.left()), dnf_neg(f.right()));
    case Formula::Kind::Or:
      return dnf_product(dnf_neg(f.left()), dnf_neg(f.right()));
    case Formula::Kind::Implies:
      return dnf_product(dnf_pos(f.left()), dnf_neg(f.right()));
    case Formula::Kind::Iff:
      return dnf_concat(dnf_product(dnf_pos(f.left()), dnf_neg(f.right())),
                        dnf_product(dnf_neg(f.left()), dnf_pos(f.right())));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw std::invalid_argument("eliminate_exists body must be quantifier-free");
  }
  return {};
}

// --- floor-problem machinery ---

void sort_dedup(std::vector<LinearForm>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Case splits until the forms bounded by inequalities and the forms under
// L-atoms are the same set.
void close_rec(FloorProblem p, std::vector<FloorProblem>& out, QeStats* stats) {
  std::set<LinearForm> bound_forms(p.upper.begin(), p.upper.end());
  bound_forms.insert(p.lower.begin(), p.lower.end());
  std::set<LinearForm> l_forms(p.in_l.begin(), p.in_l.end());
  l_forms.insert(p.not_in_l.begin(), p.not_in_l.end());

  for (const auto& l : bound_forms) {
    if (!l_forms.count(l)) {
      bump(stats, &QeStats::closure_splits);
      FloorProblem a = p;
      a.in_l.push_back(l);
      sort_dedup(a.in_l);
      close_rec(std::move(a), out, stats);
      FloorProblem b = p;
      b.not_in_l.push_back(l);
      sort_dedup(b.not_in_l);
      close_rec(std::move(b), out, stats);
      return;
    }
  }
  for (const auto& l : l_forms) {
    if (!bound_forms.count(l)) {
      bump(stats, &QeStats::closure_splits);
      FloorProblem a = p;
      a.upper.push_back(l);
      sort_dedup(a.upper);
      close_rec(std::move(a), out, stats);
      FloorProblem b = p;
      b.lower.push_back(l);
      sort_dedup(b.lower);
      close_rec(std::move(b), out, stats);
      return;
    }
  }
  out.push_back(std::move(p));
}

// exists x in Z with l_minus <= x <= l_plus and x + l0 ≡ k (mod m), as the
// residue disjunction over the parameters' floor residues: the largest
// admissible x below l_plus sits a = (l_plus + l0 - k) mod m under it.
Formula bounded_cong_exists(const LinearForm& l_minus, const LinearForm& l_plus, const Int& k,
                            const Int& m, const LinearForm& l0) {
  if (m == 1) return floor_ge_zero(l_plus - l_minus);
  std::set<std::string> var_set = l_plus.var_names();
  for (const auto& v : l0.var_names()) var_set.insert(v);
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  std::vector<Formula> disjuncts;
  std::map<std::string, Int> tuple;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == vars.size()) {
      Int a = mod_floor(l_plus.eval_int(tuple) + l0.eval_int(tuple) - k, m);
      LinearForm gap = l_plus - l_minus;
      gap.add_constant(Rational(-a));
      Formula cond = floor_ge_zero(gap);
      if (cond.is_false()) return;
      std::vector<Formula> parts;
      for (const auto& v : vars) parts.push_back(make_floor_cong(v, tuple[v], m));
      parts.push_back(std::move(cond));
      disjuncts.push_back(Formula::conj_all(parts));
      return;
    }
    for (Int r = 0; r < m; ++r) {
      tuple[vars[i]] = r;
      rec(i + 1);
    }
  };
  rec(0);
  return Formula::disj_all(disjuncts);
}

}  // namespace

Formula eliminate_frac(const FracProblem& p, QeStats* stats) {
  std::vector<Formula> parts;
  if (!p.equalities.empty()) {
    bump(stats, &QeStats::frac_equality_branch);
    const auto& [n0, l0] = p.equalities.front();
    LinearForm val = l0.scaled(Rational(Int(1), n0));
    for (size_t i = 1; i < p.equalities.size(); ++i) {
      const auto& [n, l] = p.equalities[i];
      parts.push_back(frac_eq_zero(val.scaled(Rational(n)) - l));
    }
    for (const auto& b : p.closed_lower) parts.push_back(frac_ge_zero(val - b));
    for (const auto& b : p.closed_upper) parts.push_back(frac_ge_zero(b - val));
    for (const auto& b : p.strict_lower) parts.push_back(frac_gt_zero(val - b));
    for (const auto& b : p.strict_upper) parts.push_back(frac_gt_zero(b - val));
    return Formula::conj_all(parts);
  }
  bump(stats, &QeStats::frac_fm_branch);
  std::vector<std::pair<LinearForm, bool>> lowers, uppers;  // (form, strict)
  for (const auto& b : p.closed_lower) lowers.emplace_back(b, false);
  for (const auto& b : p.strict_lower) lowers.emplace_back(b, true);
  for (const auto& b : p.closed_upper) uppers.emplace_back(b, false);
  for (const auto& b : p.strict_upper) uppers.emplace_back(b, true);
  for (const auto& [l, ls] : lowers) {
    for (const auto& [u, us] : uppers) {
      LinearForm d = u - l;
      parts.push_back(ls || us ? frac_gt_zero(d) : frac_ge_zero(d));
    }
  }
  return Formula::conj_all(parts);
}

Formula eliminate_floor(const FloorProblem& p, QeStats* stats) {
  const auto& [k, m] = p.cong;
  if (p.in_l.empty()) {
    if (!p.upper.empty() && !p.lower.empty()) {
      bump(stats, &QeStats::floor_eq11);
      std::vector<Formula> parts;
      for (const auto& u : p.upper) {
        for (const auto& l : p.lower) {
          LinearForm d = u - l;
          parts.push_back(floor_ge_zero(d));
          parts.push_back(Formula::negation(in_l_of_floor_form(d)));
        }
      }
      return Formula::conj_all(parts);
    }
    if (!p.upper.empty() || !p.lower.empty()) {
      // exactly one side bounded; the not_in_l conjuncts force Q != L and a
      // half line bounded away from L always has such a point
      bump(stats, &QeStats::floor_q_ne_l);
      return Formula::negation(Formula::special(QIsLAtom{}));
    }
    // only the congruence is left: Z realizes every residue
    bump(stats, &QeStats::floor_cong_only);
    return Formula::truth();
  }
  bump(stats, &QeStats::floor_j_plus);
  // Shift x by the least in_l form so the problem contains "x in L", then
  // every other L-atom talks about parameters only.
  const LinearForm& l0 = p.in_l.front();
  std::vector<Formula> parts;
  for (size_t i = 1; i < p.in_l.size(); ++i) {
    parts.push_back(in_l_of_floor_form(p.in_l[i] - l0));
  }
  for (const auto& l : p.not_in_l) {
    parts.push_back(Formula::negation(in_l_of_floor_form(l - l0)));
  }
  std::vector<LinearForm> sh_upper, sh_lower;
  for (const auto& u : p.upper) {
    LinearForm s = u - l0;
    parts.push_back(Formula::disj_all({floor_ge_zero(s), in_l_of_floor_form(s)}));
    sh_upper.push_back(std::move(s));
  }
  for (const auto& l : p.lower) {
    LinearForm s = l - l0;
    parts.push_back(Formula::disj_all({floor_ge_zero(-s), in_l_of_floor_form(s)}));
    sh_lower.push_back(std::move(s));
  }
  for (const auto& lo : sh_lower) {
    for (const auto& up : sh_upper) {
      parts.push_back(bounded_cong_exists(lo, up, k, m, l0));
    }
  }
  return Formula::conj_all(parts);
}

Formula eliminate_exists(const std::string& var, const Formula& f, QeStats* stats) {
  if (stats) ++stats->eliminations;
  std::vector<Cube> cubes = dnf_pos(f);
  std::vector<Formula> results;
  for (const Cube& cube : cubes) {
    std::vector<Formula> carried;
    FracProblem fp;
    std::vector<Formula> frac_zero_parts;
    bool has_frac = false;
    struct GeEntry {
      Int a;
      LinearForm l;
    };
    struct LEntry {
      Int a;
      LinearForm l;
      bool positive;
    };
    std::vector<GeEntry> ges;
    std::vector<LEntry> lents;
    std::vector<std::pair<Int, Int>> congs;

    for (const Lit& lit : cube) {
      if (const auto* fr = std::get_if<FracGeAtom>(&lit.atom)) {
        auto it = fr->coeffs.find(var);
        if (it == fr->coeffs.end()) {
          carried.push_back(lit_formula(lit));
          continue;
        }
        has_frac = true;
        Int a = it->second;
        LinearForm rest((Rational(fr->bound)));
        for (const auto& [y, c] : fr->coeffs) {
          if (y != var) rest.add_term({y, VarPart::Frac}, Rational(-c));
        }
        LinearForm div = rest.scaled(Rational(Int(1), a));
        if (!lit.neg) {
          (a > 0 ? fp.closed_lower : fp.closed_upper).push_back(div);
        } else {
          (a > 0 ? fp.strict_upper : fp.strict_lower).push_back(div);
        }
        std::map<std::string, Int> rest_coeffs = fr->coeffs;
        rest_coeffs.erase(var);
        Formula at_zero = make_frac_ge(std::move(rest_coeffs), fr->bound);
        frac_zero_parts.push_back(lit.neg ? Formula::negation(at_zero) : at_zero);
        continue;
      }
      if (const auto* fl = std::get_if<FloorGeAtom>(&lit.atom)) {
        auto it = fl->coeffs.find(var);
        if (it == fl->coeffs.end()) {
          carried.push_back(lit_formula(lit));
          continue;
        }
        LinearForm rest((Rational(fl->bound)));
        for (const auto& [y, c] : fl->coeffs) {
          if (y != var) rest.add_term({y, VarPart::Floor}, Rational(-c));
        }
        ges.push_back({it->second, std::move(rest)});
        continue;
      }
      if (const auto* fc = std::get_if<FloorCongAtom>(&lit.atom)) {
        if (fc->var != var) {
          carried.push_back(lit_formula(lit));
          continue;
        }
        congs.emplace_back(fc->residue, fc->modulus);
        continue;
      }
      if (const auto* li = std::get_if<LinInLAtom>(&lit.atom)) {
        auto it = li->coeffs.find(var);
        if (it == li->coeffs.end()) {
          carried.push_back(lit_formula(lit));
          continue;
        }
        LinearForm rest;
        for (const auto& [y, c] : li->coeffs) {
          if (y != var) rest.add_term({y, VarPart::Floor}, Rational(-c));
        }
        lents.push_back({it->second, std::move(rest), !lit.neg});
        continue;
      }
      carried.push_back(lit_formula(lit));  // QisL
    }

    Formula frac_part = Formula::truth();
    if (has_frac) {
      bump(stats, &QeStats::frac_zero_branch);
      Formula at_zero = Formula::conj_all(frac_zero_parts);
      fp.strict_lower.push_back(LinearForm(Rational(0)));
      fp.strict_upper.push_back(LinearForm(Rational(1)));
      frac_part = Formula::disj_all({at_zero, eliminate_frac(fp, stats)});
    }

    Formula floor_part = Formula::truth();
    if (!ges.empty() || !lents.empty() || !congs.empty()) {
      Int n = 1;
      for (const auto& e : ges) n = lcm(n, abs(e.a));
      for (const auto& e : lents) n = lcm(n, abs(e.a));
      FloorProblem base;
      for (const auto& e : ges) {
        LinearForm s = e.l.scaled(Rational(n / abs(e.a)));
        if (e.a > 0) {
          base.lower.push_back(std::move(s));
        } else {
          base.upper.push_back(-s);
        }
      }
      for (const auto& e : lents) {
        LinearForm s = e.l.scaled(Rational(n / abs(e.a)));
        LinearForm form = e.a > 0 ? std::move(s) : -s;
        (e.positive ? base.in_l : base.not_in_l).push_back(std::move(form));
      }
      std::optional<std::pair<Int, Int>> merged = std::make_pair(Int(0), n);
      for (const auto& [ck, cm] : congs) {
        if (stats) ++stats->crt_merges;
        merged = crt_merge(*merged, {ck * n, cm * n});
        if (!merged) break;
      }
      if (!merged) {
        bump(stats, &QeStats::crt_unsat);
        continue;  // this disjunct is unsatisfiable
      }
      base.cong = *merged;
      sort_dedup(base.upper);
      sort_dedup(base.lower);
      sort_dedup(base.in_l);
      sort_dedup(base.not_in_l);
      std::vector<FloorProblem> closed;
      close_rec(std::move(base), closed, stats);
      std::vector<Formula> floor_results;
      floor_results.reserve(closed.size());
      for (const auto& prob : closed) floor_results.push_back(eliminate_floor(prob, stats));
      floor_part = Formula::disj_all(floor_results);
    }

    carried.push_back(std::move(frac_part));
    carried.push_back(std::move(floor_part));
    results.push_back(Formula::conj_all(carried));
  }
  return simplify(Formula::disj_all(results));
}

namespace {

Formula qe_rec(const Formula& f, QeStats* stats) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Special:
      return f;
    case Formula::Kind::Atom:
      return atomize(f);
    case Formula::Kind::Not:
      return Formula::negation(qe_rec(f.child(), stats));
    case Formula::Kind::And:
      return Formula::conj(qe_rec(f.left(), stats), qe_rec(f.right(), stats));
    case Formula::Kind::Or:
      return Formula::disj(qe_rec(f.left(), stats), qe_rec(f.right(), stats));
    case Formula::Kind::Implies:
      return Formula::implies(qe_rec(f.left(), stats), qe_rec(f.right(), stats));
    case Formula::Kind::Iff:
      return Formula::iff(qe_rec(f.left(), stats), qe_rec(f.right(), stats));
    case Formula::Kind::Exists:
      return eliminate_exists(f.qvar(), simplify(qe_rec(f.body(), stats)), stats);
    case Formula::Kind::Forall:
      return Formula::negation(
          eliminate_exists(f.qvar(), simplify(Formula::negation(qe_rec(f.body(), stats))), stats));
  }
  return f;
}

bool fold_sentence(const Formula& f, bool q_is_l) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Special:
      if (std::get_if<QIsLAtom>(&f.special_ref())) return q_is_l;
      throw std::logic_error("decide: non-constant atom survived qe of a sentence");
    case Formula::Kind::Atom:
      throw std::logic_error("decide: primitive atom survived qe");
    case Formula::Kind::Not:
      return !fold_sentence(f.child(), q_is_l);
    case Formula::Kind::And:
      return fold_sentence(f.left(), q_is_l) && fold_sentence(f.right(), q_is_l);
    case Formula::Kind::Or:
      return fold_sentence(f.left(), q_is_l) || fold_sentence(f.right(), q_is_l);
    case Formula::Kind::Implies:
      return !fold_sentence(f.left(), q_is_l) || fold_sentence(f.right(), q_is_l);
    case Formula::Kind::Iff:
      return fold_sentence(f.left(), q_is_l) == fold_sentence(f.right(), q_is_l);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      throw std::logic_error("decide: quantifier survived qe");
  }
  return false;
}

bool mentions_l(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom: {
      const Atom& a = f.atom_ref();
      return std::holds_alternative<InLAtom>(a) || std::holds_alternative<QIsLAtom>(a);
    }
    case Formula::Kind::Special: {
      const SpecialAtom& a = f.special_ref();
      return std::holds_alternative<LinInLAtom>(a) || std::holds_alternative<QIsLAtom>(a);
    }
    case Formula::Kind::Not:
      return mentions_l(f.child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return mentions_l(f.left()) || mentions_l(f.right());
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return mentions_l(f.body());
  }
  return false;
}

}  // namespace

Formula qe(const Formula& f, QeStats* stats) {
  return simplify(normalize(qe_rec(normalize(f), stats)));
}

std::pair<bool, bool> decide(const Formula& sentence, QeStats* stats) {
  if (!free_vars(sentence).empty()) {
    throw std::invalid_argument("decide requires a sentence without free variables");
  }
  Formula g = qe(sentence, stats);
  return {fold_sentence(g, true), fold_sentence(g, false)};
}

bool decide_gg(const Formula& sentence, QeStats* stats) {
  if (mentions_l(sentence)) {
    throw std::invalid_argument("decide_gg requires a sentence without L atoms");
  }
  auto [in_q_eq_l, in_q_ne_l] = decide(sentence, stats);
  if (in_q_eq_l != in_q_ne_l) {
    throw std::logic_error("decide_gg: the two completions disagree on an L-free sentence");
  }
  return in_q_eq_l;
}

}  // namespace tg
