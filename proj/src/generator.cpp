#include "tg/generator.hpp"

#include "tg/normalize.hpp"

namespace tg {

namespace {

const std::vector<std::string> kVarPool = {"x", "y", "z"};

Rational gen_coeff(Rng& rng, const QfGenOptions& opts) {
  Int num(rng.int_in(1, opts.coeff_bound) * (rng.coin() ? 1 : -1));
  Int den(rng.coin(25) ? rng.int_in(2, std::max(2L, opts.max_den)) : 1);
  return Rational(num, den);
}

LinearForm gen_term(Rng& rng, const QfGenOptions& opts, const std::vector<std::string>& vars,
                    bool whole_only = false) {
  LinearForm t;
  int n_terms = static_cast<int>(rng.int_in(1, 3));
  for (int i = 0; i < n_terms; ++i) {
    const std::string& v = rng.pick(vars);
    VarPart part = VarPart::Whole;
    if (!whole_only) {
      long p = rng.int_in(0, 2);
      part = p == 0 ? VarPart::Whole : p == 1 ? VarPart::Floor : VarPart::Frac;
    }
    t.add_term({v, part}, gen_coeff(rng, opts));
  }
  if (rng.coin(60)) t.add_constant(gen_coeff(rng, opts));
  return t;
}

Formula gen_atom(Rng& rng, const QfGenOptions& opts, const std::vector<std::string>& vars) {
  long kind = rng.int_in(0, 99);
  if (kind < 55) {
    Rel rel = static_cast<Rel>(rng.int_in(0, 4));
    return Formula::atom(CmpAtom{gen_term(rng, opts, vars), rel, gen_term(rng, opts, vars)});
  }
  if (kind < 70) {
    return Formula::atom(InZAtom{gen_term(rng, opts, vars)});
  }
  if (kind < 85 && opts.allow_l) {
    return Formula::atom(InLAtom{gen_term(rng, opts, vars)});
  }
  if (kind < 95 && opts.allow_cong) {
    Int m(rng.int_in(1, opts.max_modulus));
    Int k(m > 1 ? rng.int_in(0, static_cast<long>(m.get_si()) - 1) : 0);
    // mostly single floor components, the canonical congruence shape
    LinearForm t = rng.coin(70) ? LinearForm::floor_of(rng.pick(vars))
                                : LinearForm::whole(rng.pick(vars));
    if (rng.coin(25)) t.add_constant(Rational(Int(rng.int_in(-3, 3))));
    return Formula::atom(CongAtom{std::move(t), k, m});
  }
  if (opts.allow_l) return Formula::atom(QIsLAtom{});
  Rel rel = static_cast<Rel>(rng.int_in(0, 4));
  return Formula::atom(CmpAtom{gen_term(rng, opts, vars), rel, gen_term(rng, opts, vars)});
}

Formula gen_tree(Rng& rng, const QfGenOptions& opts, const std::vector<std::string>& vars,
                 int atoms) {
  if (atoms <= 1) return gen_atom(rng, opts, vars);
  long conn = rng.int_in(0, 99);
  if (conn < 10) return Formula::negation(gen_tree(rng, opts, vars, atoms));
  int left = 1 + static_cast<int>(rng.int_in(0, atoms - 2));
  Formula a = gen_tree(rng, opts, vars, left);
  Formula b = gen_tree(rng, opts, vars, atoms - left);
  if (conn < 50) return Formula::conj(std::move(a), std::move(b));
  if (conn < 85) return Formula::disj(std::move(a), std::move(b));
  if (conn < 95) return Formula::implies(std::move(a), std::move(b));
  return Formula::iff(std::move(a), std::move(b));
}

}  // namespace

Formula gen_qf_formula(Rng& rng, const QfGenOptions& opts) {
  int n_vars = static_cast<int>(rng.int_in(1, opts.max_vars));
  std::vector<std::string> vars(kVarPool.begin(), kVarPool.begin() + n_vars);
  int atoms = static_cast<int>(rng.int_in(1, opts.max_atoms));
  return gen_tree(rng, opts, vars, atoms);
}

Assignment gen_assignment(Rng& rng, const Model& m, const std::set<std::string>& vars) {
  Assignment a;
  for (const auto& v : vars) {
    if (m.kind() == ModelKind::Std) {
      a[v] = ModelValue::std_value(rng.rational(40, 8));
    } else {
      // bias toward hi = 0 so L-membership is exercised both ways
      Rational hi = rng.coin(40) ? Rational(0) : rng.rational(40, 8);
      a[v] = ModelValue::lex_value(hi, rng.rational(40, 8));
    }
  }
  return a;
}

Formula gen_sentence(Rng& rng, const QfGenOptions& opts) {
  Formula body = gen_qf_formula(rng, opts);
  std::set<std::string> vs = free_vars(body);
  Formula out = body;
  for (const auto& v : vs) {
    out = rng.coin() ? Formula::exists(v, std::move(out)) : Formula::forall(v, std::move(out));
  }
  return out;
}

std::vector<WitnessConstraint> gen_witness_instance(Rng& rng, const WitnessGenOptions& opts) {
  std::vector<WitnessConstraint> out;
  int n = static_cast<int>(rng.int_in(1, opts.max_constraints));
  // denominators from divisors of 24 keep the grid oracle dense but small
  const std::vector<long> dens = {1, 2, 3, 4, 6, 8, 12, 24};
  for (int i = 0; i < n; ++i) {
    WitnessConstraint c;
    int nd = static_cast<int>(rng.int_in(1, opts.max_disjuncts));
    for (int j = 0; j < nd; ++j) {
      long kind = rng.int_in(0, opts.allow_param_cong ? 3 : 2);
      if (kind == 0) {
        // |coeff| * den divides 24 so the V-thresholds have denominators
        // among the divisors of 24 and the grid oracle stays small
        const std::vector<long> ns = {1, 2, 3, 4, 6};
        long n_abs = rng.pick(ns);
        std::vector<long> q_opts;
        for (long q : dens) {
          if (24 % (n_abs * q) == 0) q_opts.push_back(q);
        }
        Int coeff(n_abs * (rng.coin() ? 1 : -1));
        Rational bound(Int(rng.int_in(-opts.bound_num, opts.bound_num)), Int(rng.pick(q_opts)));
        c.disjuncts.push_back(WitnessAtom::frac_gt(coeff, bound));
      } else if (kind == 1) {
        Int coeff(rng.int_in(1, opts.coeff_bound) * (rng.coin() ? 1 : -1));
        Rational bound(Int(rng.int_in(-opts.bound_num, opts.bound_num)),
                       Int(rng.int_in(1, 4)));
        c.disjuncts.push_back(WitnessAtom::floor_ge(coeff, bound));
      } else if (kind == 2) {
        Int m(rng.int_in(1, opts.max_modulus));
        Int k(m > 1 ? rng.int_in(0, m.get_si() - 1) : 0);
        c.disjuncts.push_back(WitnessAtom::floor_cong(k, m));
      } else {
        Int m(rng.int_in(1, opts.max_modulus));
        Int k(m > 1 ? rng.int_in(0, m.get_si() - 1) : 0);
        Rational param(Int(rng.int_in(-10, 10)), Int(rng.coin(20) ? 2 : 1));
        c.disjuncts.push_back(WitnessAtom::param_cong(param, k, m));
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

Formula gen_special_conjunction(Rng& rng, const std::string& var,
                                const std::vector<std::string>& params) {
  std::vector<Formula> parts;
  int n = static_cast<int>(rng.int_in(1, 4));
  auto param_coeffs = [&](std::map<std::string, Int>& coeffs) {
    for (const auto& p : params) {
      if (rng.coin(60)) {
        Int c(rng.int_in(1, 3) * (rng.coin() ? 1 : -1));
        coeffs[p] = c;
      }
    }
  };
  for (int i = 0; i < n; ++i) {
    long kind = rng.int_in(0, 2);
    if (kind == 0) {
      std::map<std::string, Int> coeffs;
      coeffs[var] = Int(rng.int_in(1, 4) * (rng.coin() ? 1 : -1));
      param_coeffs(coeffs);
      Formula atom = make_frac_ge(coeffs, Int(rng.int_in(-4, 4)));
      parts.push_back(rng.coin() ? Formula::negation(atom) : atom);
    } else if (kind == 1) {
      std::map<std::string, Int> coeffs;
      coeffs[var] = Int(rng.int_in(1, 4) * (rng.coin() ? 1 : -1));
      param_coeffs(coeffs);
      parts.push_back(make_floor_ge(coeffs, Int(rng.int_in(-6, 6))));
    } else {
      Int m(rng.int_in(2, 4));
      Int k(rng.int_in(0, m.get_si() - 1));
      parts.push_back(make_floor_cong(var, k, m));
    }
  }
  return Formula::conj_all(parts);
}

}  // namespace tg
