#pragma once

#include <set>
#include <string>
#include <vector>

#include "tg/model.hpp"
#include "tg/rng.hpp"
#include "tg/witness.hpp"

namespace tg {

struct QfGenOptions {
  int max_vars = 3;
  int max_atoms = 6;
  long coeff_bound = 20;   // numerators of coefficients
  long max_den = 4;        // denominators (1 = integer coefficients only)
  long max_modulus = 12;
  bool allow_l = true;     // L(...) atoms and QisL
  bool allow_cong = true;
};

// Random quantifier-free formula over variables x, y, z.
Formula gen_qf_formula(Rng& rng, const QfGenOptions& opts);

// Random assignment covering the given variables; numerators within
// [-40, 40], denominators within [1, 8], LEX pairs built the same way.
Assignment gen_assignment(Rng& rng, const Model& m, const std::set<std::string>& vars);

// Random sentence: a generated quantifier-free body with every free variable
// closed by a random quantifier prefix.
Formula gen_sentence(Rng& rng, const QfGenOptions& opts);

struct WitnessGenOptions {
  int max_constraints = 4;
  int max_disjuncts = 2;
  long coeff_bound = 5;     // |n| of frac/floor atoms
  long max_modulus = 4;
  long bound_num = 10;      // numerators of thresholds
  bool allow_param_cong = false;
};

// Random witness instance; threshold denominators divide 24 so the dense
// grid oracle stays small.
std::vector<WitnessConstraint> gen_witness_instance(Rng& rng, const WitnessGenOptions& opts);

// Random special-formula conjunction over `var` plus at most two parameters,
// shaped like the one-variable forms the witness procedure accepts (strict
// frac bounds, closed floor bounds, floor congruences).
Formula gen_special_conjunction(Rng& rng, const std::string& var,
                                const std::vector<std::string>& params);

}  // namespace tg
