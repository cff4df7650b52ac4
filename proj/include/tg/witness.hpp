#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tg/formula.hpp"

namespace tg {

// One atom of a witness constraint over a single unknown with all parameters
// already evaluated to concrete rationals.
struct WitnessAtom {
  enum class Kind { FracGt, FloorGe, FloorCong, ParamCong };
  Kind kind;
  Int coeff;        // n in n*frac(x) > bound / n*floor(x) >= bound
  Rational bound;   // right-hand side for FracGt / FloorGe
  Int residue;      // FloorCong / ParamCong
  Int modulus;      // FloorCong / ParamCong
  Rational param;   // left-hand side value for ParamCong

  static WitnessAtom frac_gt(Int n, Rational bound);
  static WitnessAtom floor_ge(Int n, Rational bound);
  static WitnessAtom floor_cong(Int residue, Int modulus);
  static WitnessAtom param_cong(Rational param, Int residue, Int modulus);

  std::string str() const;
};

// A disjunction of witness atoms; a constraint system is a conjunction of
// these.
struct WitnessConstraint {
  std::vector<WitnessAtom> disjuncts;
  std::string str() const;
};

// The finite candidate set of the witness search: threshold points V inside
// the unit interval with their midpoints, floor thresholds W with the least
// congruent integers above them, and the combined sum set.
struct CandidateSet {
  std::vector<Rational> v;            // 0 = v_0 < ... < v_p = 1
  std::vector<Rational> v_mid;        // midpoints of consecutive v entries
  std::vector<Int> w;                 // finite floor thresholds, sorted
  Int m_t = 1;                        // merged modulus (lcm of all moduli)
  std::vector<Int> floor_candidates;  // all w_{j,k} plus the below-range reps
  std::vector<Rational> x;            // sorted candidate points
};

// Least integer >= w congruent to k modulo m, in closed form.
Int least_geq_congruent(const Int& w, const Int& k, const Int& m);

// Exact evaluation of one constraint (disjunction) at a standard-model point.
bool truth_pred(const WitnessConstraint& c, const Rational& x);

CandidateSet build_candidates(const std::vector<WitnessConstraint>& cs);

// Minimum element of the candidate set satisfying every constraint, or
// nullopt when no candidate does (UNSAT).
std::optional<Rational> find_witness(const std::vector<WitnessConstraint>& cs);

// Dense-grid brute force over the same instance; the independent
// satisfiability oracle the candidate search is tested against.
bool grid_sat(const std::vector<WitnessConstraint>& cs);

// Interprets a parsed conjunction over one variable as witness constraints.
// Accepts conjunctions of disjunctions of the four atom shapes; anything else
// throws std::invalid_argument.
std::vector<WitnessConstraint> to_witness_constraints(const Formula& f, const std::string& var);

// The same constraints as a formula in the concrete syntax (whole-variable
// version), used to cross-check the witness verdict against qe + decide.
Formula witness_formula(const std::vector<WitnessConstraint>& cs, const std::string& var);

}  // namespace tg
