#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tg/formula.hpp"

namespace tg {

// Counters for the elimination cases; `tg fuzz` reports them so coverage of
// every branch is visible.
struct QeStats {
  long eliminations = 0;
  long crt_merges = 0;
  long crt_unsat = 0;
  long closure_splits = 0;
  long frac_zero_branch = 0;
  long frac_equality_branch = 0;
  long frac_fm_branch = 0;
  long floor_eq11 = 0;
  long floor_q_ne_l = 0;
  long floor_cong_only = 0;
  long floor_j_plus = 0;

  QeStats& operator+=(const QeStats& o);
  std::string str() const;
};

// Merges two congruences x ≡ k_i (mod m_i) into one, or reports
// unsatisfiability when the residues clash modulo gcd(m_0, m_1).
// Preconditions: m_i >= 1 and 0 <= k_i < m_i.
std::optional<std::pair<Int, Int>> crt_merge(const std::pair<Int, Int>& c0,
                                             const std::pair<Int, Int>& c1);

// Constraints on the fractional part of the eliminated variable, bounds
// already divided by the variable's coefficient. The caller adjoins the
// strict 0 and 1 bounds; the x = 0 disjunct is the caller's business too.
struct FracProblem {
  std::vector<std::pair<Int, LinearForm>> equalities;  // n * x = l
  std::vector<LinearForm> strict_lower, strict_upper;  // x > l / x < l
  std::vector<LinearForm> closed_lower, closed_upper;  // x >= l / x <= l
};

// Constraints on an integer variable x: bounds, L-membership of x - l, and at
// most one congruence (the vacuous one is (0, 1)). All linear forms range
// over floor components of the parameters with integer coefficients.
// Invariant (closure): the set of forms in upper+lower equals the set in
// in_l+not_in_l; eliminate_exists establishes it by case splitting.
struct FloorProblem {
  std::vector<LinearForm> upper, lower;
  std::vector<LinearForm> in_l, not_in_l;
  std::pair<Int, Int> cong{0, 1};
};

// Quantifier-free special formula equivalent to "some x in [0,1) satisfies
// the problem" (with the 0/1 bounds already adjoined by the caller).
Formula eliminate_frac(const FracProblem& p, QeStats* stats = nullptr);

// Quantifier-free special formula equivalent to "some x in Z satisfies the
// problem". Requires the closure invariant.
Formula eliminate_floor(const FloorProblem& p, QeStats* stats = nullptr);

// Eliminates one existential quantifier from a quantifier-free special
// formula.
Formula eliminate_exists(const std::string& var, const Formula& f, QeStats* stats = nullptr);

// Full quantifier elimination: equivalent quantifier-free special formula
// with free variables among those of the input. Innermost-first; universal
// quantifiers go through the double negation.
Formula qe(const Formula& f, QeStats* stats = nullptr);

// Truth values of a sentence in the two completions: first component under
// Q = L, second under Q != L.
std::pair<bool, bool> decide(const Formula& sentence, QeStats* stats = nullptr);

// Decision for sentences without L atoms; both completions must agree, and a
// disagreement throws std::logic_error since it can only mean an engine bug.
bool decide_gg(const Formula& sentence, QeStats* stats = nullptr);

}  // namespace tg
