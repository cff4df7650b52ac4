#pragma once

#include "tg/formula.hpp"

namespace tg {

// Rewrites atoms whose shape already matches one of the special-formula atom
// kinds into special atoms (clearing denominators), and folds constant atoms.
// Leaves everything else untouched. Idempotent.
Formula normalize(const Formula& f);

// True iff the formula is quantifier-free and, after normalization, every
// atom is a special atom.
bool is_special(const Formula& f);

// Structural simplifier: constant folding, duplicate-literal removal,
// complementary-literal pruning, and cheap bound merging. Sound in every
// model; makes no completeness promise.
Formula simplify(const Formula& f);

// Rewrites a quantifier-free formula into an equivalent one whose atoms are
// all special atoms. Throws std::invalid_argument on quantifiers.
Formula atomize(const Formula& f);

// Capture-avoiding substitution of a term for every free occurrence of a
// variable. The term must not mention the variable itself. floor/frac of the
// substituted term is kept linear when the term shape allows it and otherwise
// desugared with a fresh integer-guarded variable.
Formula substitute(const Formula& f, const std::string& var, const LinearForm& term);

}  // namespace tg
