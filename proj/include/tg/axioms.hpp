#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tg/model.hpp"

namespace tg {

struct AxiomFamilyResult {
  std::string name;
  long checked = 0;
  long failures = 0;
  std::string detail;  // first failure, or a note such as the Q!=L witness
  bool passed() const { return failures == 0; }
};

struct AxiomReport {
  std::vector<AxiomFamilyResult> families;
  bool all_passed() const {
    for (const auto& f : families) {
      if (!f.passed()) return false;
    }
    return true;
  }
  std::string str() const;
};

// Samples value tuples and checks the axiom instances directly: group laws,
// order translation-invariance, divisibility by every n <= 10 with the
// quotient exhibited, floor correctness, discreteness of Z with least
// positive element 1, convexity and subgroup laws for L, and the completion
// instance (all of Q in L for STD, the witness (1,0) outside L for LEX).
// Value numerators are sampled uniformly from [-range, range], denominators
// from {1..16}; runs are reproducible from the seed.
AxiomReport check_axioms(const Model& m, long n_samples, uint64_t seed, long range = 1000);

}  // namespace tg
