#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tg/qe.hpp"

namespace tg {

struct FuzzConfig {
  long cases = 1000;
  uint64_t seed = 1;
};

struct FuzzReport {
  long cases = 0;
  std::map<std::string, long> counters;  // per-mode case counts
  QeStats qe_stats;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
  std::string str() const;
};

// Differential fuzzing: quantifier-free formulas against both model
// evaluators, witness instances against the dense-grid oracle and qe-decide,
// and random sentences against the excluded-middle and completion-agreement
// properties. Deterministic per (cases, seed).
FuzzReport run_fuzz(const FuzzConfig& cfg);

}  // namespace tg
