#pragma once

#include <cstdint>
#include <vector>

#include "tg/rational.hpp"

namespace tg {

// Deterministic splitmix64 generator. We roll our own so that seeded runs
// produce identical streams on every platform and standard library.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish integer in [lo, hi], inclusive. Modulo bias is irrelevant
  // for test-case generation.
  long int_in(long lo, long hi) {
    if (hi <= lo) return lo;
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  bool coin(int percent = 50) { return int_in(0, 99) < percent; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<size_t>(int_in(0, static_cast<long>(xs.size()) - 1))];
  }

  // Random rational with numerator in [-max_num, max_num] and denominator
  // in [1, max_den].
  Rational rational(long max_num, long max_den) {
    return Rational(Int(int_in(-max_num, max_num)), Int(int_in(1, max_den)));
  }

  // Independent substream for case `id`; keeps per-case results stable
  // regardless of evaluation order.
  Rng fork(uint64_t id) const {
    Rng r(state_ ^ (0x9E3779B97F4A7C15ULL * (id + 0x632BE59BD9B4E019ULL)));
    r.next();
    return r;
  }

private:
  uint64_t state_;
};

}  // namespace tg
