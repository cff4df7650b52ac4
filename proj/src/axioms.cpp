#include "tg/axioms.hpp"

#include "tg/rng.hpp"

namespace tg {

namespace {

class Sampler {
public:
  Sampler(const Model& m, Rng& rng, long range) : m_(m), rng_(rng), range_(range) {}

  ModelValue any() {
    if (m_.kind() == ModelKind::Std) return ModelValue::std_value(rat());
    return ModelValue::lex_value(rat(), rat());
  }

  ModelValue in_z() {
    if (m_.kind() == ModelKind::Std) return ModelValue::std_value(Rational(integer()));
    return ModelValue::lex_value(rat(), Rational(integer()));
  }

  // Samples from the intended L-part of the uncorrupted model; the corrupted
  // negative control is judged against the same sample set.
  ModelValue in_l() {
    if (m_.kind() == ModelKind::Std) return ModelValue::std_value(rat());
    return ModelValue::lex_value(Rational(0), rat());
  }

  Rational rat() { return rng_.rational(range_, 16); }
  Int integer() { return Int(rng_.int_in(-range_, range_)); }
  Rational unit_interval() {
    long den = rng_.int_in(1, 16);
    return Rational(Int(rng_.int_in(0, den)), Int(den));
  }

private:
  const Model& m_;
  Rng& rng_;
  long range_;
};

struct FamilyRun {
  AxiomFamilyResult result;

  void check(bool ok, const std::string& detail) {
    ++result.checked;
    if (!ok) {
      ++result.failures;
      if (result.detail.empty()) result.detail = detail;
    }
  }
};

}  // namespace

std::string AxiomReport::str() const {
  std::string out;
  for (const auto& f : families) {
    out += f.name + ": " + (f.passed() ? "pass" : "FAIL") + " (" + std::to_string(f.checked) +
           " checks, " + std::to_string(f.failures) + " failures)";
    if (!f.detail.empty()) out += " [" + f.detail + "]";
    out += "\n";
  }
  return out;
}

AxiomReport check_axioms(const Model& m, long n_samples, uint64_t seed, long range) {
  if (n_samples <= 0) throw std::invalid_argument("check_axioms requires n_samples > 0");
  Rng rng(seed);
  Sampler sample(m, rng, range);

  FamilyRun group{{"group laws"}};
  FamilyRun order{{"order compatibility"}};
  FamilyRun divisible{{"divisibility"}};
  FamilyRun floor{{"integer part"}};
  FamilyRun discrete{{"discreteness of Z"}};
  FamilyRun convex{{"convex subgroup L"}};
  FamilyRun completion{{"completion instance"}};

  // Forced instances: 0 and 1 behave as required.
  discrete.check(m.in_z(m.zero()) && m.in_z(m.one()), "0 or 1 not in Z");
  discrete.check(m.one() > m.zero(), "1 <= 0");
  convex.check(m.in_l(m.one()) && m.in_l(m.zero()),
               "1 = " + m.one().str() + " not in L");

  for (long i = 0; i < n_samples; ++i) {
    ModelValue x = sample.any();
    ModelValue y = sample.any();
    ModelValue z = sample.any();

    group.check((x + y) + z == x + (y + z), "associativity at " + x.str());
    group.check(x + y == y + x, "commutativity at " + x.str());
    group.check(x + m.zero() == x, "identity at " + x.str());
    group.check(x + (-x) == m.zero(), "inverse at " + x.str());

    if (x <= y) {
      order.check(x + z <= y + z, "translation at " + x.str() + "," + y.str());
    } else {
      order.check(y + z <= x + z, "translation at " + x.str() + "," + y.str());
    }

    for (long n = 2; n <= 10; ++n) {
      ModelValue q = x.scaled(Rational(Int(1), Int(n)));
      ModelValue back = m.zero();
      for (long j = 0; j < n; ++j) back = back + q;
      divisible.check(back == x, "n=" + std::to_string(n) + " at " + x.str());
    }

    ModelValue fx = m.floor_val(x);
    floor.check(m.in_z(fx), "floor not in Z at " + x.str());
    floor.check(fx <= x && x < fx + m.one(), "floor bracket at " + x.str());
    ModelValue frac = m.frac_val(x);
    floor.check(m.zero() <= frac && frac < m.one(), "frac range at " + x.str());

    ModelValue zi = sample.in_z();
    if (zi > m.zero()) {
      discrete.check(zi >= m.one(), "0 < " + zi.str() + " < 1 in Z");
    } else {
      discrete.check(true, "");
    }

    // convexity: a <= c <= b with a, b in L forces c in L
    ModelValue a = sample.in_l();
    ModelValue b = sample.in_l();
    if (b < a) std::swap(a, b);
    ModelValue c = a + (b - a).scaled(sample.unit_interval());
    convex.check(!m.in_l(a) || !m.in_l(b) || m.in_l(c),
                 "convexity at " + a.str() + " <= " + c.str() + " <= " + b.str());
    convex.check(!m.in_l(a) || !m.in_l(b) || (m.in_l(a + b) && m.in_l(a - b)),
                 "subgroup closure at " + a.str() + "," + b.str());

    if (m.q_is_l()) {
      completion.check(m.in_l(x), "Q=L instance at " + x.str());
    }
  }

  if (!m.q_is_l()) {
    ModelValue witness = ModelValue::lex_value(Rational(1), Rational(0));
    completion.check(!m.in_l(witness), "(1,0) unexpectedly in L");
    if (completion.result.failures == 0) {
      completion.result.detail = "witness " + witness.str() + " not in L";
    }
  }

  AxiomReport report;
  report.families = {group.result,    order.result,  divisible.result, floor.result,
                     discrete.result, convex.result, completion.result};
  return report;
}

}  // namespace tg
