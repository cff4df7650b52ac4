#include "tg/fuzz.hpp"

#include "tg/generator.hpp"
#include "tg/normalize.hpp"
#include "tg/witness.hpp"

namespace tg {

namespace {

void report_mismatch(FuzzReport& rep, long case_id, const std::string& what) {
  if (rep.mismatches.size() < 25) {
    rep.mismatches.push_back("case " + std::to_string(case_id) + ": " + what);
  }
}

// eval_qf(f) must equal eval_qf(qe(f)) in both models; qe output must be a
// special formula over a subset of the free variables.
void fuzz_qf_case(FuzzReport& rep, Rng& rng, long case_id) {
  QfGenOptions opts;
  Formula f = gen_qf_formula(rng, opts);
  Formula g = qe(f, &rep.qe_stats);
  if (!is_special(g)) {
    report_mismatch(rep, case_id, "qe output not special: " + print(g));
    return;
  }
  std::set<std::string> fv_f = free_vars(f);
  std::set<std::string> fv_g = free_vars(g);
  for (const auto& v : fv_g) {
    if (!fv_f.count(v)) {
      report_mismatch(rep, case_id, "qe introduced variable " + v);
      return;
    }
  }
  const Model models[] = {Model::std_model(), Model::lex_model()};
  for (const Model& m : models) {
    for (int i = 0; i < 5; ++i) {
      Assignment a = gen_assignment(rng, m, fv_f);
      bool lhs = eval_qf(m, f, a);
      bool rhs = eval_qf(m, g, a);
      if (lhs != rhs) {
        report_mismatch(rep, case_id,
                        "qf differential: " + print(f) + " vs " + print(g));
        return;
      }
    }
  }
}

// find_witness, the dense grid and qe-decide must agree on satisfiability;
// any witness found must satisfy every constraint.
void fuzz_witness_case(FuzzReport& rep, Rng& rng, long case_id) {
  WitnessGenOptions opts;
  opts.allow_param_cong = true;
  std::vector<WitnessConstraint> cs = gen_witness_instance(rng, opts);
  auto w = find_witness(cs);
  bool grid = grid_sat(cs);
  if (w.has_value() != grid) {
    report_mismatch(rep, case_id, "witness vs grid on " + print(witness_formula(cs, "x")));
    return;
  }
  if (w) {
    for (const auto& c : cs) {
      if (!truth_pred(c, *w)) {
        report_mismatch(rep, case_id, "unsound witness " + w->str());
        return;
      }
    }
  }
  Formula closure = Formula::exists("x", witness_formula(cs, "x"));
  bool decided = decide_gg(closure, &rep.qe_stats);
  if (decided != grid) {
    report_mismatch(rep, case_id, "qe-decide vs grid on " + print(closure));
  }
}

// decide(phi or not phi) = (true, true); L-free sentences get agreeing
// verdicts from both completions (checked inside decide_gg).
void fuzz_sentence_case(FuzzReport& rep, Rng& rng, long case_id) {
  QfGenOptions opts;
  opts.max_atoms = 3;
  opts.max_vars = 2;
  opts.coeff_bound = 4;
  opts.max_den = 2;
  opts.max_modulus = 4;
  opts.allow_l = rng.coin();
  Formula f = gen_sentence(rng, opts);
  auto [a, b] = decide(Formula::disj(f, Formula::negation(f)), &rep.qe_stats);
  if (!a || !b) {
    report_mismatch(rep, case_id, "excluded middle failed: " + print(f));
    return;
  }
  if (!opts.allow_l) {
    decide_gg(f, &rep.qe_stats);  // throws on completion disagreement
  }
}

}  // namespace

std::string FuzzReport::str() const {
  std::string out = "cases: " + std::to_string(cases) + "\n";
  for (const auto& [k, v] : counters) out += k + ": " + std::to_string(v) + "\n";
  out += "qe coverage: " + qe_stats.str() + "\n";
  out += "mismatches: " + std::to_string(mismatches.size()) + "\n";
  for (const auto& m : mismatches) out += "  " + m + "\n";
  return out;
}

FuzzReport run_fuzz(const FuzzConfig& cfg) {
  FuzzReport rep;
  Rng master(cfg.seed);
  for (long i = 0; i < cfg.cases; ++i) {
    Rng rng = master.fork(static_cast<uint64_t>(i));
    try {
      switch (i % 3) {
        case 0:
          ++rep.counters["qf_differential"];
          fuzz_qf_case(rep, rng, i);
          break;
        case 1:
          ++rep.counters["witness_oracle"];
          fuzz_witness_case(rep, rng, i);
          break;
        default:
          ++rep.counters["sentences"];
          fuzz_sentence_case(rep, rng, i);
          break;
      }
    } catch (const std::exception& e) {
      report_mismatch(rep, i, std::string("exception: ") + e.what());
    }
    ++rep.cases;
  }
  return rep;
}

}  // namespace tg
