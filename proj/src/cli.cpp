#include "tg/cli.hpp"

#include <chrono>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tg/axioms.hpp"
#include "tg/fuzz.hpp"
#include "tg/normalize.hpp"
#include "tg/parser.hpp"
#include "tg/qe.hpp"
#include "tg/witness.hpp"

namespace tg {

namespace {

using json = nlohmann::ordered_json;

struct Ctx {
  std::string format = "text";
  bool fail_on_unsat = false;

  std::string command;
  std::string status = "ok";
  json payload = json::object();
  std::string text;  // human-readable payload

  int exit_code() const {
    if (status == "error") return 2;
    if (status == "unsat" && fail_on_unsat) return 1;
    return 0;
  }

  void emit(std::ostream& out) const {
    if (format == "json") {
      json doc;
      doc["command"] = command;
      doc["status"] = status;
      doc["payload"] = payload;
      out << doc.dump(2) << "\n";
    } else {
      out << text;
    }
  }
};

Model model_from_name(const std::string& name) {
  if (name == "std") return Model::std_model();
  if (name == "lex") return Model::lex_model();
  throw std::invalid_argument("unknown model (use std or lex): " + name);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact solver for ordered divisible groups with integer part and convex subgroup"};
  app.require_subcommand(1);

  Ctx ctx;
  app.add_option("--format", ctx.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--fail-on-unsat", ctx.fail_on_unsat, "exit 1 when the result is UNSAT");

  std::string formula_text, assign_text, model_name = "std";
  long samples = 1000, cases = 1000;
  uint64_t seed = 1;

  CLI::App* cmd_parse = app.add_subcommand("parse", "parse a formula and print it back");
  cmd_parse->add_option("formula", formula_text, "formula text")->required();

  CLI::App* cmd_qe = app.add_subcommand("qe", "eliminate quantifiers");
  cmd_qe->add_option("formula", formula_text, "formula text")->required();

  CLI::App* cmd_decide = app.add_subcommand("decide", "decide a sentence in both completions");
  cmd_decide->add_option("formula", formula_text, "sentence text")->required();

  CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate a quantifier-free formula");
  cmd_eval->add_option("formula", formula_text, "formula text")->required();
  cmd_eval->add_option("--model", model_name, "std or lex")->capture_default_str();
  cmd_eval->add_option("--assign", assign_text, "bindings, e.g. x=3/2 or x=(1/2,3)");

  CLI::App* cmd_witness =
      app.add_subcommand("witness", "find the least candidate witness for a conjunction");
  cmd_witness->add_option("formula", formula_text, "one-variable conjunction")->required();

  CLI::App* cmd_axioms = app.add_subcommand("check-axioms", "sample-check the theory axioms");
  cmd_axioms->add_option("--model", model_name, "std or lex")->capture_default_str();
  cmd_axioms->add_option("--samples", samples, "sample count")->capture_default_str();
  cmd_axioms->add_option("--seed", seed, "random seed")->capture_default_str();

  CLI::App* cmd_fuzz = app.add_subcommand("fuzz", "differential testing against the oracles");
  cmd_fuzz->add_option("--cases", cases, "number of cases")->capture_default_str();
  cmd_fuzz->add_option("--seed", seed, "random seed")->capture_default_str();

  auto started = std::chrono::steady_clock::now();
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends print through CLI11
      std::ostringstream help;
      int code = app.exit(e, help, help);
      out << help.str();
      return code;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_parse->parsed()) {
      ctx.command = "parse";
      Formula f = parse(formula_text);
      std::string printed = print(normalize(f));
      ctx.payload["formula"] = printed;
      ctx.text = printed + "\n";
    } else if (cmd_qe->parsed()) {
      ctx.command = "qe";
      Formula f = parse(formula_text);
      std::string printed = print(qe(f));
      ctx.payload["special"] = printed;
      ctx.text = printed + "\n";
    } else if (cmd_decide->parsed()) {
      ctx.command = "decide";
      Formula f = parse(formula_text);
      auto [q_eq_l, q_ne_l] = decide(f);
      ctx.payload["q_eq_l"] = q_eq_l;
      ctx.payload["q_ne_l"] = q_ne_l;
      ctx.text = "Q=L: " + bool_str(q_eq_l) + "\nQ≠L: " + bool_str(q_ne_l) + "\n";
    } else if (cmd_eval->parsed()) {
      ctx.command = "eval";
      Model m = model_from_name(model_name);
      Formula f = parse(formula_text);
      Assignment a = parse_assignment(m, assign_text);
      bool value = eval_qf(m, f, a);
      ctx.payload["value"] = value;
      ctx.text = bool_str(value) + "\n";
    } else if (cmd_witness->parsed()) {
      ctx.command = "witness";
      Formula f = parse(formula_text);
      std::set<std::string> vars = free_vars(f);
      if (vars.size() > 1) throw std::invalid_argument("witness input must use one variable");
      std::string var = vars.empty() ? "x" : *vars.begin();
      auto cs = to_witness_constraints(f, var);
      auto w = find_witness(cs);
      if (w) {
        ctx.payload["witness"] = w->str();
        ctx.text = w->str() + "\n";
      } else {
        ctx.status = "unsat";
        ctx.payload["witness"] = nullptr;
        ctx.text = "UNSAT\n";
      }
    } else if (cmd_axioms->parsed()) {
      ctx.command = "check-axioms";
      Model m = model_from_name(model_name);
      AxiomReport rep = check_axioms(m, samples, seed);
      for (const auto& fam : rep.families) {
        json jf;
        jf["name"] = fam.name;
        jf["checked"] = fam.checked;
        jf["failures"] = fam.failures;
        if (!fam.detail.empty()) jf["detail"] = fam.detail;
        ctx.payload["families"].push_back(jf);
      }
      ctx.payload["all_passed"] = rep.all_passed();
      ctx.text = rep.str();
      if (!rep.all_passed()) ctx.status = "error";
    } else if (cmd_fuzz->parsed()) {
      ctx.command = "fuzz";
      FuzzReport rep = run_fuzz({cases, seed});
      ctx.payload["cases"] = rep.cases;
      for (const auto& [k, v] : rep.counters) ctx.payload["modes"][k] = v;
      ctx.payload["coverage"] = rep.qe_stats.str();
      ctx.payload["mismatches"] = rep.mismatches;
      ctx.text = rep.str();
      if (!rep.ok()) ctx.status = "error";
    }
  } catch (const std::exception& e) {
    ctx.status = "error";
    ctx.payload["message"] = e.what();
    ctx.text = std::string("error: ") + e.what() + "\n";
    ctx.emit(ctx.format == "json" ? out : err);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    err << "# elapsed_ms=" << ms << "\n";
    return 2;
  }

  ctx.emit(out);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - started)
                .count();
  err << "# elapsed_ms=" << ms << "\n";
  return ctx.exit_code();
}

}  // namespace tg
