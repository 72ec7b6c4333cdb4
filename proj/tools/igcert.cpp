// Command-line surface: enumeration, table stats, graph export, closures,
// connectivity sweeps, presentation export and the end-to-end theorem
// verifier.  Exit codes: 0 pass, 1 assertion failure, 2 usage, 3 budget.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "igcert/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + out_path);
  }
  out << text;
}

int64_t default_budget() {
  if (const char* env = std::getenv("IGCERT_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (...) {
      std::cerr << "ignoring unparsable IGCERT_BUDGET\n";
    }
  }
  return igcert::kDefaultCellBudget;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure tables, connectivity certificates and presentation "
               "collapse for the rank-r idempotent component of M_n(F_q)"};
  app.require_subcommand(1);

  igcert::RunConfig cfg;
  cfg.budget = default_budget();
  std::string out_path;
  app.add_option("--budget", cfg.budget, "max table cells (env IGCERT_BUDGET)");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");
  app.add_option("--jobs", cfg.jobs, "worker cap for table builds")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  auto add_nrq = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "ambient dimension")->required();
    sub->add_option("--r", cfg.r, "rank")->required();
    sub->add_option("--q", cfg.q, "field size (prime power)")->required();
    sub->add_option("--poly", cfg.poly,
                    "modulus coefficients c0..ck for non-built-in q");
  };

  auto* c_enum = app.add_subcommand("enumerate", "enumerate Y_r with regions");
  add_nrq(c_enum);
  bool dump = false;
  c_enum->add_flag("--dump", dump, "also stream the matrices");

  auto* c_rees = app.add_subcommand("rees", "structure matrix statistics");
  add_nrq(c_rees);
  bool full = false;
  c_rees->add_flag("--full", full, "full product table instead of P_r");
  bool stats = false;
  c_rees->add_flag("--stats", stats, "emit statistics (default)");

  auto* c_delta = app.add_subcommand("delta", "bipartite identity-cell graph");
  add_nrq(c_delta);
  bool dot = false;
  c_delta->add_flag("--dot", dot, "emit DOT instead of statistics");

  auto* c_closure = app.add_subcommand("closure", "edge colour closure");
  add_nrq(c_closure);
  std::string trace_path;
  c_closure->add_option("--trace", trace_path, "write the trace to a file");
  c_closure->add_flag("--lifo", cfg.lifo, "stack worklist order");

  auto* c_lambda = app.add_subcommand("lambda", "lambda-graph components of T_{m,k}");
  int m = 1, k = 1;
  c_lambda->add_option("--m", m, "row-shape dimension")->required();
  c_lambda->add_option("--k", k, "product dimension")->required();
  c_lambda->add_option("--q", cfg.q, "field size")->required();
  c_lambda->add_option("--poly", cfg.poly, "modulus for non-built-in q");

  auto* c_strong = app.add_subcommand("strong", "strong components of T_{n,r}");
  add_nrq(c_strong);
  std::string value;
  c_strong->add_option("--value", value, "single value as row-major hex digits");

  auto* c_pres = app.add_subcommand("presentation", "export the presentation");
  add_nrq(c_pres);
  std::string mode = "tree-only";
  c_pres->add_option("--mode", mode,
                     "tree-only | certificate-squares | full-enumeration");
  int64_t cap = 1'000'000;
  c_pres->add_option("--cap", cap, "square cap for full enumeration");

  auto* c_counts = app.add_subcommand("counts", "closed-form counting");
  add_nrq(c_counts);

  auto* c_verify = app.add_subcommand("verify-theorem",
                                      "certify the maximal subgroup is GL_r(F_q)");
  add_nrq(c_verify);
  c_verify->add_option("--cert-dir", cfg.out_dir, "directory for certificates");
  c_verify->add_flag("--exploratory", cfg.exploratory,
                     "run outside r < n/3, report, assert nothing");
  c_verify->add_flag("--full-cert", cfg.full_cert,
                     "also write the stage-2 forest sidecar");
  c_verify->add_flag("--lifo", cfg.lifo, "stack worklist order for stage 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c_enum) {
      std::string dumped;
      igcert::Json j = igcert::cmd_enumerate(cfg, dump ? &dumped : nullptr);
      emit(j.dump(2) + "\n" + dumped, out_path);
    } else if (*c_rees) {
      emit(igcert::cmd_rees(cfg, full).dump(2) + "\n", out_path);
    } else if (*c_delta) {
      if (dot) {
        emit(igcert::cmd_delta_dot(cfg), out_path);
      } else {
        emit(igcert::cmd_delta(cfg).dump(2) + "\n", out_path);
      }
    } else if (*c_closure) {
      std::string trace_text;
      igcert::Json j =
          igcert::cmd_closure(cfg, trace_path.empty() ? nullptr : &trace_text);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path, std::ios::binary);
        out << trace_text;
      }
      emit(j.dump(2) + "\n", out_path);
      if (!j["all_blue"].get<bool>() && cfg.r < cfg.n - 1) {
        return kExitAssert;
      }
    } else if (*c_lambda) {
      igcert::Json j = igcert::cmd_lambda(m, k, cfg);
      emit(j.dump(2) + "\n", out_path);
      if (!j["all_asserted_connected"].get<bool>()) {
        return kExitAssert;
      }
    } else if (*c_strong) {
      igcert::Json j = igcert::cmd_strong(cfg, value);
      emit(j.dump(2) + "\n", out_path);
      if (j.contains("all_strong") && !j["all_strong"].get<bool>()) {
        return kExitAssert;
      }
    } else if (*c_pres) {
      emit(igcert::cmd_presentation(cfg, mode, cap), out_path);
    } else if (*c_counts) {
      emit(igcert::cmd_counts(cfg).dump(2) + "\n", out_path);
    } else if (*c_verify) {
      igcert::VerifyOutcome outcome = igcert::cmd_verify_theorem(cfg);
      igcert::write_verify_files(cfg, outcome);
      emit(outcome.summary.dump(2) + "\n", out_path);
      if (!outcome.pass) {
        std::cerr << "FAIL: " << outcome.failed_stage << "\n";
        return kExitAssert;
      }
      std::cerr << (outcome.certified ? "PASS" : "exploratory run, no assertion")
                << "\n";
    }
  } catch (const igcert::BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssert;
  }
  return kExitPass;
}
