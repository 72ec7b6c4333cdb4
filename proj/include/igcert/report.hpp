#ifndef IGCERT_REPORT_HPP_
#define IGCERT_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "igcert/gf.hpp"
#include "igcert/tables.hpp"

namespace igcert {

using Json = nlohmann::json;

// Shared knobs across subcommands.  Identical configs (including the seed)
// produce byte-identical JSON and certificate files.
struct RunConfig {
  int n = 4;
  int r = 1;
  uint32_t q = 2;
  std::vector<uint32_t> poly;  // modulus for non-built-in prime powers
  int64_t budget = kDefaultCellBudget;
  uint64_t seed = 1;
  int jobs = 1;
  bool exploratory = false;  // run past the r < n/3 guard, assert nothing
  bool full_cert = false;    // also write the stage-2 forest sidecar
  bool lifo = false;         // closure worklist order
  std::string out_dir;       // when set, verify-theorem writes files here
};

FieldRef field_of(const RunConfig& cfg);

Json cmd_enumerate(const RunConfig& cfg, std::string* dump = nullptr);
Json cmd_rees(const RunConfig& cfg, bool full);
Json cmd_delta(const RunConfig& cfg);
std::string cmd_delta_dot(const RunConfig& cfg);
Json cmd_closure(const RunConfig& cfg, std::string* trace_text = nullptr);
Json cmd_lambda(int m, int k, const RunConfig& cfg);
Json cmd_strong(const RunConfig& cfg, const std::string& value_digits = "");
Json cmd_counts(const RunConfig& cfg);
std::string cmd_presentation(const RunConfig& cfg, const std::string& mode,
                             int64_t square_cap = 1'000'000);

struct VerifyOutcome {
  bool pass = false;       // assertions held (always true in exploratory mode)
  bool certified = false;  // the full chain certifies GL_r(F_q)
  std::string failed_stage;
  Json summary;      // written to stdout and summary.json
  Json certificate;  // cert.json
  std::string trace_text;
  std::string stage2_forest_text;  // only with full_cert
};

// End-to-end pipeline: structure matrix, bipartite graph, spanning tree,
// closure, full table, Stages 1-3, soundness (with the independent replay),
// and the closed-form count cross-checks.
VerifyOutcome cmd_verify_theorem(const RunConfig& cfg);

// Writes cert.json, trace.txt, summary.json, summary.txt (and the stage-2
// forest sidecar with full_cert) under cfg.out_dir.
void write_verify_files(const RunConfig& cfg, const VerifyOutcome& outcome);

}  // namespace igcert

#endif  // IGCERT_REPORT_HPP_
