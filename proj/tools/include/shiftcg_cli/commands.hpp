#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "shiftcg_cli/generator.hpp"

namespace shiftcg::cli {

struct SolveOptions {
  std::string instance_path;
  std::string mode = "exact";  // exact | cg-only | deterministic | compact-export
  std::optional<double> delta0;
  std::size_t kappa = 1;
  std::size_t columns = 20;    // columns added per pricing round
  std::uint64_t seed = 0;      // recorded only; the solver is deterministic
  std::string report_path;     // JSON run report
  std::string plan_path;       // JSON plan of the returned shifts
  std::string lp_path;         // compact-export output
  std::string gap_csv_path;    // per-iteration column generation trace
  std::string trace_path;      // pricing trace
};

struct CompareOptions {
  std::string instance_path;
  std::optional<double> delta0;
  std::string report_path;
  unsigned threads = 1;
};

// Each command writes its human-readable summary to `out` and returns 0.
// Failures are thrown as shiftcg::Error.
int cmd_generate(const GeneratorOptions& params, const std::string& out_path,
                 std::ostream& out);
int cmd_solve(const SolveOptions& options, std::ostream& out);
int cmd_compare(const CompareOptions& options, std::ostream& out);
int cmd_simulate(const std::string& instance_path, const std::string& plan_path,
                 std::ostream& out);

// Runs `body`, mapping shiftcg::Error kinds to exit codes 2, 3, 4 and other
// exceptions to 1. The message goes to `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

// SHIFTCG_THREADS, clamped to [1, hardware threads]; 1 when unset.
unsigned threads_from_env();

}  // namespace shiftcg::cli
