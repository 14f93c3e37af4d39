#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "shiftcg/digraph.hpp"
#include "shiftcg/master.hpp"
#include "shiftcg/model.hpp"
#include "shiftcg/pricing.hpp"

namespace shiftcg {

struct CgConfig {
  // Initial pricing threshold; must be negative. Default: -cbu, or -1 when
  // cbu is 0.
  std::optional<double> delta0;
  std::size_t kappa = 1;
  std::size_t max_iterations = 100'000;
  double reduced_cost_tol = 1e-7;  // stop once the minimum reduced cost >= -tol
  double equality_tol = 1e-7;      // relative tolerance for c_upp == c_low
  // Several columns per round keep the pool rich enough that the integer
  // solve before injection usually closes the gap.
  PricingOptions pricing{.max_columns = 20};
  SimplexOptions simplex;
  BnbOptions bnb;

  double initial_delta(double cbu) const;
};

struct CgIteration {
  std::size_t iteration = 0;
  double c_low = 0.0;
  double reduced_cost = 0.0;
  double delta = 0.0;
  std::size_t columns = 0;
};

struct CgReport {
  std::size_t iterations = 0;
  double c_low = 0.0;
  double c_upp = 0.0;
  double c_final = 0.0;
  double gap_before_injection = 0.0;  // (c_upp - c_low) / |c_low|
  std::size_t columns_generated = 0;
  std::size_t columns_injected = 0;
  std::size_t ip_nodes = 0;
  bool converged = false;
  bool early_stop = false;  // c_upp matched c_low, no injection needed

  double seconds_lp = 0.0;
  double seconds_pricing = 0.0;
  double seconds_column_generation = 0.0;
  double seconds_integer = 0.0;
  double seconds_total = 0.0;

  std::vector<CgIteration> history;

  // iteration,c_low,reduced_cost,delta,columns
  void write_gap_csv(std::ostream& os) const;
};

struct CgResult {
  LpOutcome lp;
  ColumnPool pool;
  CgReport report;
};

// One cheapest single-job shift per job. Throws InvalidInput if some job
// lies on no o-d path.
ColumnPool singleton_pool(const Instance& instance, const Digraph& digraph);

// Column generation with threshold pricing. When the iteration cap is hit the
// result is returned with report.converged == false.
CgResult run_column_generation(const Instance& instance, const Digraph& digraph,
                               ColumnPool pool, const CgConfig& config = {});

struct ExactResult {
  std::vector<Shift> shifts;
  double c_final = 0.0;
  CgReport report;
};

// Column generation, integer solve over the generated pool, then injection of
// every column whose reduced cost is within c_upp - c_low and a final integer
// solve. Throws NotConverged or CapExceeded.
ExactResult run_exact(const Instance& instance, const CgConfig& config = {});

struct DeterministicResult {
  std::vector<Shift> shifts;
  double deterministic_cost = 0.0;  // cost without scenarios
  double stochastic_cost = 0.0;     // same plan priced under the scenarios
};

// Solves the instance stripped of its scenarios and prices the resulting plan
// under the full scenario set.
DeterministicResult solve_deterministic(const Instance& instance,
                                        const CgConfig& config = {});

struct CompareResult {
  ExactResult stochastic;
  DeterministicResult deterministic;
  double improvement_percent = 0.0;
};

// 100 * (deterministic plan cost - stochastic optimum) / deterministic plan
// cost. With threads >= 2 the two solves run concurrently.
CompareResult compare(const Instance& instance, const CgConfig& config = {},
                      unsigned threads = 1);

// Compact arc-flow formulation.
struct CompactModel {
  Digraph digraph;
  LinearProgram program;
  std::vector<std::size_t> x_var;               // per arc
  std::vector<std::vector<long>> y_var;         // per vertex, per scenario; -1 off job vertices
  std::vector<std::vector<bool>> m_arc;         // per arc, per scenario
  std::vector<std::vector<bool>> m_vertex;      // per vertex, per scenario
};

// x binary per arc except end -> d arcs, which are general integers; y binary
// per job vertex and scenario. Rows: coverage (= 1), flow conservation,
// y_v >= x_uv - y_u where the succession breaks, and y_v >= inflow(v) for
// very late jobs.
CompactModel build_compact_model(const Instance& instance);

void export_lp_format(const CompactModel& model, std::ostream& os);

inline constexpr std::size_t kCompactMaxJobs = 6;
inline constexpr std::size_t kCompactMaxScenarios = 3;

struct CompactSolution {
  double objective = 0.0;
  std::vector<Shift> shifts;
  std::size_t nodes = 0;
};

// Direct branch and bound on the compact model. Throws CapExceeded above
// kCompactMaxJobs jobs or kCompactMaxScenarios scenarios.
CompactSolution solve_compact(const Instance& instance,
                              const BnbOptions& options = {});

}  // namespace shiftcg
