#include "shiftcg/master.hpp"

#include <algorithm>
#include <cmath>

#include "shiftcg/error.hpp"

namespace shiftcg {

bool ColumnPool::add(const Shift& shift, const Instance& instance) {
  if (contains(shift)) return false;
  return add(shift, evaluate_cost(shift, instance));
}

bool ColumnPool::add(const Shift& shift, double cost) {
  if (!index_.insert(shift).second) return false;
  Column c{shift, cost, shift.jobs()};
  std::sort(c.jobs.begin(), c.jobs.end());
  c.jobs.erase(std::unique(c.jobs.begin(), c.jobs.end()), c.jobs.end());
  columns_.push_back(std::move(c));
  return true;
}

LinearProgram master_program(const ColumnPool& pool, const Instance& instance,
                             bool integer) {
  const std::size_t n_jobs = instance.job_count();
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n_jobs);
  LinearProgram lp;
  for (std::size_t s = 0; s < pool.size(); ++s) {
    lp.add_var("y" + std::to_string(s), pool[s].cost, 0.0, kLpInfinity, integer);
    for (JobIndex j : pool[s].jobs) {
      if (j >= n_jobs) throw InvalidInput("column references an unknown job");
      rows[j].emplace_back(s, 1.0);
    }
  }
  for (JobIndex j = 0; j < n_jobs; ++j) {
    if (rows[j].empty())
      throw InvalidInput("master: no column covers job '" + instance.job(j).id + "'");
    lp.add_row("cover_" + instance.job(j).id, std::move(rows[j]), RowSense::ge, 1.0);
  }
  return lp;
}

LpOutcome solve_lp(const ColumnPool& pool, const Instance& instance,
                   const SimplexOptions& options) {
  const LinearProgram lp = master_program(pool, instance, false);
  const LpSolution sol = solve_lp(lp, options);
  if (sol.status == LpStatus::iteration_limit)
    throw NotConverged("master LP: simplex iteration limit reached");
  if (sol.status != LpStatus::optimal)
    throw InvalidInput("master LP: no optimal solution");
  LpOutcome out;
  out.objective = sol.objective;
  out.primal = sol.x;
  out.duals.resize(sol.duals.size());
  std::transform(sol.duals.begin(), sol.duals.end(), out.duals.begin(),
                 [](double y) { return std::max(0.0, y); });
  out.iterations = sol.iterations;
  return out;
}

IpOutcome solve_ip(const ColumnPool& pool, const Instance& instance,
                   const BnbOptions& options) {
  const LinearProgram lp = master_program(pool, instance, true);
  const MipSolution sol = solve_mip(lp, options);
  if (sol.status == MipStatus::node_limit)
    throw CapExceeded("master IP: branch-and-bound node limit reached");
  if (sol.status != MipStatus::optimal)
    throw InvalidInput("master IP: no integer solution");
  IpOutcome out;
  out.nodes = sol.nodes;
  for (std::size_t s = 0; s < sol.x.size(); ++s) {
    if (sol.x[s] > 0.5) out.selected.push_back(s);
  }
  out.objective = 0.0;
  for (std::size_t s : out.selected)
    out.objective += pool[s].cost * std::round(sol.x[s]);
  return out;
}

}  // namespace shiftcg
