#include "shiftcg_cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "shiftcg/error.hpp"
#include "shiftcg/solver.hpp"
#include "shiftcg_cli/io.hpp"

namespace shiftcg::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  return out;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void print_report(std::ostream& out, const CgReport& r, bool integer) {
  out << "iterations: " << r.iterations << '\n';
  out << "c_low: " << num(r.c_low) << '\n';
  if (integer) {
    out << "c_upp: " << num(r.c_upp) << '\n';
    out << "c_final: " << num(r.c_final) << '\n';
    out << "gap before injection (%): " << num(100.0 * r.gap_before_injection) << '\n';
    out << "columns injected: " << r.columns_injected << '\n';
  }
  out << "columns generated: " << r.columns_generated << '\n';
  const double total = integer ? r.seconds_total : r.seconds_column_generation;
  out << "pricing time (%): "
      << num(total > 0 ? 100.0 * r.seconds_pricing / total : 0.0) << '\n';
  out << "column generation time (s): " << num(r.seconds_column_generation) << '\n';
  if (integer) out << "integer time (s): " << num(r.seconds_integer) << '\n';
  out << "total time (s): " << num(total) << '\n';
}

void write_side_files(const SolveOptions& o, const CgReport& r) {
  if (!o.report_path.empty()) open_out(o.report_path) << report_to_json(r);
  if (!o.gap_csv_path.empty()) {
    auto f = open_out(o.gap_csv_path);
    r.write_gap_csv(f);
  }
}

}  // namespace

int cmd_generate(const GeneratorOptions& params, const std::string& out_path,
                 std::ostream& out) {
  const Instance instance = generate_instance(params);
  write_instance_file(out_path, instance);
  out << "wrote " << out_path << ": " << instance.job_count() << " jobs, "
      << instance.scenario_count() << " scenarios\n";
  return 0;
}

int cmd_solve(const SolveOptions& o, std::ostream& out) {
  const Instance instance = read_instance_file(o.instance_path);
  CgConfig config;
  config.delta0 = o.delta0;
  config.kappa = o.kappa;
  config.pricing.max_columns = o.columns;
  std::ofstream trace;
  if (!o.trace_path.empty()) {
    trace = open_out(o.trace_path);
    trace << "iteration,list_size,incumbent\n";
    config.pricing.trace = &trace;
  }

  out << "mode: " << o.mode << '\n';
  out << "jobs: " << instance.job_count() << ", scenarios: "
      << instance.scenario_count() << '\n';

  if (o.mode == "exact") {
    const ExactResult r = run_exact(instance, config);
    print_report(out, r.report, true);
    write_side_files(o, r.report);
    if (!o.plan_path.empty()) write_plan_file(o.plan_path, r.shifts, instance);
    out << "shifts: " << r.shifts.size() << '\n';
  } else if (o.mode == "cg-only") {
    const Digraph g = build_digraph(instance);
    const CgResult r =
        run_column_generation(instance, g, singleton_pool(instance, g), config);
    print_report(out, r.report, false);
    write_side_files(o, r.report);
    if (!r.report.converged)
      throw NotConverged("column generation hit the iteration cap");
  } else if (o.mode == "deterministic") {
    const DeterministicResult r = solve_deterministic(instance, config);
    out << "deterministic cost: " << num(r.deterministic_cost) << '\n';
    out << "cost under scenarios: " << num(r.stochastic_cost) << '\n';
    out << "shifts: " << r.shifts.size() << '\n';
    if (!o.plan_path.empty()) write_plan_file(o.plan_path, r.shifts, instance);
  } else if (o.mode == "compact-export") {
    if (o.lp_path.empty()) throw InvalidInput("compact-export needs --lp-out");
    const CompactModel m = build_compact_model(instance);
    {
      auto f = open_out(o.lp_path);
      export_lp_format(m, f);
    }
    std::ifstream back(o.lp_path);
    const LinearProgram parsed = parse_lp_format(back);
    if (!(parsed == m.program))
      throw std::runtime_error("compact-export: written model does not parse back");
    out << "variables: " << m.program.var_count() << '\n';
    out << "rows: " << m.program.rows.size() << '\n';
    out << "wrote " << o.lp_path << '\n';
  } else {
    throw InvalidInput("unknown mode '" + o.mode + "'");
  }
  return 0;
}

int cmd_compare(const CompareOptions& o, std::ostream& out) {
  const Instance instance = read_instance_file(o.instance_path);
  CgConfig config;
  config.delta0 = o.delta0;
  const CompareResult r = compare(instance, config, o.threads);
  out << "stochastic optimum: " << num(r.stochastic.c_final) << '\n';
  out << "deterministic plan, deterministic cost: "
      << num(r.deterministic.deterministic_cost) << '\n';
  out << "deterministic plan, cost under scenarios: "
      << num(r.deterministic.stochastic_cost) << '\n';
  out << "improvement (%): " << num(r.improvement_percent) << '\n';
  if (!o.report_path.empty()) {
    std::ostringstream doc;
    doc << std::setprecision(17) << "{\n  \"stochastic_cost\": " << r.stochastic.c_final
        << ",\n  \"deterministic_cost\": " << r.deterministic.deterministic_cost
        << ",\n  \"deterministic_plan_stochastic_cost\": "
        << r.deterministic.stochastic_cost
        << ",\n  \"improvement_percent\": " << r.improvement_percent << "\n}\n";
    open_out(o.report_path) << doc.str();
  }
  return 0;
}

int cmd_simulate(const std::string& instance_path, const std::string& plan_path,
                 std::ostream& out) {
  const Instance instance = read_instance_file(instance_path);
  const std::vector<Shift> plan = read_plan_file(plan_path, instance);
  for (std::size_t k = 0; k < plan.size(); ++k) {
    if (!is_feasible(plan[k], instance))
      throw InvalidInput("shift " + std::to_string(k) + " is infeasible");
  }
  for (std::size_t w = 0; w < instance.scenario_count(); ++w) {
    std::vector<JobIndex> all;
    for (const Shift& s : plan) {
      const auto r = simulate(s, instance.scenarios()[w], instance);
      all.insert(all.end(), r.begin(), r.end());
    }
    out << "scenario " << w << ": " << all.size() << " rescheduled";
    for (std::size_t i = 0; i < all.size(); ++i)
      out << (i == 0 ? " [" : ", ") << instance.job(all[i]).id;
    out << (all.empty() ? "\n" : "]\n");
  }
  const SolutionEvaluation e = evaluate_solution(plan, instance);
  out << "wage cost: " << num(e.wage_cost) << '\n';
  out << "expected back-up cost: " << num(e.total_cost - e.wage_cost) << '\n';
  out << "total cost: " << num(e.total_cost) << '\n';
  out << "coverage: " << (e.coverage_ok ? "ok" : "incomplete");
  for (std::size_t i = 0; i < e.uncovered.size(); ++i)
    out << (i == 0 ? " (missing " : ", ") << instance.job(e.uncovered[i]).id;
  out << (e.uncovered.empty() ? "\n" : ")\n");
  return 0;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

unsigned threads_from_env() {
  const char* v = std::getenv("SHIFTCG_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) return 1;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<long>(n, hw));
}

}  // namespace shiftcg::cli
