#include <iostream>

#include <CLI11.hpp>

#include "shiftcg_cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace shiftcg::cli;

  CLI::App app{"Shift planning under delay scenarios"};
  app.require_subcommand(1);

  GeneratorOptions gen;
  std::string gen_out;
  auto* g = app.add_subcommand("generate", "Write a random instance");
  g->add_option("-o,--output", gen_out, "Instance file")->required();
  g->add_option("--jobs", gen.n_jobs, "Number of jobs");
  g->add_option("--scenarios", gen.n_scenarios, "Number of delay scenarios");
  g->add_option("--profile", gen.profile, "fixed-window or full-day")
      ->check(CLI::IsMember({"fixed-window", "full-day"}));
  g->add_option("--delay-mean", gen.delay_mean, "Mean begin delay (min)");
  g->add_option("--delay-sd", gen.delay_sd, "Begin delay spread (min)");
  g->add_option("--very-late", gen.very_late_prob, "Very-late probability");
  g->add_option("--min-duration", gen.min_duration, "Shortest job (min)");
  g->add_option("--max-duration", gen.max_duration, "Longest job (min)");
  g->add_option("--cbu", gen.cbu, "Back-up cost per rescheduled job");
  g->add_option("--seed", gen.seed, "Random seed");

  SolveOptions solve;
  auto* s = app.add_subcommand("solve", "Solve an instance");
  s->add_option("instance", solve.instance_path, "Instance file")->required();
  s->add_option("--mode", solve.mode, "exact, cg-only, deterministic or compact-export")
      ->check(CLI::IsMember({"exact", "cg-only", "deterministic", "compact-export"}));
  s->add_option("--delta0", solve.delta0, "Initial pricing threshold (negative)");
  s->add_option("--kappa", solve.kappa, "Bounds per vertex");
  s->add_option("--columns", solve.columns, "Columns added per pricing round")
      ->check(CLI::PositiveNumber);
  s->add_option("--seed", solve.seed, "Recorded seed");
  s->add_option("--report", solve.report_path, "JSON run report");
  s->add_option("--plan-out", solve.plan_path, "JSON plan of the solution");
  s->add_option("--lp-out", solve.lp_path, "LP file for compact-export");
  s->add_option("--gap-csv", solve.gap_csv_path, "Column generation trace (CSV)");
  s->add_option("--trace", solve.trace_path, "Pricing trace (CSV)");

  CompareOptions cmp;
  auto* c = app.add_subcommand("compare", "Stochastic vs deterministic planning");
  c->add_option("instance", cmp.instance_path, "Instance file")->required();
  c->add_option("--delta0", cmp.delta0, "Initial pricing threshold (negative)");
  c->add_option("--report", cmp.report_path, "JSON summary");

  std::string sim_instance, sim_plan;
  auto* m = app.add_subcommand("simulate", "Replay a plan under every scenario");
  m->add_option("instance", sim_instance, "Instance file")->required();
  m->add_option("plan", sim_plan, "Plan file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  return run_guarded(
      [&]() -> int {
        if (g->parsed()) return cmd_generate(gen, gen_out, std::cout);
        if (s->parsed()) return cmd_solve(solve, std::cout);
        if (c->parsed()) {
          cmp.threads = threads_from_env();
          return cmd_compare(cmp, std::cout);
        }
        return cmd_simulate(sim_instance, sim_plan, std::cout);
      },
      std::cerr);
}
