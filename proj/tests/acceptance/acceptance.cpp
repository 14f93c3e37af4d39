// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and time limits are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "random_cases.hpp"
#include "shiftcg/delay_monoid.hpp"
#include "shiftcg/digraph.hpp"
#include "shiftcg/error.hpp"
#include "shiftcg/pricing.hpp"
#include "shiftcg/solver.hpp"
#include "shiftcg_cli/generator.hpp"

using namespace shiftcg;

namespace {

constexpr double kLambdaTol = 1e-9;        // absolute, on path lambda
constexpr double kCostRelTol = 1e-9;       // pricing costs vs oracle
constexpr double kExactRelTol = 1e-7;      // run_exact vs partition oracle
constexpr double kCompactRelTol = 1e-9;    // compact vs exact, float noise only
constexpr double kMonotoneTol = 1e-9;      // well_schedule cost increase
constexpr double kGapLimit = 0.0005;       // 0.05 % before injection
constexpr double kMonoidSeconds = 10.0;
constexpr double kPricingSeconds = 60.0;
constexpr double kExactSeconds = 120.0;
constexpr double kScaleSeconds = 600.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Runs the body; an escaping exception fails every criterion it covers.
void guarded(std::initializer_list<int> ids, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    for (int id : ids) report(id, false, std::string("exception: ") + e.what());
  }
}

double dual_sum(const Shift& s, const std::vector<double>& duals) {
  double t = 0.0;
  for (JobIndex j : s.jobs()) t += duals[j];
  return t;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

RuleParams alternate_rules(int round) {
  return round % 4 == 3 ? cases::single_window_rules() : cases::short_day_rules();
}

void monoid_algebra() {
  const auto t0 = Clock::now();
  cases::Rng rng(1001);
  const int samples = 10'000;
  long long checks = 0, bad = 0;
  auto expect = [&](bool ok) {
    ++checks;
    bad += !ok;
  };
  const SElement e = SElement::neutral();
  for (int i = 0; i < samples; ++i) {
    const SElement a = cases::random_triple(rng);
    const SElement b = cases::random_triple(rng);
    const SElement c = cases::random_triple(rng);
    const SElement x = cases::random_triple(rng);

    expect(s_plus(s_plus(a, b), c) == s_plus(a, s_plus(b, c)));
    expect(s_plus(e, a) == a && s_plus(a, e) == a);

    const SElement ab = s_plus(a, b);
    const SElement m = s_meet(a, b);
    expect(in_s(ab) && oracle::member(ab));
    expect(in_s(m) && oracle::member(m));

    // Library order against the definitional one.
    expect(s_leq(a, b) == oracle::leq(a, b));

    // Order compatibility on both sides, for triples and top.
    for (const SElement& hi : {a, SElement::top()}) {
      const SElement lo = s_meet(hi, c);
      expect(oracle::leq(lo, hi));
      expect(oracle::leq(s_plus(lo, x), s_plus(hi, x)));
      expect(oracle::leq(s_plus(x, lo), s_plus(x, hi)));
    }

    // Greatest lower bound: below both, and above any common lower bound.
    expect(oracle::leq(m, a) && oracle::leq(m, b));
    const SElement z = s_meet(s_meet(a, c), s_meet(b, x));
    expect(!(oracle::leq(z, a) && oracle::leq(z, b)) || oracle::leq(z, m));
    if (oracle::leq(c, a) && oracle::leq(c, b)) expect(oracle::leq(c, m));
  }
  // Non-commutativity witness.
  const SElement p = SElement::triple(10, 0, 20, 1, kMinusInfinity);
  const SElement q = SElement::triple(30, 0, 40, 1, kMinusInfinity);
  const bool witness = !(s_plus(p, q) == s_plus(q, p));
  const double secs = since(t0);
  report(1, bad == 0 && witness && secs < kMonoidSeconds,
         std::to_string(samples) + " triples, " + std::to_string(checks) + " checks, " +
             std::to_string(bad) + " failed, witness " + (witness ? "ok" : "missing") +
             fmt(", %.2f s (limit %.0f s)", secs, kMonoidSeconds));
}

// Criteria 2 and 3 share their (instance, path) pairs.
void path_resources() {
  cases::Rng rng(1002);
  std::size_t pairs = 0, count_bad = 0, lambda_bad = 0, cost_bad = 0, sem_bad = 0;
  double worst_lambda = 0.0;
  for (int round = 0; round < 120; ++round) {
    cases::InstanceShape shape;
    shape.jobs = 8;
    shape.scenarios = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
    shape.delay_sd = 20.0;
    shape.very_late = 0.05;
    shape.cbu = 240.0;
    const Instance inst = cases::random_instance(rng, shape, alternate_rules(round));
    const Digraph g = build_digraph(inst);
    const std::vector<double> duals = cases::random_duals(rng, inst.job_count(), 400.0);
    const ArcResources arcres = build_arc_resources(g, inst, duals);
    for (int k = 0; k < 10; ++k) {
      const Path p = cases::random_path(g, rng);
      const Shift s = path_to_shift(p, g, inst);
      const Resource q = path_resource(p, g, arcres);
      ++pairs;

      long long count = 0;
      for (const SElement& el : q.per_scenario) count += el.is_triple() ? el.do_c : 1'000'000;
      if (count != oracle::total_backups(s, inst)) ++count_bad;

      const double backup_part =
          inst.scenario_count() == 0
              ? 0.0
              : inst.cbu() * static_cast<double>(count) / static_cast<double>(inst.scenario_count());
      const double want_lambda = evaluate_cost(s, inst) - backup_part - dual_sum(s, duals);
      const double err = std::abs(q.lambda - want_lambda);
      worst_lambda = std::max(worst_lambda, err);
      if (err > kLambdaTol) ++lambda_bad;
      if (!close_rel(resource_cost(q, inst.cbu()), evaluate_cost(s, inst) - dual_sum(s, duals),
                     kCostRelTol) ||
          !close_rel(resource_cost(q, inst.cbu()), oracle::shift_cost(s, inst) - dual_sum(s, duals),
                     kCostRelTol))
        ++cost_bad;

      for (std::size_t w = 0; w < inst.scenario_count(); ++w) {
        const Scenario& sc = inst.scenarios()[w];
        const SElement& el = q.per_scenario[w];
        const std::size_t lost = simulate(s, sc, inst).size();
        const bool ok = el.is_triple() && el.do_c == static_cast<Count>(lost) &&
                        static_cast<int>(lost) == oracle::backup_count(s, sc, inst) &&
                        el.do_t == oracle::last_kept_end(s, sc, inst);
        if (!ok) ++sem_bad;
      }
    }
  }
  report(2, pairs >= 1000 && count_bad == 0 && lambda_bad == 0 && cost_bad == 0,
         std::to_string(pairs) + " pairs; count mismatches " + std::to_string(count_bad) +
             ", lambda > 1e-9: " + std::to_string(lambda_bad) +
             fmt(" (worst %.3g)", worst_lambda) + ", cost mismatches " +
             std::to_string(cost_bad));
  report(3, pairs >= 1000 && sem_bad == 0,
         std::to_string(pairs) + " pairs; per-scenario do mismatches " + std::to_string(sem_bad));
}

void bijection() {
  cases::Rng rng(1004);
  std::size_t paths_total = 0, bad = 0;
  for (int round = 0; round < 20; ++round) {
    cases::InstanceShape shape;
    shape.jobs = 2 + round % 5;
    shape.scenarios = 0;
    const Instance inst = cases::random_instance(rng, shape, alternate_rules(round));
    const Digraph g = build_digraph(inst);
    const auto paths = enumerate_all_paths(g);
    if (paths.size() != oracle::path_count(g)) ++bad;
    std::set<Shift> decoded;
    for (const Path& p : paths) {
      const Shift s = path_to_shift(p, g, inst);
      if (!is_well_scheduled(s, inst) || shift_to_path(s, g, inst) != p) ++bad;
      decoded.insert(s);
    }
    if (decoded.size() != paths.size()) ++bad;
    paths_total += paths.size();
  }
  report(4, bad == 0 && paths_total > 0,
         "20 instances, " + std::to_string(paths_total) + " paths, " + std::to_string(bad) +
             " failures");
}

void pricing_optimality() {
  const auto t0 = Clock::now();
  cases::Rng rng(1005);
  std::size_t bad = 0, paths_total = 0, largest = 0;
  int made = 0;
  while (made < 50) {
    cases::InstanceShape shape;
    // Short jobs on many positions push the path count towards the cap.
    shape.jobs = 6 + made % 15;
    shape.min_duration = 10;
    shape.max_duration = 40;
    shape.scenarios = 1 + made % 10;
    shape.delay_sd = 20.0;
    shape.cbu = 200.0;
    const Instance inst = cases::random_instance(rng, shape, alternate_rules(made));
    const Digraph g = build_digraph(inst);
    const std::uint64_t n = count_od_paths(g);
    if (n == 0 || n > 10'000) continue;
    ++made;
    const std::vector<double> duals = cases::random_duals(rng, inst.job_count(), 350.0);
    const ArcResources arcres = build_arc_resources(g, inst, duals);
    const BoundSet bounds = compute_bounds(g, arcres);
    double best = std::numeric_limits<double>::infinity();
    for (const Path& p : enumerate_all_paths(g)) {
      const Shift s = path_to_shift(p, g, inst);
      best = std::min(best, oracle::shift_cost(s, inst) - dual_sum(s, duals));
    }
    const PricingResult r = enumerate_min(g, arcres, bounds, inst.cbu());
    if (!r.best || !close_rel(r.best->cost, best, kCostRelTol)) ++bad;
    paths_total += n;
    largest = std::max<std::size_t>(largest, n);
  }
  const double secs = since(t0);
  report(5, bad == 0 && secs < kPricingSeconds,
         "50 digraphs, " + std::to_string(paths_total) + " paths (largest " +
             std::to_string(largest) + "), " + std::to_string(bad) + " mismatches" +
             fmt(", %.2f s (limit %.0f s)", secs, kPricingSeconds));
}

double partition_optimum(const Instance& inst) {
  const Digraph g = build_digraph(inst);
  std::vector<double> costs;
  std::vector<std::uint32_t> masks;
  for (const Shift& s : enumerate_all_shifts(g, inst)) {
    std::uint32_t m = 0;
    for (JobIndex j : s.jobs()) m |= 1u << j;
    costs.push_back(oracle::shift_cost(s, inst));
    masks.push_back(m);
  }
  return oracle::min_partition(costs, masks, inst.job_count());
}

void exactness() {
  const auto t0 = Clock::now();
  cases::Rng rng(1006);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int round = 0; round < 50; ++round) {
    cases::InstanceShape shape;
    shape.jobs = 3 + round % 8;
    shape.scenarios = 1 + round % 10;
    shape.delay_sd = 25.0;
    shape.cbu = 240.0;
    const Instance inst = cases::random_instance(rng, shape, alternate_rules(round));
    const ExactResult e = run_exact(inst);
    const double want = partition_optimum(inst);
    worst = std::max(worst, std::abs(e.c_final - want) / std::max(1.0, std::abs(want)));
    const SolutionEvaluation ev = evaluate_solution(e.shifts, inst);
    if (!close_rel(e.c_final, want, kExactRelTol) || !ev.coverage_ok ||
        !close_rel(ev.total_cost, e.c_final, kExactRelTol))
      ++bad;
  }
  const double secs = since(t0);
  report(6, bad == 0 && secs < kExactSeconds,
         "50 instances, " + std::to_string(bad) + " mismatches" +
             fmt(", worst relative error %.3g, %.2f s (limit %.0f s)", worst, secs,
                 kExactSeconds));
}

void cross_formulation() {
  cases::Rng rng(1007);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int round = 0; round < 10; ++round) {
    cases::InstanceShape shape;
    shape.jobs = 2 + round % 5;
    shape.scenarios = 1 + round % 3;
    shape.delay_sd = 25.0;
    shape.very_late = 0.1;
    shape.cbu = 240.0;
    const Instance inst = cases::random_instance(rng, shape, alternate_rules(round));
    const CompactSolution c = solve_compact(inst);
    const ExactResult e = run_exact(inst);
    worst = std::max(worst, std::abs(c.objective - e.c_final));
    if (!close_rel(c.objective, e.c_final, kCompactRelTol)) ++bad;
  }
  report(7, bad == 0,
         "10 instances, " + std::to_string(bad) + " mismatches" +
             fmt(", worst difference %.3g", worst));
}

void well_schedule_monotone() {
  cases::Rng rng(1008);
  std::size_t shifts = 0, bad = 0, attempts = 0;
  double worst = -std::numeric_limits<double>::infinity();
  while (shifts < 1000 && attempts < 2'000'000) {
    cases::InstanceShape shape;
    shape.jobs = 6;
    shape.scenarios = 6;
    shape.delay_sd = 25.0;
    shape.cbu = 240.0;
    const Instance inst = cases::random_instance(rng, shape, cases::short_day_rules());
    for (int k = 0; k < 200 && shifts < 1000; ++k) {
      ++attempts;
      const auto s = cases::random_shift_with_breaks(rng, inst);
      if (!s) continue;
      ++shifts;
      const Shift w = well_schedule(*s, inst);
      const double lib = evaluate_cost(w, inst) - evaluate_cost(*s, inst);
      const double ref = oracle::shift_cost(w, inst) - oracle::shift_cost(*s, inst);
      worst = std::max(worst, std::max(lib, ref));
      if (!is_well_scheduled(w, inst) || w.jobs() != s->jobs() || lib > kMonotoneTol ||
          ref > kMonotoneTol)
        ++bad;
    }
  }
  report(8, shifts >= 1000 && bad == 0,
         std::to_string(shifts) + " shifts, " + std::to_string(bad) + " violations" +
             fmt(", largest change %.3g", worst));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void headline() {
  const auto t0 = Clock::now();
  const double collision = compare(cases::collision_instance()).improvement_percent;

  std::vector<Instance> calm{cases::without_delays(cases::collision_instance())};
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    cli::GeneratorOptions params;
    params.n_jobs = 12;
    params.n_scenarios = 5;
    params.delay_mean = 0.0;
    params.delay_sd = 0.0;
    params.very_late_prob = 0.0;
    params.seed = seed;
    calm.push_back(cli::generate_instance(params));
  }
  double calm_worst = 0.0;
  for (const Instance& inst : calm)
    calm_worst = std::max(calm_worst, std::abs(compare(inst).improvement_percent));

  std::vector<double> improvements;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cli::GeneratorOptions params;
    params.n_jobs = 30;
    params.profile = "full-day";
    params.seed = seed;
    improvements.push_back(compare(cli::generate_instance(params)).improvement_percent);
  }
  const double med = median(improvements);
  const auto [lo, hi] = std::minmax_element(improvements.begin(), improvements.end());
  report(9, collision > 0.0 && calm_worst <= 1e-9 && med > 0.0,
         fmt("collision %.4f %%, no-delay max |x| %.3g %%", collision, calm_worst) +
             fmt(", 30-job median %.3f %% (min %.3f, max %.3f)", med, *lo, *hi) +
             fmt(", %.1f s", since(t0)));
}

void scale_smoke() {
  cli::GeneratorOptions params;
  params.n_jobs = 60;
  params.n_scenarios = 50;
  params.profile = "full-day";
  params.seed = 1;
  const Instance inst = cli::generate_instance(params);
  const auto t0 = Clock::now();
  const ExactResult e = run_exact(inst);
  const double secs = since(t0);
  const double gap = e.report.gap_before_injection;
  report(10, e.report.converged && secs < kScaleSeconds && gap <= kGapLimit,
         fmt("60 jobs x 50 scenarios, c_final %.2f, gap before injection %.4f %%", e.c_final,
             100.0 * gap) +
             fmt(" (limit %.2f %%), %.1f s (limit %.0f s)", 100.0 * kGapLimit, secs, kScaleSeconds));
}

}  // namespace

int main() {
  guarded({1}, monoid_algebra);
  guarded({2, 3}, path_resources);
  guarded({4}, bijection);
  guarded({5}, pricing_optimality);
  guarded({6}, exactness);
  guarded({7}, cross_formulation);
  guarded({8}, well_schedule_monotone);
  guarded({9}, headline);
  guarded({10}, scale_smoke);
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
