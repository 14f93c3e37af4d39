#include "shiftcg/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>

#include "shiftcg/error.hpp"

namespace shiftcg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

double CgConfig::initial_delta(double cbu) const {
  const double d = delta0.value_or(cbu > 0.0 ? -cbu : -1.0);
  if (!(d < 0.0)) throw InvalidInput("delta0 must be negative");
  return d;
}

void CgReport::write_gap_csv(std::ostream& os) const {
  os << "iteration,c_low,reduced_cost,delta,columns\n";
  const auto old = os.precision(17);
  for (const CgIteration& it : history) {
    os << it.iteration << ',' << it.c_low << ',' << it.reduced_cost << ','
       << it.delta << ',' << it.columns << '\n';
  }
  os.precision(old);
}

ColumnPool singleton_pool(const Instance& instance, const Digraph& digraph) {
  ColumnPool pool;
  for (JobIndex j = 0; j < instance.job_count(); ++j) {
    std::optional<Shift> best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (VertexId v : digraph.vertices_of_job(j)) {
      if (!digraph.find_arc(digraph.origin(), v)) continue;
      for (ArcId a : digraph.out_arcs(v)) {
        const VertexId e = digraph.arc(a).head;
        if (digraph.vertex(e).kind != Vertex::Kind::end) continue;
        Shift s = path_to_shift({digraph.origin(), v, e, digraph.destination()},
                                digraph, instance);
        const double c = evaluate_cost(s, instance);
        if (c < best_cost) {
          best_cost = c;
          best = std::move(s);
        }
      }
    }
    if (!best && !digraph.vertices_of_job(j).empty()) {
      // No single-job shift: any o-d path through a vertex of j will do.
      // Every kept vertex has an in-arc and an out-arc.
      const VertexId v = digraph.vertices_of_job(j).front();
      Path path{v};
      while (path.front() != digraph.origin())
        path.insert(path.begin(), digraph.arc(digraph.in_arcs(path.front()).front()).tail);
      while (path.back() != digraph.destination())
        path.push_back(digraph.arc(digraph.out_arcs(path.back()).front()).head);
      best = path_to_shift(path, digraph, instance);
      best_cost = evaluate_cost(*best, instance);
    }
    if (!best)
      throw InvalidInput("job '" + instance.job(j).id +
                         "' is not operable by any shift");
    pool.add(*best, best_cost);
  }
  return pool;
}

CgResult run_column_generation(const Instance& instance, const Digraph& digraph,
                               ColumnPool pool, const CgConfig& config) {
  const auto t0 = Clock::now();
  CgResult out;
  CgReport& rep = out.report;
  const double cbu = instance.cbu();
  double delta = config.initial_delta(cbu);
  const std::size_t initial_columns = pool.size();

  for (std::size_t it = 1; it <= config.max_iterations; ++it) {
    auto t = Clock::now();
    out.lp = solve_lp(pool, instance, config.simplex);
    rep.seconds_lp += seconds_since(t);
    rep.iterations = it;

    t = Clock::now();
    const ArcResources arcres = build_arc_resources(digraph, instance, out.lp.duals);
    const BoundSet bounds = compute_bounds(digraph, arcres, config.kappa);
    const PricingResult priced =
        enumerate_threshold(digraph, arcres, bounds, cbu, delta, config.pricing);
    rep.seconds_pricing += seconds_since(t);

    const double rc = priced.best ? priced.best->cost
                                  : std::numeric_limits<double>::infinity();
    rep.history.push_back({it, out.lp.objective, rc, delta, pool.size()});
    if (rc > delta) delta /= 2.0;
    if (!priced.stopped_early && rc >= -config.reduced_cost_tol) {
      rep.converged = true;
      break;
    }
    const Shift shift = path_to_shift(priced.best->path, digraph, instance);
    if (!pool.add(shift, instance)) {
      // A column already in the pool prices negative only through dual
      // round-off.
      if (rc >= -1e-6) {
        rep.converged = true;
        break;
      }
      throw NotConverged("column generation: pricing returned a pooled column");
    }
    for (const PricedPath& p : priced.extra)
      pool.add(path_to_shift(p.path, digraph, instance), instance);
  }
  rep.c_low = out.lp.objective;
  rep.columns_generated = pool.size() - initial_columns;
  rep.seconds_column_generation = seconds_since(t0);
  out.pool = std::move(pool);
  return out;
}

ExactResult run_exact(const Instance& instance, const CgConfig& config) {
  const auto t0 = Clock::now();
  const Digraph digraph = build_digraph(instance);
  CgResult cg = run_column_generation(instance, digraph,
                                      singleton_pool(instance, digraph), config);
  ExactResult out;
  out.report = cg.report;
  CgReport& rep = out.report;
  if (!rep.converged)
    throw NotConverged("column generation hit the iteration cap of " +
                       std::to_string(config.max_iterations));

  const auto t_int = Clock::now();
  const double c_low = cg.lp.objective;
  IpOutcome ip = solve_ip(cg.pool, instance, config.bnb);
  rep.c_upp = ip.objective;
  rep.ip_nodes = ip.nodes;
  const double scale = std::max(1.0, std::abs(c_low));
  rep.gap_before_injection = (ip.objective - c_low) / scale;

  if (ip.objective - c_low <= config.equality_tol * scale) {
    rep.early_stop = true;
  } else {
    const double gap = ip.objective - c_low;
    const ArcResources arcres = build_arc_resources(digraph, instance, cg.lp.duals);
    const BoundSet bounds = compute_bounds(digraph, arcres, config.kappa);
    std::vector<PricedPath> paths;
    try {
      // Slack absorbs round-off in the reduced costs.
      paths = enumerate_below(digraph, arcres, bounds, instance.cbu(),
                              gap + 1e-9 * scale, config.pricing);
    } catch (const CapExceeded& e) {
      throw CapExceeded(std::string(e.what()) +
                        "; the reduced-cost gap admits too many columns, a "
                        "branch-and-price scheme would be needed");
    }
    for (const PricedPath& p : paths) {
      if (cg.pool.add(path_to_shift(p.path, digraph, instance), instance))
        ++rep.columns_injected;
    }
    ip = solve_ip(cg.pool, instance, config.bnb);
    rep.ip_nodes += ip.nodes;
  }
  rep.c_final = ip.objective;
  for (std::size_t s : ip.selected) out.shifts.push_back(cg.pool[s].shift);
  out.c_final = ip.objective;
  rep.seconds_integer = seconds_since(t_int);
  rep.seconds_total = seconds_since(t0);
  return out;
}

DeterministicResult solve_deterministic(const Instance& instance,
                                        const CgConfig& config) {
  const Instance plain = instance.without_scenarios();
  ExactResult r = run_exact(plain, config);
  DeterministicResult out;
  out.shifts = std::move(r.shifts);
  out.deterministic_cost = r.c_final;
  out.stochastic_cost = evaluate_solution(out.shifts, instance).total_cost;
  return out;
}

CompareResult compare(const Instance& instance, const CgConfig& config,
                      unsigned threads) {
  CompareResult out;
  if (threads >= 2) {
    auto det = std::async(std::launch::async,
                          [&] { return solve_deterministic(instance, config); });
    out.stochastic = run_exact(instance, config);
    out.deterministic = det.get();
  } else {
    out.stochastic = run_exact(instance, config);
    out.deterministic = solve_deterministic(instance, config);
  }
  const double det = out.deterministic.stochastic_cost;
  double pct = det > 0.0 ? 100.0 * (det - out.stochastic.c_final) / det : 0.0;
  // The stochastic optimum is never worse; tiny negatives are round-off.
  if (pct < 0.0 && pct > -1e-7) pct = 0.0;
  out.improvement_percent = pct;
  return out;
}

}  // namespace shiftcg
