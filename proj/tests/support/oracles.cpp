#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>

namespace oracle {

namespace {

struct Step {
  JobIndex job;
  int breaks_before;  // breaks between this job and the previous job
  bool break_after;   // a break follows with no job after it
};

std::vector<Step> steps_of(const Shift& shift) {
  std::vector<Step> steps;
  int pending = 0;
  for (const Activity& a : shift.activities) {
    if (std::holds_alternative<Break>(a)) {
      ++pending;
      continue;
    }
    steps.push_back({std::get<JobRef>(a).job, steps.empty() ? 0 : pending, false});
    pending = 0;
  }
  if (!steps.empty() && pending > 0) steps.back().break_after = true;
  return steps;
}

}  // namespace

std::vector<bool> backup_flags(const Shift& shift, const Scenario& scenario,
                               const Instance& instance) {
  const auto steps = steps_of(shift);
  const int tbr = instance.rules().tbr;
  std::vector<bool> flag(steps.size(), false);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const JobOutcome& cur = scenario.realized.at(steps[i].job);
    if (cur.very_late) {
      flag[i] = true;
      continue;
    }
    if (i == 0 || flag[i - 1]) continue;
    const JobOutcome& prev = scenario.realized.at(steps[i - 1].job);
    flag[i] = prev.xe + steps[i].breaks_before * tbr > cur.xb;
  }
  return flag;
}

int backup_count(const Shift& shift, const Scenario& scenario,
                 const Instance& instance) {
  const auto f = backup_flags(shift, scenario, instance);
  return static_cast<int>(std::count(f.begin(), f.end(), true));
}

ExtTime last_kept_end(const Shift& shift, const Scenario& scenario,
                      const Instance& instance) {
  const auto steps = steps_of(shift);
  if (steps.empty()) return kMinusInfinity;
  const auto f = backup_flags(shift, scenario, instance);
  if (f.back()) return kMinusInfinity;
  const Step& last = steps.back();
  return scenario.realized.at(last.job).xe +
         (last.break_after ? instance.rules().tbr : 0);
}

long long total_backups(const Shift& shift, const Instance& instance) {
  long long total = 0;
  for (const Scenario& s : instance.scenarios())
    total += backup_count(shift, s, instance);
  return total;
}

double shift_cost(const Shift& shift, const Instance& instance) {
  const double wage = instance.wage()(shift.he - shift.hb);
  if (instance.scenario_count() == 0) return wage;
  return wage + instance.cbu() * static_cast<double>(total_backups(shift, instance)) /
                    static_cast<double>(instance.scenario_count());
}

bool member(const SElement& q) {
  if (!q.is_triple()) return true;
  if (q.do_c < 0 || q.dt_c < 0) return false;
  if (q.do_t < q.dt_t) return q.do_c == q.dt_c;
  if (q.do_t > q.dt_t) return q.do_c == q.dt_c - 1;
  return q.do_c == q.dt_c || q.do_c == q.dt_c - 1;
}

bool leq(const SElement& a, const SElement& b) {
  if (a.is_neutral() || b.is_top()) return true;
  if (a.is_top() || b.is_neutral()) return false;
  const std::pair<long, long> ado{a.do_c, a.do_t}, bdo{b.do_c, b.do_t};
  const std::pair<long, long> adt{a.dt_c, a.dt_t}, bdt{b.dt_c, b.dt_t};
  return a.bg >= b.bg && !(bdo < ado) && !(bdt < adt);
}

std::uint64_t path_count(const Digraph& g) {
  std::map<VertexId, std::uint64_t> memo;
  std::function<std::uint64_t(VertexId)> count = [&](VertexId v) -> std::uint64_t {
    if (v == g.destination()) return 1;
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    std::uint64_t n = 0;
    for (ArcId a : g.out_arcs(v)) n += count(g.arc(a).head);
    memo[v] = n;
    return n;
  };
  return count(g.origin());
}

std::vector<Path> paths_from(const Digraph& g, VertexId v) {
  std::vector<Path> out;
  Path cur{v};
  std::function<void(VertexId)> walk = [&](VertexId u) {
    if (u == g.destination()) {
      out.push_back(cur);
      return;
    }
    for (ArcId a : g.out_arcs(u)) {
      cur.push_back(g.arc(a).head);
      walk(g.arc(a).head);
      cur.pop_back();
    }
  };
  walk(v);
  return out;
}

std::vector<Path> all_paths(const Digraph& g) { return paths_from(g, g.origin()); }

double min_cover(const std::vector<double>& costs,
                 const std::vector<std::uint32_t>& masks, std::size_t n) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::map<std::uint32_t, double> best;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    auto [it, fresh] = best.emplace(masks[i], costs[i]);
    if (!fresh) it->second = std::min(it->second, costs[i]);
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<double> f(std::size_t{full} + 1, inf);
  f[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    for (const auto& [cols, c] : best) {
      if ((cols & low) == 0) continue;
      const double rest = f[mask & ~cols];
      if (rest + c < f[mask]) f[mask] = rest + c;
    }
  }
  return f[full];
}

double min_partition(const std::vector<double>& costs,
                     const std::vector<std::uint32_t>& masks, std::size_t n) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::map<std::uint32_t, double> best;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    auto [it, fresh] = best.emplace(masks[i], costs[i]);
    if (!fresh) it->second = std::min(it->second, costs[i]);
  }
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  std::vector<double> f(std::size_t{full} + 1, inf);
  f[0] = 0.0;
  // f[mask]: jobs in mask covered exactly once, the lowest one by the last
  // column chosen.
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    for (const auto& [cols, c] : best) {
      if ((cols & low) == 0 || (cols & ~mask) != 0) continue;
      const double rest = f[mask & ~cols];
      if (rest + c < f[mask]) f[mask] = rest + c;
    }
  }
  return f[full];
}

namespace {

// Solves M y = 1 in place; false if singular.
bool solve_ones(std::vector<std::vector<double>> m, std::vector<double>& y) {
  const std::size_t k = m.size();
  std::vector<double> rhs(k, 1.0);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < 1e-12) return false;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const double f = m[r][c] / m[c][c];
      for (std::size_t cc = c; cc < k; ++cc) m[r][cc] -= f * m[c][cc];
      rhs[r] -= f * rhs[c];
    }
  }
  y.assign(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) y[c] = rhs[c] / m[c][c];
  return true;
}

void subsets(std::size_t n, std::size_t k,
             const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == k) {
      visit(pick);
      return;
    }
    for (std::size_t i = from; i + (k - pick.size()) <= n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

}  // namespace

double cover_lp_by_vertices(const std::vector<double>& costs,
                            const std::vector<std::uint32_t>& masks,
                            std::size_t m) {
  const std::size_t n = costs.size();
  double best = std::numeric_limits<double>::infinity();
  if (m == 0) return 0.0;
  auto covers = [&](std::size_t row, std::size_t col) {
    return (masks[col] >> row & 1u) != 0;
  };
  for (std::size_t k = 1; k <= std::min(n, m); ++k) {
    subsets(n, k, [&](const std::vector<std::size_t>& cols) {
      subsets(m, k, [&](const std::vector<std::size_t>& rows) {
        std::vector<std::vector<double>> a(k, std::vector<double>(k));
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c)
            a[r][c] = covers(rows[r], cols[c]) ? 1.0 : 0.0;
        std::vector<double> y;
        if (!solve_ones(a, y)) return;
        for (double v : y)
          if (v < -1e-9) return;
        for (std::size_t r = 0; r < m; ++r) {
          double lhs = 0.0;
          for (std::size_t c = 0; c < k; ++c)
            if (covers(r, cols[c])) lhs += y[c];
          if (lhs < 1.0 - 1e-9) return;
        }
        double obj = 0.0;
        for (std::size_t c = 0; c < k; ++c) obj += costs[cols[c]] * y[c];
        best = std::min(best, obj);
      });
    });
  }
  return best;
}

}  // namespace oracle
