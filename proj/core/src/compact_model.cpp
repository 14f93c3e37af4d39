#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "shiftcg/error.hpp"
#include "shiftcg/solver.hpp"

namespace shiftcg {

namespace {

std::string vname(char prefix, std::size_t a, std::size_t b) {
  return std::string(1, prefix) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

CompactModel build_compact_model(const Instance& instance) {
  CompactModel m;
  m.digraph = build_digraph(instance);
  const Digraph& g = m.digraph;
  const RuleParams& rules = instance.rules();
  const std::size_t n_scen = instance.scenario_count();
  LinearProgram& lp = m.program;

  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    const bool to_dest = arc.head == g.destination();
    m.x_var.push_back(lp.add_var(vname('x', arc.tail, arc.head), arc.wage_cost,
                                 0.0, to_dest ? kLpInfinity : 1.0, true));
  }
  const double weight = n_scen ? instance.cbu() / static_cast<double>(n_scen) : 0.0;
  m.y_var.assign(g.vertex_count(), std::vector<long>(n_scen, -1));
  m.m_vertex.assign(g.vertex_count(), std::vector<bool>(n_scen, false));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const Vertex& vx = g.vertex(v);
    if (vx.kind != Vertex::Kind::job) continue;
    for (std::size_t w = 0; w < n_scen; ++w) {
      m.y_var[v][w] = static_cast<long>(lp.add_var(vname('y', v, w), weight, 0.0, 1.0, true));
      m.m_vertex[v][w] = instance.scenarios()[w].realized[vx.job].very_late;
    }
  }

  // Coverage.
  for (JobIndex j = 0; j < instance.job_count(); ++j) {
    std::vector<std::pair<std::size_t, double>> coefs;
    for (VertexId v : g.vertices_of_job(j)) {
      for (ArcId a : g.in_arcs(v)) coefs.emplace_back(m.x_var[a], 1.0);
    }
    lp.add_row("cover_" + std::to_string(j), std::move(coefs), RowSense::eq, 1.0);
  }
  // Flow conservation at job and end vertices.
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto kind = g.vertex(v).kind;
    if (kind != Vertex::Kind::job && kind != Vertex::Kind::end) continue;
    std::vector<std::pair<std::size_t, double>> coefs;
    for (ArcId a : g.in_arcs(v)) coefs.emplace_back(m.x_var[a], 1.0);
    for (ArcId a : g.out_arcs(v)) coefs.emplace_back(m.x_var[a], -1.0);
    lp.add_row("flow_" + std::to_string(v), std::move(coefs), RowSense::eq, 0.0);
  }
  // Broken successions: y_v + y_u - x_uv >= 0.
  m.m_arc.assign(g.arc_count(), std::vector<bool>(n_scen, false));
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    const Vertex& u = g.vertex(arc.tail);
    const Vertex& v = g.vertex(arc.head);
    if (u.kind != Vertex::Kind::job || v.kind != Vertex::Kind::job) continue;
    const bool across_break =
        u.phase == Phase::before_lunch && v.phase == Phase::after_lunch;
    for (std::size_t w = 0; w < n_scen; ++w) {
      const auto& real = instance.scenarios()[w].realized;
      const Minutes ready = real[u.job].xe + (across_break ? rules.tbr : 0);
      if (ready <= real[v.job].xb) continue;
      m.m_arc[a][w] = true;
      lp.add_row(vname('d', a, w),
                 {{static_cast<std::size_t>(m.y_var[arc.head][w]), 1.0},
                  {static_cast<std::size_t>(m.y_var[arc.tail][w]), 1.0},
                  {m.x_var[a], -1.0}},
                 RowSense::ge, 0.0);
    }
  }
  // Very late jobs: y_v - inflow(v) >= 0.
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (std::size_t w = 0; w < n_scen; ++w) {
      if (m.y_var[v][w] < 0 || !m.m_vertex[v][w]) continue;
      std::vector<std::pair<std::size_t, double>> coefs{
          {static_cast<std::size_t>(m.y_var[v][w]), 1.0}};
      for (ArcId a : g.in_arcs(v)) coefs.emplace_back(m.x_var[a], -1.0);
      lp.add_row(vname('l', v, w), std::move(coefs), RowSense::ge, 0.0);
    }
  }
  return m;
}

void export_lp_format(const CompactModel& model, std::ostream& os) {
  write_lp_format(os, model.program, "compact shift planning model");
}

CompactSolution solve_compact(const Instance& instance, const BnbOptions& options) {
  if (instance.job_count() > kCompactMaxJobs ||
      instance.scenario_count() > kCompactMaxScenarios)
    throw CapExceeded("compact model solves are limited to " +
                      std::to_string(kCompactMaxJobs) + " jobs and " +
                      std::to_string(kCompactMaxScenarios) + " scenarios");
  const CompactModel m = build_compact_model(instance);
  // Coverage and flow already bound x by 1 and minimization keeps y <= 1, so
  // the explicit upper bounds only add rows to the simplex.
  LinearProgram relaxed = m.program;
  std::fill(relaxed.hi.begin(), relaxed.hi.end(), kLpInfinity);
  const MipSolution sol = solve_mip(relaxed, options);
  if (sol.status == MipStatus::node_limit)
    throw CapExceeded("compact model: node limit reached");
  if (sol.status != MipStatus::optimal)
    throw InvalidInput("compact model has no integer solution");

  CompactSolution out;
  out.objective = sol.objective;
  out.nodes = sol.nodes;
  const Digraph& g = m.digraph;
  std::vector<long> flow(g.arc_count());
  for (ArcId a = 0; a < g.arc_count(); ++a)
    flow[a] = std::lround(sol.x[m.x_var[a]]);
  for (ArcId first : g.out_arcs(g.origin())) {
    while (flow[first] > 0) {
      Path path{g.origin()};
      ArcId a = first;
      while (true) {
        --flow[a];
        path.push_back(g.arc(a).head);
        if (path.back() == g.destination()) break;
        const auto& outs = g.out_arcs(path.back());
        auto it = std::find_if(outs.begin(), outs.end(),
                               [&](ArcId b) { return flow[b] > 0; });
        if (it == outs.end())
          throw std::logic_error("compact model: flow decomposition failed");
        a = *it;
      }
      out.shifts.push_back(path_to_shift(path, g, instance));
    }
  }
  return out;
}

}  // namespace shiftcg
