#include "shiftcg/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "shiftcg/error.hpp"

namespace shiftcg {

namespace {

std::vector<JobIndex> sorted_jobs(const Instance& instance) {
  std::vector<JobIndex> order(instance.job_count());
  std::iota(order.begin(), order.end(), JobIndex{0});
  std::sort(order.begin(), order.end(), [&](JobIndex a, JobIndex b) {
    const Job& x = instance.job(a);
    const Job& y = instance.job(b);
    return std::tie(x.tb, x.te, x.id) < std::tie(y.tb, y.te, y.id);
  });
  return order;
}

const char* phase_name(Phase p) {
  return p == Phase::before_lunch ? "bl" : "al";
}

}  // namespace

void Digraph::index() {
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  std::size_t job_count = by_job_.size();
  by_job_.assign(job_count, {});
  job_lookup_.clear();
  end_lookup_.clear();
  for (ArcId a = 0; a < arcs_.size(); ++a) {
    out_.at(arcs_[a].tail).push_back(a);
    in_.at(arcs_[a].head).push_back(a);
  }
  for (auto& list : out_) {
    std::sort(list.begin(), list.end(), [&](ArcId x, ArcId y) {
      return arcs_[x].head < arcs_[y].head;
    });
  }
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    const Vertex& vx = vertices_[v];
    if (vx.kind == Vertex::Kind::job) {
      if (vx.job >= by_job_.size()) by_job_.resize(vx.job + 1);
      by_job_[vx.job].push_back(v);
      job_lookup_.emplace(std::make_tuple(vx.job, vx.hb, vx.phase), v);
    } else if (vx.kind == Vertex::Kind::end) {
      end_lookup_.emplace(vx.he, v);
    }
  }
}

Digraph Digraph::from_parts(std::vector<Vertex> vertices, std::vector<Arc> arcs,
                            std::size_t job_count) {
  if (vertices.size() < 2)
    throw InvalidInput("digraph needs at least an origin and a destination");
  Digraph g;
  g.vertices_ = std::move(vertices);
  g.arcs_ = std::move(arcs);
  for (const Arc& a : g.arcs_) {
    if (a.tail >= g.vertices_.size() || a.head >= g.vertices_.size())
      throw InvalidInput("arc endpoint out of range");
  }
  g.by_job_.assign(job_count, {});
  g.index();
  return g;
}

std::optional<ArcId> Digraph::find_arc(VertexId tail, VertexId head) const {
  if (tail >= out_.size()) return std::nullopt;
  const auto& list = out_[tail];
  auto it = std::lower_bound(list.begin(), list.end(), head,
                             [&](ArcId a, VertexId h) { return arcs_[a].head < h; });
  if (it != list.end() && arcs_[*it].head == head) return *it;
  return std::nullopt;
}

std::optional<VertexId> Digraph::job_vertex(JobIndex j, Minutes hb,
                                            Phase phase) const {
  auto it = job_lookup_.find(std::make_tuple(j, hb, phase));
  if (it == job_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexId> Digraph::end_vertex(Minutes he) const {
  auto it = end_lookup_.find(he);
  if (it == end_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<VertexId> Digraph::topological_order() const {
  std::vector<std::size_t> indegree(vertices_.size(), 0);
  for (const Arc& a : arcs_) ++indegree[a.head];
  std::vector<VertexId> order;
  order.reserve(vertices_.size());
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    if (indegree[v] == 0) order.push_back(v);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (ArcId a : out_[order[i]]) {
      if (--indegree[arcs_[a].head] == 0) order.push_back(arcs_[a].head);
    }
  }
  if (order.size() != vertices_.size()) return {};
  return order;
}

Digraph build_digraph(const Instance& instance) {
  const RuleParams& r = instance.rules();
  const auto order = sorted_jobs(instance);

  std::vector<Vertex> vertices;
  std::vector<Arc> arcs;
  vertices.push_back(Vertex{Vertex::Kind::origin});

  // Job vertices per begin time, remembered for arc generation.
  struct Block {
    Minutes hb;
    std::vector<VertexId> bl;
    std::vector<VertexId> al;
  };
  std::vector<Block> blocks;
  for (Minutes hb : r.hb_set) {
    Block block{hb, {}, {}};
    for (JobIndex j : order) {
      const Job& job = instance.job(j);
      if (job.tb >= hb && job.te <= r.tel - r.tbr && job.te <= hb + r.tm) {
        block.bl.push_back(static_cast<VertexId>(vertices.size()));
        vertices.push_back({Vertex::Kind::job, j, hb, Phase::before_lunch, 0});
      }
    }
    for (JobIndex j : order) {
      const Job& job = instance.job(j);
      if (job.tb >= hb && job.tb >= r.tbl + r.tbr && job.te <= hb + r.tm) {
        block.al.push_back(static_cast<VertexId>(vertices.size()));
        vertices.push_back({Vertex::Kind::job, j, hb, Phase::after_lunch, 0});
      }
    }
    blocks.push_back(std::move(block));
  }
  std::vector<VertexId> ends;
  for (Minutes he : r.hf_set) {
    ends.push_back(static_cast<VertexId>(vertices.size()));
    vertices.push_back({Vertex::Kind::end, 0, 0, Phase::before_lunch, he});
  }
  const auto dest = static_cast<VertexId>(vertices.size());
  vertices.push_back(Vertex{Vertex::Kind::destination});

  auto job_of = [&](VertexId v) -> const Job& {
    return instance.job(vertices[v].job);
  };

  for (const Block& b : blocks) {
    if (b.hb <= r.tel - r.tml) {
      for (VertexId v : b.bl) arcs.push_back({0, v, 0.0});
    } else {
      for (VertexId v : b.al) arcs.push_back({0, v, 0.0});
    }
    for (VertexId u : b.bl) {
      const Job& ju = job_of(u);
      for (VertexId v : b.bl) {
        if (ju.te <= job_of(v).tb) arcs.push_back({u, v, 0.0});
      }
      for (VertexId v : b.al) {
        if (ju.te + r.tbr <= job_of(v).tb) arcs.push_back({u, v, 0.0});
      }
      for (VertexId e : ends) {
        const Minutes he = vertices[e].he;
        const Minutes earliest = he < r.tbl + r.tml ? ju.te : ju.te + r.tbr;
        if (earliest <= he && he <= b.hb + r.tm)
          arcs.push_back({u, e, instance.wage()(he - b.hb)});
      }
    }
    for (VertexId u : b.al) {
      const Job& ju = job_of(u);
      for (VertexId v : b.al) {
        if (ju.te <= job_of(v).tb) arcs.push_back({u, v, 0.0});
      }
      for (VertexId e : ends) {
        const Minutes he = vertices[e].he;
        if (he >= r.tbl + r.tml && ju.te <= he && he <= b.hb + r.tm)
          arcs.push_back({u, e, instance.wage()(he - b.hb)});
      }
    }
  }
  for (VertexId e : ends) arcs.push_back({e, dest, 0.0});

  // Keep only vertices on some o-d path. Vertex ids are topological, so one
  // forward and one backward sweep over sorted arcs suffice.
  std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
  std::vector<char> from_origin(vertices.size(), 0), to_dest(vertices.size(), 0);
  from_origin[0] = 1;
  for (const Arc& a : arcs) {
    if (from_origin[a.tail]) from_origin[a.head] = 1;
  }
  to_dest[dest] = 1;
  for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) {
    if (to_dest[it->head]) to_dest[it->tail] = 1;
  }
  std::vector<VertexId> remap(vertices.size(), 0);
  std::vector<Vertex> kept;
  for (VertexId v = 0; v < vertices.size(); ++v) {
    const bool keep = v == 0 || v == dest || (from_origin[v] && to_dest[v]);
    if (keep) {
      remap[v] = static_cast<VertexId>(kept.size());
      kept.push_back(vertices[v]);
    } else {
      remap[v] = std::numeric_limits<VertexId>::max();
    }
  }
  std::vector<Arc> kept_arcs;
  for (const Arc& a : arcs) {
    if (remap[a.tail] == std::numeric_limits<VertexId>::max() ||
        remap[a.head] == std::numeric_limits<VertexId>::max())
      continue;
    kept_arcs.push_back({remap[a.tail], remap[a.head], a.wage_cost});
  }

  Digraph g;
  g.vertices_ = std::move(kept);
  g.arcs_ = std::move(kept_arcs);
  g.by_job_.assign(instance.job_count(), {});
  g.index();
  return g;
}

Shift path_to_shift(const Path& path, const Digraph& digraph,
                    const Instance& instance) {
  using Kind = Vertex::Kind;
  if (path.size() < 4 || path.front() != digraph.origin() ||
      path.back() != digraph.destination())
    throw InvalidInput("path_to_shift: not an o-d path");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!digraph.find_arc(path[i], path[i + 1]))
      throw InvalidInput("path_to_shift: consecutive vertices are not an arc");
  }
  const Vertex& end = digraph.vertex(path[path.size() - 2]);
  if (end.kind != Kind::end) throw InvalidInput("path_to_shift: no end vertex");

  const RuleParams& r = instance.rules();
  Shift shift;
  shift.hb = digraph.vertex(path[1]).hb;
  shift.he = end.he;
  for (std::size_t i = 1; i + 2 < path.size(); ++i) {
    const Vertex& v = digraph.vertex(path[i]);
    if (v.kind != Kind::job) throw InvalidInput("path_to_shift: malformed path");
    shift.activities.push_back(JobRef{v.job});
    if (v.phase != Phase::before_lunch) continue;
    const Vertex& next = digraph.vertex(path[i + 1]);
    if (next.kind == Kind::job && next.phase == Phase::after_lunch) {
      const Minutes te = std::min(instance.job(next.job).tb, r.tel);
      shift.activities.push_back(Break{te - r.tbr, te});
    } else if (next.kind == Kind::end && next.he >= r.tbl + r.tml) {
      const Minutes te = std::min(next.he, r.tel);
      shift.activities.push_back(Break{te - r.tbr, te});
    }
  }
  return shift;
}

Path shift_to_path(const Shift& shift, const Digraph& digraph,
                   const Instance& instance) {
  const RuleParams& r = instance.rules();
  if (shift.break_count() > 1)
    throw EncodingError("shift_to_path: more than one break");
  for (const auto& a : shift.activities) {
    if (const auto* j = std::get_if<JobRef>(&a)) instance.job(j->job);
  }

  Path path{digraph.origin()};
  bool after_break = false;
  const bool starts_after_lunch = shift.hb > r.tel - r.tml;
  for (const auto& a : shift.activities) {
    if (std::holds_alternative<Break>(a)) {
      after_break = true;
      continue;
    }
    const JobIndex j = std::get<JobRef>(a).job;
    const Phase phase = after_break || starts_after_lunch ? Phase::after_lunch
                                                          : Phase::before_lunch;
    auto v = digraph.job_vertex(j, shift.hb, phase);
    if (!v)
      throw EncodingError("shift_to_path: job '" + instance.job(j).id +
                          "' has no vertex for this begin time and phase");
    path.push_back(*v);
  }
  auto e = digraph.end_vertex(shift.he);
  if (!e) throw EncodingError("shift_to_path: end time has no vertex");
  path.push_back(*e);
  path.push_back(digraph.destination());

  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!digraph.find_arc(path[i], path[i + 1]))
      throw EncodingError("shift_to_path: shift violates an arc guard");
  }
  if (path_to_shift(path, digraph, instance) != shift)
    throw EncodingError("shift_to_path: shift is not well-scheduled");
  return path;
}

std::uint64_t count_od_paths(const Digraph& digraph) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> count(digraph.vertex_count(), 0);
  count[digraph.destination()] = 1;
  for (VertexId v = static_cast<VertexId>(digraph.vertex_count()); v-- > 0;) {
    for (ArcId a : digraph.out_arcs(v)) {
      const std::uint64_t add = count[digraph.arc(a).head];
      count[v] = kMax - count[v] < add ? kMax : count[v] + add;
    }
  }
  return count[digraph.origin()];
}

std::vector<Path> enumerate_all_paths(const Digraph& digraph,
                                      std::uint64_t cap) {
  const std::uint64_t total = count_od_paths(digraph);
  if (total > cap)
    throw CapExceeded("enumerate_all_paths: " + std::to_string(total) +
                      " o-d paths exceed the cap of " + std::to_string(cap));
  std::vector<Path> out;
  out.reserve(total);
  Path current{digraph.origin()};
  std::vector<std::size_t> next_out{0};
  while (!current.empty()) {
    const VertexId v = current.back();
    const auto& outs = digraph.out_arcs(v);
    if (v == digraph.destination()) {
      out.push_back(current);
    }
    if (next_out.back() < outs.size()) {
      const VertexId w = digraph.arc(outs[next_out.back()++]).head;
      current.push_back(w);
      next_out.push_back(0);
    } else {
      current.pop_back();
      next_out.pop_back();
    }
  }
  return out;
}

std::vector<Shift> enumerate_all_shifts(const Digraph& digraph,
                                        const Instance& instance,
                                        std::uint64_t cap) {
  std::vector<Shift> shifts;
  for (const Path& p : enumerate_all_paths(digraph, cap))
    shifts.push_back(path_to_shift(p, digraph, instance));
  return shifts;
}

void write_dot(std::ostream& os, const Digraph& digraph,
               const Instance& instance) {
  os << "digraph shifts {\n  rankdir=LR;\n";
  for (VertexId v = 0; v < digraph.vertex_count(); ++v) {
    const Vertex& x = digraph.vertex(v);
    os << "  v" << v << " [label=\"";
    switch (x.kind) {
      case Vertex::Kind::origin: os << 'o'; break;
      case Vertex::Kind::destination: os << 'd'; break;
      case Vertex::Kind::end: os << x.he; break;
      case Vertex::Kind::job:
        os << '(' << instance.job(x.job).id << ',' << x.hb << ','
           << phase_name(x.phase) << ')';
        break;
    }
    os << "\"];\n";
  }
  for (const Arc& a : digraph.arcs()) {
    os << "  v" << a.tail << " -> v" << a.head;
    if (a.wage_cost != 0.0) os << " [label=\"" << a.wage_cost << "\"]";
    os << ";\n";
  }
  os << "}\n";
}

}  // namespace shiftcg
