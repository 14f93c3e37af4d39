#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "shiftcg/model.hpp"

namespace shiftcg {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;
using Path = std::vector<VertexId>;

enum class Phase : std::uint8_t { before_lunch, after_lunch };

struct Vertex {
  enum class Kind : std::uint8_t { origin, job, end, destination };

  Kind kind = Kind::origin;
  JobIndex job = 0;                  // job vertices only
  Minutes hb = 0;                    // job vertices only
  Phase phase = Phase::before_lunch; // job vertices only
  Minutes he = 0;                    // end vertices only

  bool operator==(const Vertex&) const = default;
};

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  double wage_cost = 0.0;  // cw(he - hb) on job -> end arcs, 0 elsewhere
};

// Acyclic digraph whose o-d paths are the well-scheduled shifts.
//
// Vertices are stored in a topological order: origin, then per begin time
// the before-lunch and after-lunch job vertices sorted by (tb, te, id), then
// end vertices by he, then the destination. Vertices that lie on no o-d path
// are pruned.
class Digraph {
 public:
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(v); }
  const Arc& arc(ArcId a) const { return arcs_.at(a); }

  // Out-arcs of v sorted by head index.
  const std::vector<ArcId>& out_arcs(VertexId v) const { return out_.at(v); }
  const std::vector<ArcId>& in_arcs(VertexId v) const { return in_.at(v); }

  VertexId origin() const { return 0; }
  VertexId destination() const {
    return static_cast<VertexId>(vertices_.size() - 1);
  }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  // Arc tail -> head, if present.
  std::optional<ArcId> find_arc(VertexId tail, VertexId head) const;

  std::optional<VertexId> job_vertex(JobIndex j, Minutes hb, Phase phase) const;
  std::optional<VertexId> end_vertex(Minutes he) const;

  // Job vertices of job j, across begin times and phases.
  const std::vector<VertexId>& vertices_of_job(JobIndex j) const {
    return by_job_.at(j);
  }

  // Kahn's algorithm; empty if the graph has a cycle.
  std::vector<VertexId> topological_order() const;

  static Digraph from_parts(std::vector<Vertex> vertices, std::vector<Arc> arcs,
                            std::size_t job_count);

 private:
  friend Digraph build_digraph(const Instance& instance);

  void index();

  std::vector<Vertex> vertices_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::vector<std::vector<VertexId>> by_job_;
  std::map<std::tuple<JobIndex, Minutes, Phase>, VertexId> job_lookup_;
  std::map<Minutes, VertexId> end_lookup_;
};

Digraph build_digraph(const Instance& instance);

// Decodes an o-d path. Throws InvalidInput if `path` is not an o-d path.
Shift path_to_shift(const Path& path, const Digraph& digraph,
                    const Instance& instance);

// Inverse of path_to_shift. Throws EncodingError if the shift is not a
// well-scheduled shift represented in the digraph.
Path shift_to_path(const Shift& shift, const Digraph& digraph,
                   const Instance& instance);

// Number of o-d paths, saturating at uint64 max.
std::uint64_t count_od_paths(const Digraph& digraph);

inline constexpr std::uint64_t kDefaultPathCap = 1'000'000;

// Every o-d path in depth-first order. Throws CapExceeded if there are more
// than `cap` paths; never truncates.
std::vector<Path> enumerate_all_paths(const Digraph& digraph,
                                      std::uint64_t cap = kDefaultPathCap);

std::vector<Shift> enumerate_all_shifts(const Digraph& digraph,
                                        const Instance& instance,
                                        std::uint64_t cap = kDefaultPathCap);

// Graphviz rendering; job vertices are labelled "(job,hb,phase)".
void write_dot(std::ostream& os, const Digraph& digraph,
               const Instance& instance);

}  // namespace shiftcg
