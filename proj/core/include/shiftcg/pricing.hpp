#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "shiftcg/delay_monoid.hpp"
#include "shiftcg/digraph.hpp"
#include "shiftcg/model.hpp"

namespace shiftcg {

// Arc resources stored as shared per-scenario profiles plus one real per arc.
// Profile 0 is the identity.
class ArcResources {
 public:
  std::size_t scenario_count() const { return scenarios_; }
  std::size_t arc_count() const { return arc_profile_.size(); }

  // Per-scenario elements of arc a, scenario_count() entries.
  const SElement* elements(ArcId a) const {
    return profiles_.data() + std::size_t{arc_profile_[a]} * scenarios_;
  }
  double lambda(ArcId a) const { return arc_lambda_[a]; }
  Resource resource(ArcId a) const;

  // One explicit resource per arc; all must have the same scenario count.
  static ArcResources from_resources(const std::vector<Resource>& per_arc,
                                     std::size_t scenarios);

 private:
  friend ArcResources build_arc_resources(const Digraph&, const Instance&,
                                          const std::vector<double>&);

  std::size_t scenarios_ = 0;
  std::vector<SElement> profiles_;
  std::vector<std::uint32_t> arc_profile_;
  std::vector<double> arc_lambda_;
};

// Job-tailed arcs carry, per scenario, bg = xb, dt = (1, -inf) and
// do = (1, -inf) if very late, else (0, xe) or (0, xe + tbr) when the arc
// crosses the break. Real part: -dual on job -> job arcs, wage - dual on
// job -> end arcs. Other arcs carry the identity. `duals` is indexed by job
// and must cover every job.
ArcResources build_arc_resources(const Digraph& digraph,
                                 const Instance& instance,
                                 const std::vector<double>& duals);

// Left-to-right sum of the arc resources along a vertex sequence.
Resource path_resource(const Path& path, const Digraph& digraph,
                       const ArcResources& arcres);

// Per-vertex lower bounds: for every v-d path Q some b in bounds[v] has
// b <= q_Q. An empty list means d is unreachable.
struct BoundSet {
  std::vector<std::vector<Resource>> per_vertex;
  std::size_t kappa = 1;
};

// Reverse topological meet DP. kappa > 1 is accepted and treated as 1.
// Throws InvalidInput on a cyclic digraph.
BoundSet compute_bounds(const Digraph& digraph, const ArcResources& arcres,
                        std::size_t kappa = 1);

// Optimistic completion cost of a partial path with resource q ending at v;
// +inf if bounds[v] is empty.
double key(const Resource& q, VertexId v, const BoundSet& bounds, double cbu);

struct PricedPath {
  Path path;
  double cost = 0.0;
};

struct PricingOptions {
  std::size_t max_candidates = 10'000'000;  // cap on the candidate list
  std::ostream* trace = nullptr;             // CSV: iteration,list_size,incumbent
  std::size_t trace_every = 1000;
  // Threshold variant: keep collecting paths of cost <= delta after the
  // first one until this many are held.
  std::size_t max_columns = 1;
};

struct PricingStats {
  std::size_t iterations = 0;
  std::size_t pushed = 0;
  std::size_t max_list_size = 0;
};

struct PricingResult {
  std::optional<PricedPath> best;
  bool stopped_early = false;  // threshold variant returned before optimality
  std::vector<PricedPath> extra;  // further paths of cost <= delta, by extraction order
  PricingStats stats;
};

// Best-first enumeration driven by key. Candidates are extracted by
// (key, length, vertex sequence). Throws CapExceeded when the candidate list
// outgrows options.max_candidates.
PricingResult enumerate_min(const Digraph& digraph, const ArcResources& arcres,
                            const BoundSet& bounds, double cbu,
                            const PricingOptions& options = {});

// As enumerate_min, but returns the first completed path of cost <= delta,
// plus up to options.max_columns - 1 more in `extra`.
PricingResult enumerate_threshold(const Digraph& digraph,
                                  const ArcResources& arcres,
                                  const BoundSet& bounds, double cbu,
                                  double delta,
                                  const PricingOptions& options = {});

// Every o-d path of cost <= gap, in extraction order.
std::vector<PricedPath> enumerate_below(const Digraph& digraph,
                                        const ArcResources& arcres,
                                        const BoundSet& bounds, double cbu,
                                        double gap,
                                        const PricingOptions& options = {},
                                        PricingStats* stats = nullptr);

}  // namespace shiftcg
