#include "shiftcg/pricing.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>

#include "shiftcg/error.hpp"

namespace shiftcg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

bool crosses_break(const Vertex& tail, const Vertex& head,
                   const RuleParams& rules) {
  if (tail.phase != Phase::before_lunch) return false;
  if (head.kind == Vertex::Kind::job) return head.phase == Phase::after_lunch;
  return head.kind == Vertex::Kind::end && head.he >= rules.tbl + rules.tml;
}

enum class Mode { min, threshold, below };

struct Node {
  std::uint32_t parent;
  VertexId vertex;
  ArcId arc;
  std::uint32_t length;
  double key;
};

class Search {
 public:
  Search(const Digraph& g, const ArcResources& r, const BoundSet& b,
         double cbu, const PricingOptions& opt)
      : g_(g), r_(r), b_(b), cbu_(cbu), opt_(opt), n_(r.scenario_count()),
        heap_(Order{this}) {
    if (b.per_vertex.size() != g.vertex_count())
      throw InvalidInput("pricing: bound set does not match the digraph");
    if (r.arc_count() != g.arc_count())
      throw InvalidInput("pricing: arc resources do not match the digraph");
  }

  // threshold: early exit at cost <= limit. below: collect cost <= limit.
  PricingResult run(Mode mode, double limit, std::vector<PricedPath>* below) {
    PricingResult result;
    const VertexId o = g_.origin();
    const VertexId d = g_.destination();
    double ub = kInf;
    const double root_key = root_key_value();
    if (root_key == kInf) return result;
    nodes_.push_back({kNone, o, kNone, 0, root_key});
    heap_.push(0);
    result.stats.pushed = 1;

    // Threshold collection of several columns switches to below-style
    // pruning once the first one is found.
    bool collecting = false;
    auto inclusive = [&] { return mode == Mode::below || collecting; };
    std::vector<SElement> q(n_);
    while (!heap_.empty()) {
      const std::uint32_t id = heap_.top();
      heap_.pop();
      const Node node = nodes_[id];
      const double bound = inclusive() ? limit : ub;
      if (inclusive() ? node.key > bound : node.key >= bound) break;
      ++result.stats.iterations;
      trace(result.stats.iterations, ub);

      double lam = 0.0;
      materialize(node, q, lam);
      if (node.vertex == d) {
        const double cost = cost_of(q, lam);
        if (mode == Mode::below) {
          if (cost <= limit) below->push_back({path_of(id), cost});
        } else if (collecting) {
          if (cost <= limit) result.extra.push_back({path_of(id), cost});
          if (result.extra.size() + 1 >= opt_.max_columns) break;
        } else if (cost < ub) {
          ub = cost;
          result.best = PricedPath{path_of(id), cost};
          if (mode == Mode::threshold && cost <= limit) {
            result.stopped_early = true;
            if (opt_.max_columns <= 1) break;
            collecting = true;
          }
        }
        continue;
      }

      const std::uint32_t slot = static_cast<std::uint32_t>(store_lambda_.size());
      store_.insert(store_.end(), q.begin(), q.end());
      store_lambda_.push_back(lam);
      expanded_slot_.resize(nodes_.size(), kNone);
      expanded_slot_[id] = slot;

      for (ArcId a : g_.out_arcs(node.vertex)) {
        const VertexId w = g_.arc(a).head;
        const double k = extension_key(slot, a, w);
        const double bound_now = inclusive() ? limit : ub;
        if (inclusive() ? !(k <= bound_now) : !(k < bound_now)) continue;
        nodes_.push_back({id, w, a, node.length + 1, k});
        heap_.push(static_cast<std::uint32_t>(nodes_.size() - 1));
        ++result.stats.pushed;
        if (heap_.size() > opt_.max_candidates)
          throw CapExceeded("pricing: candidate list exceeded " +
                            std::to_string(opt_.max_candidates) + " entries");
      }
      result.stats.max_list_size =
          std::max(result.stats.max_list_size, heap_.size());
    }
    return result;
  }

 private:
  struct Order {
    const Search* s;
    // std::priority_queue pops the greatest element; invert to pop the least.
    bool operator()(std::uint32_t x, std::uint32_t y) const {
      return s->before(y, x);
    }
  };

  // Strict extraction order: key, then length, then vertex sequence.
  bool before(std::uint32_t x, std::uint32_t y) const {
    const Node& a = nodes_[x];
    const Node& b = nodes_[y];
    if (a.key != b.key) return a.key < b.key;
    if (a.length != b.length) return a.length < b.length;
    // Equal length: walk up to the first shared ancestor, remembering the
    // vertices just below it.
    VertexId va = a.vertex, vb = b.vertex;
    std::uint32_t pa = a.parent, pb = b.parent;
    while (pa != pb) {
      va = nodes_[pa].vertex;
      vb = nodes_[pb].vertex;
      pa = nodes_[pa].parent;
      pb = nodes_[pb].parent;
    }
    if (va != vb) return va < vb;
    return x < y;
  }

  double root_key_value() const {
    const auto& list = b_.per_vertex[g_.origin()];
    double best = kInf;
    for (const Resource& b : list) best = std::min(best, resource_cost(b, cbu_));
    return best;
  }

  void materialize(const Node& node, std::vector<SElement>& q,
                   double& lam) const {
    if (node.parent == kNone) {
      std::fill(q.begin(), q.end(), SElement::neutral());
      lam = 0.0;
      return;
    }
    const std::uint32_t slot = expanded_slot_[node.parent];
    const SElement* p = store_.data() + std::size_t{slot} * n_;
    const SElement* e = r_.elements(node.arc);
    for (std::size_t w = 0; w < n_; ++w) q[w] = s_plus(p[w], e[w]);
    lam = store_lambda_[slot] + r_.lambda(node.arc);
  }

  double cost_of(const std::vector<SElement>& q, double lam) const {
    if (n_ == 0) return lam;
    double total = 0.0;
    for (const SElement& x : q) {
      if (x.is_top()) return kInf;
      total += s_cost(x);
    }
    return cbu_ * total / static_cast<double>(n_) + lam;
  }

  double extension_key(std::uint32_t slot, ArcId a, VertexId w) const {
    const SElement* p = store_.data() + std::size_t{slot} * n_;
    const SElement* e = r_.elements(a);
    const double lam = store_lambda_[slot] + r_.lambda(a);
    double best = kInf;
    for (const Resource& b : b_.per_vertex[w]) {
      double total = 0.0;
      bool top = false;
      for (std::size_t s = 0; s < n_; ++s) {
        const SElement x = s_plus(s_plus(p[s], e[s]), b.per_scenario[s]);
        if (x.is_top()) {
          top = true;
          break;
        }
        total += s_cost(x);
      }
      if (top) continue;
      const double k =
          n_ == 0 ? lam + b.lambda
                  : cbu_ * total / static_cast<double>(n_) + (lam + b.lambda);
      best = std::min(best, k);
    }
    return best;
  }

  Path path_of(std::uint32_t id) const {
    Path p;
    for (std::uint32_t x = id; x != kNone; x = nodes_[x].parent)
      p.push_back(nodes_[x].vertex);
    std::reverse(p.begin(), p.end());
    return p;
  }

  void trace(std::size_t iteration, double ub) const {
    if (!opt_.trace || opt_.trace_every == 0 || iteration % opt_.trace_every)
      return;
    *opt_.trace << iteration << ',' << heap_.size() << ',' << ub << '\n';
  }

  const Digraph& g_;
  const ArcResources& r_;
  const BoundSet& b_;
  double cbu_;
  const PricingOptions& opt_;
  std::size_t n_;

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> expanded_slot_;
  std::vector<SElement> store_;
  std::vector<double> store_lambda_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, Order> heap_;
};

}  // namespace

Resource ArcResources::resource(ArcId a) const {
  const SElement* e = elements(a);
  return Resource{std::vector<SElement>(e, e + scenarios_), arc_lambda_.at(a)};
}

ArcResources ArcResources::from_resources(const std::vector<Resource>& per_arc,
                                          std::size_t scenarios) {
  ArcResources r;
  r.scenarios_ = scenarios;
  r.profiles_.reserve(per_arc.size() * scenarios);
  for (const Resource& res : per_arc) {
    if (res.per_scenario.size() != scenarios)
      throw InvalidInput("arc resource has the wrong scenario count");
    r.arc_profile_.push_back(static_cast<std::uint32_t>(r.arc_lambda_.size()));
    r.arc_lambda_.push_back(res.lambda);
    r.profiles_.insert(r.profiles_.end(), res.per_scenario.begin(),
                       res.per_scenario.end());
  }
  return r;
}

ArcResources build_arc_resources(const Digraph& digraph,
                                 const Instance& instance,
                                 const std::vector<double>& duals) {
  if (duals.size() != instance.job_count())
    throw InvalidInput("build_arc_resources: expected " +
                       std::to_string(instance.job_count()) + " duals, got " +
                       std::to_string(duals.size()));
  const RuleParams& rules = instance.rules();
  const std::size_t n = instance.scenario_count();

  ArcResources r;
  r.scenarios_ = n;
  // Profile 0: identity. Profile 1 + 2j: job j. Profile 2 + 2j: job j
  // followed by the break.
  r.profiles_.assign((1 + 2 * instance.job_count()) * n, SElement::neutral());
  for (JobIndex j = 0; j < instance.job_count(); ++j) {
    for (std::size_t w = 0; w < n; ++w) {
      const JobOutcome& x = instance.scenarios()[w].realized[j];
      SElement plain = SElement::triple(x.xb, 0, x.xe, 1, kMinusInfinity);
      SElement brk = SElement::triple(x.xb, 0, x.xe + rules.tbr, 1,
                                      kMinusInfinity);
      if (x.very_late) {
        plain.do_c = brk.do_c = 1;
        plain.do_t = brk.do_t = kMinusInfinity;
      }
      r.profiles_[(1 + 2 * j) * n + w] = plain;
      r.profiles_[(2 + 2 * j) * n + w] = brk;
    }
  }

  r.arc_profile_.assign(digraph.arc_count(), 0);
  r.arc_lambda_.assign(digraph.arc_count(), 0.0);
  for (ArcId a = 0; a < digraph.arc_count(); ++a) {
    const Arc& arc = digraph.arc(a);
    const Vertex& tail = digraph.vertex(arc.tail);
    if (tail.kind != Vertex::Kind::job) continue;
    const Vertex& head = digraph.vertex(arc.head);
    const bool brk = crosses_break(tail, head, rules);
    r.arc_profile_[a] = static_cast<std::uint32_t>(1 + 2 * tail.job + (brk ? 1 : 0));
    r.arc_lambda_[a] = arc.wage_cost - duals[tail.job];
  }
  return r;
}

Resource path_resource(const Path& path, const Digraph& digraph,
                       const ArcResources& arcres) {
  Resource q = identity_resource(arcres.scenario_count());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto a = digraph.find_arc(path[i], path[i + 1]);
    if (!a) throw InvalidInput("path_resource: consecutive vertices are not an arc");
    q = resource_plus(q, arcres.resource(*a));
  }
  return q;
}

BoundSet compute_bounds(const Digraph& digraph, const ArcResources& arcres,
                        std::size_t kappa) {
  const auto order = digraph.topological_order();
  if (order.size() != digraph.vertex_count())
    throw InvalidInput("compute_bounds: digraph has a cycle");
  BoundSet bounds;
  bounds.kappa = 1;
  (void)kappa;
  bounds.per_vertex.assign(digraph.vertex_count(), {});
  const VertexId d = digraph.destination();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (v == d) {
      bounds.per_vertex[v].push_back(identity_resource(arcres.scenario_count()));
      continue;
    }
    std::optional<Resource> acc;
    for (ArcId a : digraph.out_arcs(v)) {
      const auto& next = bounds.per_vertex[digraph.arc(a).head];
      if (next.empty()) continue;
      Resource cand = resource_plus(arcres.resource(a), next.front());
      acc = acc ? resource_meet(*acc, cand) : std::move(cand);
    }
    if (acc) bounds.per_vertex[v].push_back(std::move(*acc));
  }
  return bounds;
}

double key(const Resource& q, VertexId v, const BoundSet& bounds, double cbu) {
  double best = kInf;
  for (const Resource& b : bounds.per_vertex.at(v))
    best = std::min(best, resource_cost(resource_plus(q, b), cbu));
  return best;
}

PricingResult enumerate_min(const Digraph& digraph, const ArcResources& arcres,
                            const BoundSet& bounds, double cbu,
                            const PricingOptions& options) {
  Search s(digraph, arcres, bounds, cbu, options);
  return s.run(Mode::min, kInf, nullptr);
}

PricingResult enumerate_threshold(const Digraph& digraph,
                                  const ArcResources& arcres,
                                  const BoundSet& bounds, double cbu,
                                  double delta, const PricingOptions& options) {
  Search s(digraph, arcres, bounds, cbu, options);
  return s.run(Mode::threshold, delta, nullptr);
}

std::vector<PricedPath> enumerate_below(const Digraph& digraph,
                                        const ArcResources& arcres,
                                        const BoundSet& bounds, double cbu,
                                        double gap,
                                        const PricingOptions& options,
                                        PricingStats* stats) {
  std::vector<PricedPath> out;
  Search s(digraph, arcres, bounds, cbu, options);
  PricingResult r = s.run(Mode::below, gap, &out);
  if (stats) *stats = r.stats;
  return out;
}

}  // namespace shiftcg
