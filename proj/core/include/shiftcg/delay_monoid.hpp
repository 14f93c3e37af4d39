#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace shiftcg {

// Minutes extended with a -inf sentinel that compares below every finite time.
using ExtTime = std::int32_t;
inline constexpr ExtTime kMinusInfinity = std::numeric_limits<ExtTime>::min();

using Count = std::int32_t;

// Element of the delay monoid: the neutral element, the absorbing top, or a
// triple summarizing a job sequence under one scenario.
//
//   bg: realized begin of the first job
//   do: (rescheduled count, end of last operated job) if the first job is kept
//   dt: the same pair if the first job is rescheduled
//
// A triple is in S iff
//   do_t <  dt_t  =>  do_c == dt_c
//   do_t >  dt_t  =>  do_c == dt_c - 1
//   do_t == dt_t  =>  do_c in {dt_c, dt_c - 1}
struct SElement {
  enum class Kind : std::uint8_t { neutral, triple, top };

  Kind kind = Kind::neutral;
  ExtTime bg = 0;
  Count do_c = 0;
  ExtTime do_t = 0;
  Count dt_c = 0;
  ExtTime dt_t = 0;

  static constexpr SElement neutral() { return {}; }
  static constexpr SElement top() { return {Kind::top, 0, 0, 0, 0, 0}; }
  static constexpr SElement triple(ExtTime bg, Count do_c, ExtTime do_t,
                                   Count dt_c, ExtTime dt_t) {
    return {Kind::triple, bg, do_c, do_t, dt_c, dt_t};
  }

  bool is_neutral() const { return kind == Kind::neutral; }
  bool is_top() const { return kind == Kind::top; }
  bool is_triple() const { return kind == Kind::triple; }

  bool operator==(const SElement& o) const {
    if (kind != o.kind) return false;
    if (kind != Kind::triple) return true;
    return bg == o.bg && do_c == o.do_c && do_t == o.do_t && dt_c == o.dt_c &&
           dt_t == o.dt_t;
  }
};

// Membership in S. Neutral and top are always members; counts must be >= 0.
bool in_s(const SElement& q);

// Not commutative. Neutral is the identity and top absorbs.
SElement s_plus(const SElement& a, const SElement& b);

// Partial order: neutral is the bottom, top the top; triples compare by
// bg (reversed) and by (count, time) lexicographically on do and dt.
bool s_leq(const SElement& a, const SElement& b);

// Greatest lower bound under s_leq.
SElement s_meet(const SElement& a, const SElement& b);

// Rescheduled-job count; 0 for neutral, +inf for top.
double s_cost(const SElement& q);

std::string to_string(const SElement& q);

// One element per scenario plus a real accumulator.
struct Resource {
  std::vector<SElement> per_scenario;
  double lambda = 0.0;

  bool operator==(const Resource&) const = default;
};

Resource identity_resource(std::size_t scenarios);

// Componentwise operations; throw InvalidInput on a scenario-count mismatch.
Resource resource_plus(const Resource& a, const Resource& b);
bool resource_leq(const Resource& a, const Resource& b);
Resource resource_meet(const Resource& a, const Resource& b);

// (cbu / |scenarios|) * sum of s_cost + lambda; lambda alone with no scenarios.
double resource_cost(const Resource& r, double cbu);

// Every path is resource-feasible.
inline bool resource_feasible(const Resource&) { return true; }

}  // namespace shiftcg
