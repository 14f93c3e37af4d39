#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "random_cases.hpp"
#include "shiftcg/error.hpp"
#include "shiftcg/master.hpp"

using namespace shiftcg;

namespace {

Instance jobs_only(std::size_t n) {
  std::vector<Job> jobs;
  for (std::size_t j = 0; j < n; ++j)
    jobs.push_back({"j" + std::to_string(j), 400 + 10 * static_cast<int>(j),
                    405 + 10 * static_cast<int>(j)});
  const RuleParams r = cases::single_window_rules();
  return Instance(jobs, {}, r, WageCurve::standard(r.tm), 0.0);
}

// Pools are not checked for shift feasibility, so synthetic shifts keyed by
// their position are enough here.
Shift synthetic(std::uint32_t mask, int tag) {
  Shift s{tag, tag, {}};
  for (JobIndex j = 0; j < 32; ++j)
    if (mask >> j & 1u) s.activities.push_back(JobRef{j});
  return s;
}

ColumnPool pool_of(const std::vector<double>& costs, const std::vector<std::uint32_t>& masks) {
  ColumnPool p;
  for (std::size_t i = 0; i < costs.size(); ++i)
    p.add(synthetic(masks[i], static_cast<int>(i)), costs[i]);
  return p;
}

}  // namespace

TEST_SUITE("master") {

TEST_CASE("pool deduplicates shifts") {
  const Instance inst = jobs_only(2);
  ColumnPool p;
  CHECK(p.add(synthetic(0b01, 0), 3.0));
  CHECK_FALSE(p.add(synthetic(0b01, 0), 4.0));
  CHECK(p.add(synthetic(0b01, 1), 4.0));
  CHECK(p.size() == 2);
  CHECK(p.contains(synthetic(0b01, 1)));
  CHECK(p[0].jobs == std::vector<JobIndex>{0});
  CHECK(p[0].cost == 3.0);

  const Shift real{360, 720, {JobRef{1}, JobRef{0}}};
  CHECK(p.add(real, inst));
  CHECK(p[2].cost == inst.wage()(360));
  CHECK(p[2].jobs == std::vector<JobIndex>{0, 1});
}

TEST_CASE("exact partition is optimal with all ones") {
  const Instance inst = jobs_only(4);
  const ColumnPool p = pool_of({3.0, 5.0}, {0b0011, 0b1100});
  const LpOutcome lp = solve_lp(p, inst);
  CHECK(lp.objective == doctest::Approx(8.0));
  CHECK(lp.primal[0] == doctest::Approx(1.0));
  CHECK(lp.primal[1] == doctest::Approx(1.0));
  const IpOutcome ip = solve_ip(p, inst);
  CHECK(ip.objective == doctest::Approx(8.0));
  CHECK(ip.selected == std::vector<std::size_t>{0, 1});
}

TEST_CASE("cheaper of two identical columns") {
  const Instance inst = jobs_only(1);
  const ColumnPool p = pool_of({5.0, 7.0}, {0b1, 0b1});
  const LpOutcome lp = solve_lp(p, inst);
  CHECK(lp.objective == doctest::Approx(5.0));
  CHECK(lp.primal[0] == doctest::Approx(1.0));
  CHECK(lp.primal[1] == doctest::Approx(0.0));
  CHECK(lp.duals[0] <= 5.0 + 1e-9);
  CHECK(lp.duals[0] == doctest::Approx(5.0));
}

TEST_CASE("an uncovered job is named") {
  const Instance inst = jobs_only(3);
  const ColumnPool p = pool_of({1.0}, {0b011});
  try {
    solve_lp(p, inst);
    FAIL("expected an error");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("j2") != std::string::npos);
  }
  CHECK_THROWS_AS(solve_ip(p, inst), InvalidInput);
}

TEST_CASE("program layout") {
  const Instance inst = jobs_only(2);
  const ColumnPool p = pool_of({1.0, 2.0}, {0b01, 0b11});
  const LinearProgram lp = master_program(p, inst, true);
  CHECK(lp.var_count() == 2);
  REQUIRE(lp.rows.size() == 2);
  CHECK(lp.rows[0].name == "cover_j0");
  CHECK(lp.rows[0].sense == RowSense::ge);
  CHECK(lp.integer == std::vector<bool>{true, true});
}

TEST_CASE("random pools: bounds, duals and oracles") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> cost(1, 30);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 3 + round % 5;
    const Instance inst = jobs_only(n);
    std::vector<double> costs;
    std::vector<std::uint32_t> masks;
    double singles = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      masks.push_back(1u << j);
      costs.push_back(cost(rng) + 20);
      singles += costs.back();
    }
    std::uniform_int_distribution<std::uint32_t> m(1, (1u << n) - 1);
    const std::size_t extra = 2 + round % 8;
    for (std::size_t k = 0; k < extra; ++k) {
      masks.push_back(m(rng));
      costs.push_back(cost(rng));
    }
    const ColumnPool p = pool_of(costs, masks);
    const LpOutcome lp = solve_lp(p, inst);
    const IpOutcome ip = solve_ip(p, inst);
    CHECK(lp.objective <= ip.objective + 1e-9);
    CHECK(ip.objective <= singles + 1e-9);
    CHECK(lp.objective == doctest::Approx(oracle::cover_lp_by_vertices(costs, masks, n)));
    if (costs.size() <= 12)
      CHECK(ip.objective == doctest::Approx(oracle::min_cover(costs, masks, n)));
    double dual_total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      double rc = p[i].cost;
      for (JobIndex j : p[i].jobs) rc -= lp.duals[j];
      CHECK(rc >= -1e-7);
    }
    for (double d : lp.duals) {
      CHECK(d >= 0.0);
      dual_total += d;
    }
    CHECK(dual_total == doctest::Approx(lp.objective));

    // Another column can only help.
    ColumnPool bigger = p;
    bigger.add(synthetic(m(rng), 1000), cost(rng));
    CHECK(solve_lp(bigger, inst).objective <= lp.objective + 1e-9);
  }
}

}  // TEST_SUITE
