#include "shiftcg_cli/generator.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <random>

#include "shiftcg/digraph.hpp"
#include "shiftcg/error.hpp"

namespace shiftcg::cli {

namespace {

constexpr Minutes kGrid = 5;
constexpr double kExtraRate = 2.0;  // slope of WageCurve::standard

std::vector<Minutes> every_hour(Minutes from, Minutes to) {
  std::vector<Minutes> out;
  for (Minutes t = from; t <= to; t += 60) out.push_back(t);
  return out;
}

bool operable(const Job& job, const RuleParams& rules, const WageCurve& wage) {
  const Instance single({job}, {}, rules, wage, 0.0);
  return count_od_paths(build_digraph(single)) > 0;
}

}  // namespace

RuleParams profile_rules(const std::string& profile) {
  RuleParams r;
  if (profile == "fixed-window") {
    r.tm = 360;
    r.tbl = 780;
    r.tel = 900;
    r.tbr = 45;
    r.tml = 90;
    r.hb_set = {360};
    r.hf_set = {720};
  } else if (profile == "full-day") {
    r.tm = 600;
    r.tbl = 690;
    r.tel = 840;
    r.tbr = 45;
    r.tml = 90;
    r.hb_set = every_hour(300, 900);
    r.hf_set = every_hour(600, 1260);
  } else {
    throw InvalidInput("unknown profile '" + profile +
                       "' (expected fixed-window or full-day)");
  }
  return r;
}

Instance generate_instance(const GeneratorOptions& params) {
  if (params.n_jobs == 0) throw InvalidInput("generator: n_jobs must be positive");
  if (params.min_duration <= 0 || params.max_duration < params.min_duration)
    throw InvalidInput("generator: bad duration range");
  if (params.delay_sd < 0 || params.very_late_prob < 0 || params.very_late_prob > 1)
    throw InvalidInput("generator: bad delay parameters");

  const RuleParams rules = profile_rules(params.profile);
  const WageCurve wage = WageCurve::standard(rules.tm);
  const double cbu = params.cbu.value_or(120.0 * kExtraRate);
  const Minutes begin = rules.hb_set.front();
  const Minutes end = rules.hf_set.back();

  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<Minutes> duration(params.min_duration / kGrid,
                                                  params.max_duration / kGrid);
  const int width = params.n_jobs >= 100 ? 3 : 2;
  std::vector<Job> jobs;
  for (std::size_t k = 0; k < params.n_jobs; ++k) {
    char id[16];
    std::snprintf(id, sizeof id, "j%0*zu", width, k + 1);
    Job job{id, 0, 0};
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000)
        throw InvalidInput("generator: cannot place an operable job");
      const Minutes d = std::max<Minutes>(1, duration(rng)) * kGrid;
      std::uniform_int_distribution<Minutes> start(begin / kGrid, (end - d) / kGrid);
      job.tb = start(rng) * kGrid;
      job.te = job.tb + d;
      if (operable(job, rules, wage)) break;
    }
    jobs.push_back(std::move(job));
  }

  std::normal_distribution<double> delay(params.delay_mean, params.delay_sd);
  std::bernoulli_distribution late(params.very_late_prob);
  std::vector<Scenario> scenarios(params.n_scenarios);
  for (Scenario& s : scenarios) {
    for (const Job& j : jobs) {
      const auto shift = static_cast<Minutes>(std::max(0.0, std::round(delay(rng))));
      const Minutes xb = j.tb + shift;
      s.realized.push_back({xb, xb + (j.te - j.tb), late(rng)});
    }
  }
  return Instance(std::move(jobs), std::move(scenarios), rules, wage, cbu);
}

}  // namespace shiftcg::cli
