#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "shiftcg/model.hpp"

namespace shiftcg::cli {

// Random instances. "fixed-window": every shift runs 6:00 to 12:00 and lunch
// lies outside it. "full-day": hourly begin and end times, 10 h maximum,
// lunch window 11:30 to 14:00.
struct GeneratorOptions {
  std::size_t n_jobs = 20;
  std::size_t n_scenarios = 20;
  std::string profile = "full-day";
  double delay_mean = 5.0;       // minutes, before truncation at 0
  double delay_sd = 15.0;
  double very_late_prob = 0.02;
  Minutes min_duration = 30;
  Minutes max_duration = 90;
  std::optional<double> cbu;     // default: two hours at the extra-hour rate
  std::uint64_t seed = 1;
};

RuleParams profile_rules(const std::string& profile);

// Deterministic for fixed options. Every job lies on at least one shift;
// realized begins are tb + max(0, round(normal(mean, sd))) and durations are
// preserved.
Instance generate_instance(const GeneratorOptions& params);

}  // namespace shiftcg::cli
