#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace shiftcg {

// Times are integer minutes of day throughout the model.
using Minutes = int;

struct RuleParams {
  Minutes tm = 600;   // maximum shift duration
  Minutes tbl = 690;  // lunch window begin
  Minutes tel = 840;  // lunch window end
  Minutes tbr = 45;   // break duration
  Minutes tml = 90;   // lunch-window overlap that makes a break mandatory
  std::vector<Minutes> hb_set;  // allowed begin times, strictly increasing
  std::vector<Minutes> hf_set;  // allowed end times, strictly increasing

  // Throws InvalidInput when an invariant is violated.
  void validate() const;

  // Length of [hb, he] inside the lunch window.
  Minutes lunch_overlap(Minutes hb, Minutes he) const;

  bool operator==(const RuleParams&) const = default;
};

// Piecewise-linear, non-decreasing wage as a function of shift duration.
class WageCurve {
 public:
  using Breakpoint = std::pair<Minutes, double>;

  WageCurve() = default;
  explicit WageCurve(std::vector<Breakpoint> breakpoints);

  // Flat 500 up to six hours, then 2 per extra minute up to tm.
  static WageCurve standard(Minutes tm);

  // Linear interpolation; constant extrapolation outside the breakpoints.
  double operator()(Minutes duration) const;

  const std::vector<Breakpoint>& breakpoints() const { return points_; }

  // Throws InvalidInput unless non-decreasing in both coordinates and
  // covering [0, tm].
  void validate(Minutes tm) const;

  bool operator==(const WageCurve&) const = default;

 private:
  std::vector<Breakpoint> points_;
};

struct Job {
  std::string id;
  Minutes tb = 0;
  Minutes te = 0;

  bool operator==(const Job&) const = default;
};

// Realized times of one job under one scenario.
struct JobOutcome {
  Minutes xb = 0;
  Minutes xe = 0;
  bool very_late = false;

  bool operator==(const JobOutcome&) const = default;
};

// One delay scenario; `realized` is indexed like Instance::jobs.
struct Scenario {
  std::vector<JobOutcome> realized;

  bool operator==(const Scenario&) const = default;
};

using JobIndex = std::size_t;

class Instance {
 public:
  Instance() = default;
  Instance(std::vector<Job> jobs, std::vector<Scenario> scenarios,
           RuleParams rules, WageCurve wage, double cbu);

  const std::vector<Job>& jobs() const { return jobs_; }
  const std::vector<Scenario>& scenarios() const { return scenarios_; }
  const RuleParams& rules() const { return rules_; }
  const WageCurve& wage() const { return wage_; }
  double cbu() const { return cbu_; }

  std::size_t job_count() const { return jobs_.size(); }
  std::size_t scenario_count() const { return scenarios_.size(); }
  const Job& job(JobIndex j) const;

  // Throws InvalidInput for an unknown id.
  JobIndex index_of(const std::string& id) const;
  std::optional<JobIndex> find(const std::string& id) const;

  // Same jobs, rules and wage; no scenarios.
  Instance without_scenarios() const;

  bool operator==(const Instance& other) const;

 private:
  void validate() const;

  std::vector<Job> jobs_;
  std::vector<Scenario> scenarios_;
  RuleParams rules_;
  WageCurve wage_;
  double cbu_ = 0.0;
  std::map<std::string, JobIndex> index_;
};

struct JobRef {
  JobIndex job = 0;
  auto operator<=>(const JobRef&) const = default;
};

struct Break {
  Minutes tb = 0;
  Minutes te = 0;
  auto operator<=>(const Break&) const = default;
};

using Activity = std::variant<JobRef, Break>;

struct Shift {
  Minutes hb = 0;
  Minutes he = 0;
  std::vector<Activity> activities;

  std::vector<JobIndex> jobs() const;
  std::size_t break_count() const;

  auto operator<=>(const Shift&) const = default;
};

// Activity ordering plus the two working rules; breaks must lie in the
// lunch window and last tbr. Throws InvalidInput on an unknown job index.
bool is_feasible(const Shift& shift, const Instance& instance);

// True if feasible with at most one break, that break ending at
// min(next activity begin, tel), or min(he, tel) when it is last.
bool is_well_scheduled(const Shift& shift, const Instance& instance);

// Keeps the first break, drops the others and retimes the survivor so that
// the shift is well-scheduled. Throws InvalidInput on an infeasible shift.
Shift well_schedule(const Shift& shift, const Instance& instance);

// Jobs handed to a back-up agent, in shift order. Every break between two
// consecutive jobs needs tbr of slack on top of the succession.
std::vector<JobIndex> simulate(const Shift& shift, const Scenario& scenario,
                               const Instance& instance);

// Wage plus expected back-up cost over the instance scenarios.
double evaluate_cost(const Shift& shift, const Instance& instance);

struct SolutionEvaluation {
  double total_cost = 0.0;
  double wage_cost = 0.0;
  std::vector<int> backups_per_scenario;
  bool coverage_ok = false;
  std::vector<JobIndex> uncovered;
};

SolutionEvaluation evaluate_solution(const std::vector<Shift>& shifts,
                                     const Instance& instance);

std::string to_string(const Shift& shift, const Instance& instance);

}  // namespace shiftcg
