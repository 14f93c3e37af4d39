#include "shiftcg/model.hpp"

#include <algorithm>
#include <sstream>

#include "shiftcg/error.hpp"

namespace shiftcg {

namespace {

bool strictly_increasing(const std::vector<Minutes>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](Minutes a, Minutes b) {
           return a >= b;
         }) == v.end();
}

bool contains_sorted(const std::vector<Minutes>& v, Minutes t) {
  return std::binary_search(v.begin(), v.end(), t);
}

struct Interval {
  Minutes tb;
  Minutes te;
};

Interval interval_of(const Activity& a, const Instance& instance) {
  if (const auto* j = std::get_if<JobRef>(&a)) {
    const Job& job = instance.job(j->job);
    return {job.tb, job.te};
  }
  const auto& b = std::get<Break>(a);
  return {b.tb, b.te};
}

}  // namespace

void RuleParams::validate() const {
  if (tm <= 0) throw InvalidInput("rules: tm must be positive");
  if (tbl >= tel) throw InvalidInput("rules: lunch window requires tbl < tel");
  if (tbr <= 0 || tbr > tel - tbl)
    throw InvalidInput("rules: break duration must lie in (0, tel - tbl]");
  if (tml <= 0) throw InvalidInput("rules: tml must be positive");
  if (tml < tbr)
    throw InvalidInput("rules: tml must be at least the break duration tbr");
  if (hb_set.empty() || !strictly_increasing(hb_set))
    throw InvalidInput("rules: hb_set must be non-empty and strictly increasing");
  if (hf_set.empty() || !strictly_increasing(hf_set))
    throw InvalidInput("rules: hf_set must be non-empty and strictly increasing");
}

Minutes RuleParams::lunch_overlap(Minutes hb, Minutes he) const {
  return std::max(0, std::min(he, tel) - std::max(hb, tbl));
}

WageCurve::WageCurve(std::vector<Breakpoint> breakpoints)
    : points_(std::move(breakpoints)) {}

WageCurve WageCurve::standard(Minutes tm) {
  constexpr Minutes kBase = 360;
  constexpr double kMinimumWage = 500.0;
  constexpr double kExtraRate = 2.0;
  if (tm <= kBase) return WageCurve({{0, kMinimumWage}, {tm, kMinimumWage}});
  return WageCurve({{0, kMinimumWage},
                    {kBase, kMinimumWage},
                    {tm, kMinimumWage + kExtraRate * (tm - kBase)}});
}

double WageCurve::operator()(Minutes duration) const {
  if (points_.empty()) return 0.0;
  if (duration <= points_.front().first) return points_.front().second;
  if (duration >= points_.back().first) return points_.back().second;
  auto hi = std::upper_bound(
      points_.begin(), points_.end(), duration,
      [](Minutes d, const Breakpoint& p) { return d < p.first; });
  auto lo = std::prev(hi);
  const double span = hi->first - lo->first;
  const double w = (duration - lo->first) / span;
  return lo->second + w * (hi->second - lo->second);
}

void WageCurve::validate(Minutes tm) const {
  if (points_.empty()) throw InvalidInput("wage: no breakpoints");
  if (points_.front().first != 0)
    throw InvalidInput("wage: first breakpoint must be at duration 0");
  if (points_.back().first < tm)
    throw InvalidInput("wage: breakpoints must cover [0, tm]");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].first <= points_[i - 1].first)
      throw InvalidInput("wage: durations must be strictly increasing");
    if (points_[i].second < points_[i - 1].second)
      throw InvalidInput("wage: costs must be non-decreasing");
  }
  if (points_.front().second < 0.0) throw InvalidInput("wage: negative cost");
}

Instance::Instance(std::vector<Job> jobs, std::vector<Scenario> scenarios,
                   RuleParams rules, WageCurve wage, double cbu)
    : jobs_(std::move(jobs)),
      scenarios_(std::move(scenarios)),
      rules_(std::move(rules)),
      wage_(std::move(wage)),
      cbu_(cbu) {
  for (JobIndex j = 0; j < jobs_.size(); ++j) {
    if (!index_.emplace(jobs_[j].id, j).second)
      throw InvalidInput("duplicate job id '" + jobs_[j].id + "'");
  }
  validate();
}

void Instance::validate() const {
  if (jobs_.empty()) throw InvalidInput("instance has no jobs");
  rules_.validate();
  wage_.validate(rules_.tm);
  if (!(cbu_ >= 0.0)) throw InvalidInput("cbu must be non-negative");
  for (const Job& job : jobs_) {
    if (job.tb >= job.te)
      throw InvalidInput("job '" + job.id + "' must satisfy tb < te");
  }
  for (std::size_t w = 0; w < scenarios_.size(); ++w) {
    const auto& realized = scenarios_[w].realized;
    if (realized.size() != jobs_.size())
      throw InvalidInput("scenario " + std::to_string(w) +
                         " does not cover every job exactly once");
    for (JobIndex j = 0; j < realized.size(); ++j) {
      if (realized[j].xb > realized[j].xe)
        throw InvalidInput("scenario " + std::to_string(w) + ", job '" +
                           jobs_[j].id + "': xb > xe");
    }
  }
}

const Job& Instance::job(JobIndex j) const {
  if (j >= jobs_.size())
    throw InvalidInput("job index " + std::to_string(j) + " out of range");
  return jobs_[j];
}

JobIndex Instance::index_of(const std::string& id) const {
  if (auto j = find(id)) return *j;
  throw InvalidInput("unknown job id '" + id + "'");
}

std::optional<JobIndex> Instance::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Instance Instance::without_scenarios() const {
  return Instance(jobs_, {}, rules_, wage_, cbu_);
}

bool Instance::operator==(const Instance& other) const {
  return jobs_ == other.jobs_ && scenarios_ == other.scenarios_ &&
         rules_ == other.rules_ && wage_ == other.wage_ && cbu_ == other.cbu_;
}

std::vector<JobIndex> Shift::jobs() const {
  std::vector<JobIndex> out;
  for (const auto& a : activities) {
    if (const auto* j = std::get_if<JobRef>(&a)) out.push_back(j->job);
  }
  return out;
}

std::size_t Shift::break_count() const {
  return static_cast<std::size_t>(
      std::count_if(activities.begin(), activities.end(), [](const auto& a) {
        return std::holds_alternative<Break>(a);
      }));
}

bool is_feasible(const Shift& shift, const Instance& instance) {
  const RuleParams& rules = instance.rules();
  // Resolve every reference first so that bad input always throws.
  std::vector<Interval> spans;
  spans.reserve(shift.activities.size());
  for (const auto& a : shift.activities) spans.push_back(interval_of(a, instance));

  if (!contains_sorted(rules.hb_set, shift.hb)) return false;
  if (!contains_sorted(rules.hf_set, shift.he)) return false;
  if (shift.he - shift.hb > rules.tm) return false;
  if (shift.hb > shift.he) return false;

  Minutes cursor = shift.hb;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    if (spans[i].tb < cursor) return false;
    cursor = spans[i].te;
    if (const auto* b = std::get_if<Break>(&shift.activities[i])) {
      if (b->te - b->tb != rules.tbr) return false;
      if (b->tb < rules.tbl || b->te > rules.tel) return false;
    }
  }
  if (cursor > shift.he) return false;

  if (rules.lunch_overlap(shift.hb, shift.he) >= rules.tml &&
      shift.break_count() == 0)
    return false;
  return true;
}

bool is_well_scheduled(const Shift& shift, const Instance& instance) {
  if (!is_feasible(shift, instance)) return false;
  if (shift.break_count() > 1) return false;
  const Minutes tel = instance.rules().tel;
  for (std::size_t i = 0; i < shift.activities.size(); ++i) {
    const auto* b = std::get_if<Break>(&shift.activities[i]);
    if (!b) continue;
    const Minutes expected =
        i + 1 == shift.activities.size()
            ? std::min(shift.he, tel)
            : std::min(interval_of(shift.activities[i + 1], instance).tb, tel);
    if (b->te != expected) return false;
  }
  return true;
}

Shift well_schedule(const Shift& shift, const Instance& instance) {
  if (!is_feasible(shift, instance))
    throw InvalidInput("well_schedule: input shift is not feasible");
  if (shift.break_count() == 0) return shift;

  Shift out{shift.hb, shift.he, {}};
  bool kept = false;
  for (const auto& a : shift.activities) {
    if (std::holds_alternative<Break>(a)) {
      if (kept) continue;
      kept = true;
    }
    out.activities.push_back(a);
  }
  const RuleParams& rules = instance.rules();
  for (std::size_t i = 0; i < out.activities.size(); ++i) {
    auto* b = std::get_if<Break>(&out.activities[i]);
    if (!b) continue;
    const Minutes end =
        i + 1 == out.activities.size()
            ? std::min(out.he, rules.tel)
            : std::min(interval_of(out.activities[i + 1], instance).tb,
                       rules.tel);
    *b = Break{end - rules.tbr, end};
  }
  return out;
}

std::vector<JobIndex> simulate(const Shift& shift, const Scenario& scenario,
                               const Instance& instance) {
  const Minutes tbr = instance.rules().tbr;
  std::vector<JobIndex> rescheduled;

  bool have_previous = false;
  bool previous_rescheduled = false;
  Minutes previous_end = 0;
  int breaks_since_previous = 0;

  for (const auto& a : shift.activities) {
    if (std::holds_alternative<Break>(a)) {
      if (have_previous) ++breaks_since_previous;
      continue;
    }
    const JobIndex j = std::get<JobRef>(a).job;
    instance.job(j);
    if (j >= scenario.realized.size())
      throw InvalidInput("scenario has no outcome for job index " +
                         std::to_string(j));
    const JobOutcome& outcome = scenario.realized[j];

    bool backed_up = outcome.very_late;
    if (!backed_up && have_previous && !previous_rescheduled) {
      // Each intervening break must fit between the two jobs.
      const Minutes latest_free = outcome.xb - breaks_since_previous * tbr;
      backed_up = previous_end > latest_free;
    }
    if (backed_up) rescheduled.push_back(j);

    have_previous = true;
    previous_rescheduled = backed_up;
    previous_end = outcome.xe;
    breaks_since_previous = 0;
  }
  return rescheduled;
}

double evaluate_cost(const Shift& shift, const Instance& instance) {
  double cost = instance.wage()(shift.he - shift.hb);
  const auto& scenarios = instance.scenarios();
  if (scenarios.empty()) return cost;
  long long total = 0;
  for (const Scenario& s : scenarios)
    total += static_cast<long long>(simulate(shift, s, instance).size());
  return cost + instance.cbu() * static_cast<double>(total) /
                    static_cast<double>(scenarios.size());
}

SolutionEvaluation evaluate_solution(const std::vector<Shift>& shifts,
                                     const Instance& instance) {
  SolutionEvaluation eval;
  eval.backups_per_scenario.assign(instance.scenario_count(), 0);
  std::vector<bool> covered(instance.job_count(), false);
  for (const Shift& shift : shifts) {
    eval.total_cost += evaluate_cost(shift, instance);
    eval.wage_cost += instance.wage()(shift.he - shift.hb);
    for (JobIndex j : shift.jobs()) covered.at(j) = true;
    for (std::size_t w = 0; w < instance.scenario_count(); ++w) {
      eval.backups_per_scenario[w] += static_cast<int>(
          simulate(shift, instance.scenarios()[w], instance).size());
    }
  }
  for (JobIndex j = 0; j < covered.size(); ++j) {
    if (!covered[j]) eval.uncovered.push_back(j);
  }
  eval.coverage_ok = eval.uncovered.empty();
  return eval;
}

std::string to_string(const Shift& shift, const Instance& instance) {
  std::ostringstream os;
  os << '[' << shift.hb;
  for (const auto& a : shift.activities) {
    if (const auto* j = std::get_if<JobRef>(&a)) {
      os << ' ' << instance.job(j->job).id;
    } else {
      const auto& b = std::get<Break>(a);
      os << " (break " << b.tb << '-' << b.te << ')';
    }
  }
  os << ' ' << shift.he << ']';
  return os.str();
}

}  // namespace shiftcg
