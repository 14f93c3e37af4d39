#include "shiftcg_cli/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "shiftcg/error.hpp"

namespace shiftcg::cli {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw InvalidInput(std::string("'") + what + "' must be an integer");
  return j.get<int>();
}

double as_real(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidInput(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

std::vector<Minutes> as_times(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string("'") + what + "' must be a list");
  std::vector<Minutes> out;
  for (const json& t : j) out.push_back(as_int(t, what));
  return out;
}

bool as_flag(const json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) {
    const int v = j.get<int>();
    if (v == 0 || v == 1) return v == 1;
  }
  throw InvalidInput("'vl' must be a boolean or 0/1");
}

json parse(std::istream& is) {
  try {
    return json::parse(is);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

Instance instance_from(const json& doc) {
  const json& r = field(doc, "rules");
  RuleParams rules;
  rules.tm = as_int(field(r, "tm"), "tm");
  rules.tbl = as_int(field(r, "tbl"), "tbl");
  rules.tel = as_int(field(r, "tel"), "tel");
  rules.tbr = as_int(field(r, "tbr"), "tbr");
  rules.tml = as_int(field(r, "tml"), "tml");
  rules.hb_set = as_times(field(r, "hb_set"), "hb_set");
  rules.hf_set = as_times(field(r, "hf_set"), "hf_set");

  std::vector<WageCurve::Breakpoint> points;
  const json& bps = field(field(doc, "wage"), "breakpoints");
  if (!bps.is_array()) throw InvalidInput("'breakpoints' must be a list");
  for (const json& p : bps) {
    if (!p.is_array() || p.size() != 2)
      throw InvalidInput("a wage breakpoint must be [duration, cost]");
    points.emplace_back(as_int(p[0], "duration"), as_real(p[1], "cost"));
  }

  std::vector<Job> jobs;
  const json& js = field(doc, "jobs");
  if (!js.is_array()) throw InvalidInput("'jobs' must be a list");
  for (const json& j : js) {
    const json& id = field(j, "id");
    if (!id.is_string()) throw InvalidInput("job 'id' must be a string");
    jobs.push_back({id.get<std::string>(), as_int(field(j, "tb"), "tb"),
                    as_int(field(j, "te"), "te")});
  }

  std::map<std::string, std::size_t> ids;
  for (std::size_t k = 0; k < jobs.size(); ++k) ids.emplace(jobs[k].id, k);

  std::vector<Scenario> scenarios;
  if (doc.contains("scenarios")) {
    const json& ss = doc.at("scenarios");
    if (!ss.is_array()) throw InvalidInput("'scenarios' must be a list");
    for (std::size_t w = 0; w < ss.size(); ++w) {
      const json& real = field(ss[w], "realized");
      if (!real.is_object()) throw InvalidInput("'realized' must be an object");
      Scenario sc;
      sc.realized.resize(jobs.size());
      std::vector<bool> seen(jobs.size(), false);
      for (auto it = real.begin(); it != real.end(); ++it) {
        const auto found = ids.find(it.key());
        if (found == ids.end())
          throw InvalidInput("scenario " + std::to_string(w) +
                             " references unknown job '" + it.key() + "'");
        const std::size_t j = found->second;
        const json& x = it.value();
        sc.realized[j] = {as_int(field(x, "xb"), "xb"), as_int(field(x, "xe"), "xe"),
                          x.contains("vl") ? as_flag(x.at("vl")) : false};
        seen[j] = true;
      }
      for (std::size_t k = 0; k < jobs.size(); ++k) {
        if (!seen[k])
          throw InvalidInput("scenario " + std::to_string(w) + " lacks job '" +
                             jobs[k].id + "'");
      }
      scenarios.push_back(std::move(sc));
    }
  }
  const double cbu = doc.contains("cbu") ? as_real(doc.at("cbu"), "cbu") : 0.0;
  return Instance(std::move(jobs), std::move(scenarios), std::move(rules),
                  WageCurve(std::move(points)), cbu);
}

}  // namespace

Instance read_instance(std::istream& is) { return instance_from(parse(is)); }

Instance read_instance_file(const std::string& path) {
  auto in = open_in(path);
  return read_instance(in);
}

std::string instance_to_json(const Instance& instance) {
  const RuleParams& r = instance.rules();
  json doc;
  doc["rules"] = {{"tm", r.tm},   {"tbl", r.tbl},       {"tel", r.tel},
                  {"tbr", r.tbr}, {"tml", r.tml},       {"hb_set", r.hb_set},
                  {"hf_set", r.hf_set}};
  json bps = json::array();
  for (const auto& [d, c] : instance.wage().breakpoints()) bps.push_back({d, c});
  doc["wage"] = {{"breakpoints", bps}};
  doc["cbu"] = instance.cbu();
  json jobs = json::array();
  for (const Job& j : instance.jobs())
    jobs.push_back({{"id", j.id}, {"tb", j.tb}, {"te", j.te}});
  doc["jobs"] = jobs;
  json scenarios = json::array();
  for (const Scenario& s : instance.scenarios()) {
    json real = json::object();
    for (std::size_t k = 0; k < instance.job_count(); ++k) {
      const JobOutcome& x = s.realized[k];
      real[instance.job(k).id] = {{"xb", x.xb}, {"xe", x.xe}, {"vl", x.very_late}};
    }
    scenarios.push_back({{"realized", real}});
  }
  doc["scenarios"] = scenarios;
  return doc.dump(1) + "\n";
}

void write_instance_file(const std::string& path, const Instance& instance) {
  write_text(path, instance_to_json(instance));
}

std::vector<Shift> read_plan(std::istream& is, const Instance& instance) {
  const json doc = parse(is);
  if (!doc.is_array()) throw InvalidInput("a plan must be a list of shifts");
  std::vector<Shift> plan;
  for (const json& s : doc) {
    Shift shift;
    shift.hb = as_int(field(s, "hb"), "hb");
    shift.he = as_int(field(s, "he"), "he");
    const json& acts = field(s, "activities");
    if (!acts.is_array()) throw InvalidInput("'activities' must be a list");
    for (const json& a : acts) {
      const json& type = field(a, "type");
      if (type == "job") {
        const json& id = field(a, "id");
        if (!id.is_string()) throw InvalidInput("activity 'id' must be a string");
        shift.activities.push_back(JobRef{instance.index_of(id.get<std::string>())});
      } else if (type == "break") {
        shift.activities.push_back(
            Break{as_int(field(a, "tb"), "tb"), as_int(field(a, "te"), "te")});
      } else {
        throw InvalidInput("activity type must be 'job' or 'break'");
      }
    }
    plan.push_back(std::move(shift));
  }
  return plan;
}

std::vector<Shift> read_plan_file(const std::string& path, const Instance& instance) {
  auto in = open_in(path);
  return read_plan(in, instance);
}

std::string plan_to_json(const std::vector<Shift>& plan, const Instance& instance) {
  json doc = json::array();
  for (const Shift& s : plan) {
    json acts = json::array();
    for (const Activity& a : s.activities) {
      if (const auto* j = std::get_if<JobRef>(&a)) {
        acts.push_back({{"type", "job"}, {"id", instance.job(j->job).id}});
      } else {
        const Break& b = std::get<Break>(a);
        acts.push_back({{"type", "break"}, {"tb", b.tb}, {"te", b.te}});
      }
    }
    doc.push_back({{"hb", s.hb}, {"he", s.he}, {"activities", acts}});
  }
  return doc.dump(1) + "\n";
}

void write_plan_file(const std::string& path, const std::vector<Shift>& plan,
                     const Instance& instance) {
  write_text(path, plan_to_json(plan, instance));
}

std::string report_to_json(const CgReport& r) {
  json history = json::array();
  for (const CgIteration& it : r.history) {
    history.push_back({{"iteration", it.iteration},
                       {"c_low", it.c_low},
                       {"reduced_cost", it.reduced_cost},
                       {"delta", it.delta},
                       {"columns", it.columns}});
  }
  const double pricing_share =
      r.seconds_total > 0 ? 100.0 * r.seconds_pricing / r.seconds_total : 0.0;
  json doc = {
      {"iterations", r.iterations},
      {"c_low", r.c_low},
      {"c_upp", r.c_upp},
      {"c_final", r.c_final},
      {"gap_before_injection", r.gap_before_injection},
      {"columns_generated", r.columns_generated},
      {"columns_injected", r.columns_injected},
      {"ip_nodes", r.ip_nodes},
      {"converged", r.converged},
      {"early_stop", r.early_stop},
      {"seconds",
       {{"lp", r.seconds_lp},
        {"pricing", r.seconds_pricing},
        {"column_generation", r.seconds_column_generation},
        {"integer", r.seconds_integer},
        {"total", r.seconds_total}}},
      {"pricing_time_percent", pricing_share},
      {"history", history},
  };
  return doc.dump(2) + "\n";
}

}  // namespace shiftcg::cli
