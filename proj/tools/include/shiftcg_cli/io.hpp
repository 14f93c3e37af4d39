#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shiftcg/model.hpp"
#include "shiftcg/solver.hpp"

namespace shiftcg::cli {

// Instance documents:
// {rules:{tm,tbl,tel,tbr,tml,hb_set,hf_set}, wage:{breakpoints:[[d,c],...]},
//  cbu, jobs:[{id,tb,te}], scenarios:[{realized:{id:{xb,xe,vl}}}]}
// Malformed documents raise InvalidInput.
Instance read_instance(std::istream& is);
Instance read_instance_file(const std::string& path);
std::string instance_to_json(const Instance& instance);
void write_instance_file(const std::string& path, const Instance& instance);

// Plans are JSON lists of shifts:
// [{hb,he,activities:[{type:"job",id} | {type:"break",tb,te}]}]
std::vector<Shift> read_plan(std::istream& is, const Instance& instance);
std::vector<Shift> read_plan_file(const std::string& path, const Instance& instance);
std::string plan_to_json(const std::vector<Shift>& plan, const Instance& instance);
void write_plan_file(const std::string& path, const std::vector<Shift>& plan,
                     const Instance& instance);

std::string report_to_json(const CgReport& report);

}  // namespace shiftcg::cli
