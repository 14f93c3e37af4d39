#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "shiftcg/lp.hpp"
#include "shiftcg/model.hpp"

namespace shiftcg {

struct Column {
  Shift shift;
  double cost = 0.0;
  std::vector<JobIndex> jobs;  // sorted
};

// Restricted column set of the master problem. Shifts are unique.
class ColumnPool {
 public:
  // Adds a shift priced by evaluate_cost. Returns false for a duplicate.
  bool add(const Shift& shift, const Instance& instance);
  // Adds a shift with a given cost. Returns false for a duplicate.
  bool add(const Shift& shift, double cost);

  bool contains(const Shift& shift) const { return index_.count(shift) != 0; }
  std::size_t size() const { return columns_.size(); }
  bool empty() const { return columns_.empty(); }
  const Column& operator[](std::size_t i) const { return columns_.at(i); }
  const std::vector<Column>& columns() const { return columns_; }

 private:
  std::vector<Column> columns_;
  std::set<Shift> index_;
};

struct LpOutcome {
  double objective = 0.0;
  std::vector<double> primal;  // per column
  std::vector<double> duals;   // per job, >= 0
  std::size_t iterations = 0;
};

struct IpOutcome {
  double objective = 0.0;
  std::vector<std::size_t> selected;  // column indices
  std::size_t nodes = 0;
};

// min sum c_s y_s  s.t.  sum_{s covers j} y_s >= 1 for every job, y >= 0.
LinearProgram master_program(const ColumnPool& pool, const Instance& instance,
                             bool integer);

// Throws InvalidInput naming the first job no column covers.
LpOutcome solve_lp(const ColumnPool& pool, const Instance& instance,
                   const SimplexOptions& options = {});

IpOutcome solve_ip(const ColumnPool& pool, const Instance& instance,
                   const BnbOptions& options = {});

}  // namespace shiftcg
