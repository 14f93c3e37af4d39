#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace shiftcg {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { ge, le, eq };

// min c'x  s.t.  rows, lo <= x <= hi. Lower bounds must be finite.
struct LinearProgram {
  struct Row {
    std::string name;
    std::vector<std::pair<std::size_t, double>> coefs;
    RowSense sense = RowSense::ge;
    double rhs = 0.0;
    bool operator==(const Row&) const = default;
  };

  std::vector<std::string> var_names;
  std::vector<double> obj;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<bool> integer;
  std::vector<Row> rows;
  double obj_constant = 0.0;

  std::size_t var_count() const { return obj.size(); }
  std::size_t add_var(std::string name, double cost, double lower = 0.0,
                      double upper = kLpInfinity, bool is_integer = false);
  std::size_t add_row(std::string name,
                      std::vector<std::pair<std::size_t, double>> coefs,
                      RowSense sense, double rhs);

  bool operator==(const LinearProgram&) const = default;
};

struct SimplexOptions {
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  std::size_t refactor_every = 50;
  std::size_t max_iterations = 0;  // 0: automatic
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  // One per row. Non-negative on >= rows, non-positive on <= rows at optimum.
  std::vector<double> duals;
  std::size_t iterations = 0;
};

// Dense two-phase revised simplex with an explicit basis inverse. Dantzig
// pricing, switching to Bland's rule after 10 * rows consecutive degenerate
// pivots. Throws InvalidInput on malformed data.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

struct BnbOptions {
  SimplexOptions lp;
  std::size_t max_nodes = 1'000'000;
  double integrality_tol = 1e-6;
};

enum class MipStatus { optimal, infeasible, unbounded, node_limit };

struct MipSolution {
  MipStatus status = MipStatus::infeasible;
  double objective = kLpInfinity;
  std::vector<double> x;
  double root_bound = -kLpInfinity;
  std::size_t nodes = 0;
};

// Depth-first branch and bound on the integer variables, up branch first.
MipSolution solve_mip(const LinearProgram& lp, const BnbOptions& options = {});

// CPLEX LP text format. Coefficients are written with 17 significant digits
// so that parse_lp_format(write_lp_format(lp)) == lp.
void write_lp_format(std::ostream& os, const LinearProgram& lp,
                     const std::string& title = {});
LinearProgram parse_lp_format(std::istream& is);

}  // namespace shiftcg
