#include "shiftcg/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "shiftcg/error.hpp"

namespace shiftcg {

std::size_t LinearProgram::add_var(std::string name, double cost, double lower,
                                   double upper, bool is_integer) {
  var_names.push_back(std::move(name));
  obj.push_back(cost);
  lo.push_back(lower);
  hi.push_back(upper);
  integer.push_back(is_integer);
  return obj.size() - 1;
}

std::size_t LinearProgram::add_row(
    std::string name, std::vector<std::pair<std::size_t, double>> coefs,
    RowSense sense, double rhs) {
  rows.push_back(Row{std::move(name), std::move(coefs), sense, rhs});
  return rows.size() - 1;
}

namespace {

void validate(const LinearProgram& lp) {
  const std::size_t n = lp.obj.size();
  if (lp.lo.size() != n || lp.hi.size() != n || lp.integer.size() != n ||
      lp.var_names.size() != n)
    throw InvalidInput("linear program: inconsistent variable arrays");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(lp.lo[j]))
      throw InvalidInput("linear program: variable '" + lp.var_names[j] +
                         "' needs a finite lower bound");
    if (std::isnan(lp.hi[j]) || !std::isfinite(lp.obj[j]))
      throw InvalidInput("linear program: bad data on '" + lp.var_names[j] + "'");
  }
  for (const auto& row : lp.rows) {
    if (!std::isfinite(row.rhs))
      throw InvalidInput("linear program: row '" + row.name + "' has a non-finite rhs");
    for (const auto& [j, a] : row.coefs) {
      if (j >= n || !std::isfinite(a))
        throw InvalidInput("linear program: bad coefficient in row '" +
                           row.name + "'");
    }
  }
}

// Standard form  min c'z  s.t.  A z = b, z >= 0, b >= 0, solved by a dense
// revised simplex. Column layout: structural, then logical, then artificial.
class Simplex {
 public:
  Simplex(std::size_t m, const SimplexOptions& opt) : m_(m), opt_(opt) {}

  std::size_t add_column(std::vector<double> col, double cost) {
    cols_.push_back(std::move(col));
    cost_.push_back(cost);
    return cols_.size() - 1;
  }

  std::vector<double> b;

  // Returns the status; on optimal, x() and duals() are valid.
  LpStatus solve(std::size_t& iterations) {
    const std::size_t n_real = cols_.size();
    // Initial basis: a logical column equal to +e_i if present, else an
    // artificial.
    basis_.assign(m_, 0);
    std::vector<char> have(m_, 0);
    for (std::size_t j = 0; j < n_real; ++j) {
      std::size_t nz = 0, row = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (cols_[j][i] != 0.0) {
          ++nz;
          row = i;
        }
      }
      if (nz == 1 && cols_[j][row] == 1.0 && !have[row] && is_logical(j)) {
        have[row] = 1;
        basis_[row] = j;
      }
    }
    first_artificial_ = cols_.size();
    for (std::size_t i = 0; i < m_; ++i) {
      if (have[i]) continue;
      std::vector<double> e(m_, 0.0);
      e[i] = 1.0;
      basis_[i] = add_column(std::move(e), 0.0);
    }
    in_basis_.assign(cols_.size(), -1);
    for (std::size_t i = 0; i < m_; ++i) in_basis_[basis_[i]] = static_cast<long>(i);

    const std::size_t limit =
        opt_.max_iterations ? opt_.max_iterations : 20000 + 50 * (m_ + cols_.size());
    refactor();

    if (first_artificial_ < cols_.size()) {
      std::vector<double> phase1(cols_.size(), 0.0);
      for (std::size_t j = first_artificial_; j < cols_.size(); ++j) phase1[j] = 1.0;
      const LpStatus s = run(phase1, true, limit, iterations);
      if (s == LpStatus::iteration_limit) return s;
      double infeas = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= first_artificial_) infeas += xb_[i];
      }
      double scale = 1.0;
      for (double v : b) scale = std::max(scale, std::abs(v));
      if (infeas > opt_.feasibility_tol * scale) return LpStatus::infeasible;
      drive_out_artificials();
    }
    return run(cost_, false, limit, iterations);
  }

  std::vector<double> x() const {
    std::vector<double> z(first_artificial_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) z[basis_[i]] = std::max(0.0, xb_[i]);
    }
    return z;
  }

  std::vector<double> duals() const { return prices(cost_); }

  void mark_logical(std::size_t j) {
    if (logical_.size() <= j) logical_.resize(j + 1, 0);
    logical_[j] = 1;
  }

 private:
  bool is_logical(std::size_t j) const {
    return j < logical_.size() && logical_[j];
  }

  std::vector<double> prices(const std::vector<double>& c) const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const double* row = &binv_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) y[k] += cb * row[k];
    }
    return y;
  }

  double dot(const std::vector<double>& y, std::size_t j) const {
    const auto& col = cols_[j];
    double s = 0.0;
    for (std::size_t i = 0; i < m_; ++i) s += y[i] * col[i];
    return s;
  }

  std::vector<double> ftran(std::size_t j) const {
    std::vector<double> u(m_, 0.0);
    const auto& col = cols_[j];
    for (std::size_t k = 0; k < m_; ++k) {
      const double a = col[k];
      if (a == 0.0) continue;
      for (std::size_t i = 0; i < m_; ++i) u[i] += binv_[i * m_ + k] * a;
    }
    return u;
  }

  void pivot(std::size_t r, std::size_t j, const std::vector<double>& u) {
    const double p = u[r];
    double* row_r = &binv_[r * m_];
    for (std::size_t k = 0; k < m_; ++k) row_r[k] /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u[i] == 0.0) continue;
      double* row_i = &binv_[i * m_];
      const double f = u[i];
      for (std::size_t k = 0; k < m_; ++k) row_i[k] -= f * row_r[k];
    }
    in_basis_[basis_[r]] = -1;
    basis_[r] = j;
    in_basis_[j] = static_cast<long>(r);
    ++since_refactor_;
  }

  // Gauss-Jordan inversion of the basis with partial pivoting.
  void refactor() {
    std::vector<double> a(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& col = cols_[basis_[i]];
      for (std::size_t k = 0; k < m_; ++k) a[k * m_ + i] = col[k];
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    for (std::size_t c = 0; c < m_; ++c) {
      std::size_t best = c;
      for (std::size_t r = c + 1; r < m_; ++r) {
        if (std::abs(a[r * m_ + c]) > std::abs(a[best * m_ + c])) best = r;
      }
      if (std::abs(a[best * m_ + c]) < 1e-12)
        throw std::logic_error("simplex: singular basis");
      if (best != c) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(a[best * m_ + k], a[c * m_ + k]);
          std::swap(binv_[best * m_ + k], binv_[c * m_ + k]);
        }
      }
      const double p = a[c * m_ + c];
      for (std::size_t k = 0; k < m_; ++k) {
        a[c * m_ + k] /= p;
        binv_[c * m_ + k] /= p;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        const double f = a[r * m_ + c];
        if (r == c || f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          a[r * m_ + k] -= f * a[c * m_ + k];
          binv_[r * m_ + k] -= f * binv_[c * m_ + k];
        }
      }
    }
    xb_.assign(m_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < m_; ++k) s += binv_[i * m_ + k] * b[k];
      xb_[i] = std::abs(s) < 1e-12 ? 0.0 : s;
    }
    since_refactor_ = 0;
  }

  LpStatus run(const std::vector<double>& c, bool phase1, std::size_t limit,
               std::size_t& iterations) {
    const std::size_t enter_end = phase1 ? cols_.size() : first_artificial_;
    std::size_t degenerate = 0;
    bool bland = false;
    while (true) {
      if (iterations >= limit) return LpStatus::iteration_limit;
      if (since_refactor_ >= opt_.refactor_every) refactor();
      const std::vector<double> y = prices(c);

      std::size_t enter = cols_.size();
      double best = -opt_.optimality_tol;
      for (std::size_t j = 0; j < enter_end; ++j) {
        if (in_basis_[j] >= 0) continue;
        const double d = c[j] - dot(y, j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter == cols_.size()) {
        if (since_refactor_ > 0) {
          refactor();
          continue;
        }
        return LpStatus::optimal;
      }

      const std::vector<double> u = ftran(enter);
      std::size_t leave = m_;
      double theta = kLpInfinity;
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i] <= 1e-9) continue;
        const double ratio = std::max(0.0, xb_[i]) / u[i];
        if (leave == m_ || ratio < theta - 1e-12) {
          leave = i;
          theta = ratio;
        } else if (ratio <= theta + 1e-12) {
          const bool take = bland ? basis_[i] < basis_[leave] : u[i] > u[leave];
          if (take) {
            leave = i;
            theta = std::min(theta, ratio);
          }
        }
      }
      if (leave == m_) return LpStatus::unbounded;

      for (std::size_t i = 0; i < m_; ++i) xb_[i] -= theta * u[i];
      xb_[leave] = theta;
      pivot(leave, enter, u);
      ++iterations;

      if (theta <= opt_.feasibility_tol) {
        if (++degenerate > 10 * m_) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
    }
  }

  // Replaces zero-level basic artificials by structural or logical columns.
  // Rows where none qualifies are redundant and keep their artificial.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < first_artificial_) continue;
      std::size_t best = first_artificial_;
      double best_abs = 1e-7;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (in_basis_[j] >= 0) continue;
        double v = 0.0;
        for (std::size_t k = 0; k < m_; ++k) v += binv_[r * m_ + k] * cols_[j][k];
        if (std::abs(v) > best_abs) {
          best_abs = std::abs(v);
          best = j;
        }
      }
      if (best == first_artificial_) continue;
      const std::vector<double> u = ftran(best);
      const double level = xb_[r];
      for (std::size_t i = 0; i < m_; ++i) xb_[i] -= level / u[r] * u[i];
      xb_[r] = level / u[r];
      pivot(r, best, u);
    }
    refactor();
  }

  std::size_t m_;
  SimplexOptions opt_;
  std::vector<std::vector<double>> cols_;
  std::vector<double> cost_;
  std::vector<char> logical_;
  std::size_t first_artificial_ = 0;
  std::vector<std::size_t> basis_;
  std::vector<long> in_basis_;
  std::vector<double> binv_;
  std::vector<double> xb_;
  std::size_t since_refactor_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  validate(lp);
  const std::size_t n = lp.var_count();
  LpSolution out;

  // Fixed variables are substituted; others are shifted by their lower bound.
  std::vector<long> column_of(n, -1);
  std::vector<std::size_t> bounded;
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.hi[j] < lp.lo[j]) return out;
    if (lp.hi[j] == lp.lo[j]) continue;
    if (std::isfinite(lp.hi[j])) bounded.push_back(j);
  }
  const std::size_t m = lp.rows.size() + bounded.size();

  std::vector<double> rhs(m, 0.0);
  std::vector<double> sign(m, 1.0);
  std::vector<std::vector<double>> dense_rows(lp.rows.size(), std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    rhs[i] = row.rhs;
    for (const auto& [j, a] : row.coefs) {
      dense_rows[i][j] += a;
      rhs[i] -= a * lp.lo[j];
    }
  }
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    const std::size_t j = bounded[k];
    rhs[lp.rows.size() + k] = lp.hi[j] - lp.lo[j];
  }

  // Orientation of every row so that its right-hand side is non-negative.
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      sign[i] = -1.0;
      rhs[i] = -rhs[i];
    }
  }

  Simplex sx(m, options);
  sx.b = rhs;
  for (std::size_t j = 0; j < n; ++j) {
    if (lp.hi[j] == lp.lo[j]) continue;
    std::vector<double> col(m, 0.0);
    for (std::size_t i = 0; i < lp.rows.size(); ++i) col[i] = sign[i] * dense_rows[i][j];
    auto it = std::find(bounded.begin(), bounded.end(), j);
    if (it != bounded.end()) {
      const std::size_t r = lp.rows.size() + (it - bounded.begin());
      col[r] = sign[r];
    }
    column_of[j] = static_cast<long>(sx.add_column(std::move(col), lp.obj[j]));
  }
  for (std::size_t i = 0; i < m; ++i) {
    RowSense sense = i < lp.rows.size() ? lp.rows[i].sense : RowSense::le;
    if (sense == RowSense::eq) continue;
    std::vector<double> col(m, 0.0);
    col[i] = (sense == RowSense::le ? 1.0 : -1.0) * sign[i];
    const std::size_t c = sx.add_column(std::move(col), 0.0);
    sx.mark_logical(c);
  }

  out.status = sx.solve(out.iterations);
  if (out.status != LpStatus::optimal) return out;

  const std::vector<double> z = sx.x();
  out.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = lp.lo[j] + (column_of[j] >= 0 ? z[column_of[j]] : 0.0);
  }
  out.objective = lp.obj_constant;
  for (std::size_t j = 0; j < n; ++j) out.objective += lp.obj[j] * out.x[j];
  const std::vector<double> y = sx.duals();
  out.duals.assign(lp.rows.size(), 0.0);
  for (std::size_t i = 0; i < lp.rows.size(); ++i) out.duals[i] = sign[i] * y[i];
  return out;
}

MipSolution solve_mip(const LinearProgram& lp, const BnbOptions& options) {
  validate(lp);
  MipSolution best;
  const double tol = options.integrality_tol;

  struct Node {
    std::vector<double> lo, hi;
  };
  std::vector<Node> stack{{lp.lo, lp.hi}};
  LinearProgram work = lp;
  bool first = true;
  while (!stack.empty()) {
    if (best.nodes >= options.max_nodes) {
      best.status = MipStatus::node_limit;
      return best;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    ++best.nodes;
    work.lo = node.lo;
    work.hi = node.hi;
    const LpSolution relax = solve_lp(work, options.lp);
    if (relax.status == LpStatus::unbounded) {
      best.status = MipStatus::unbounded;
      return best;
    }
    if (relax.status == LpStatus::iteration_limit)
      throw NotConverged("branch and bound: LP iteration limit reached");
    if (first) {
      first = false;
      if (relax.status == LpStatus::optimal) best.root_bound = relax.objective;
    }
    if (relax.status != LpStatus::optimal) continue;
    const double cutoff =
        best.objective - 1e-9 * std::max(1.0, std::abs(best.objective));
    if (!best.x.empty() && relax.objective >= cutoff) continue;

    std::size_t branch = lp.var_count();
    double best_frac = 0.0;
    for (std::size_t j = 0; j < lp.var_count(); ++j) {
      if (!lp.integer[j]) continue;
      const double f = relax.x[j] - std::floor(relax.x[j]);
      if (f > tol && f < 1.0 - tol && f > best_frac) {
        best_frac = f;
        branch = j;
      }
    }
    if (branch == lp.var_count()) {
      best.x = relax.x;
      for (std::size_t j = 0; j < lp.var_count(); ++j) {
        if (lp.integer[j]) best.x[j] = std::round(best.x[j]);
      }
      best.objective = lp.obj_constant;
      for (std::size_t j = 0; j < lp.var_count(); ++j)
        best.objective += lp.obj[j] * best.x[j];
      continue;
    }
    const double v = relax.x[branch];
    Node down = node;
    down.hi[branch] = std::floor(v);
    Node up = std::move(node);
    up.lo[branch] = std::ceil(v);
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }
  best.status = best.x.empty() ? MipStatus::infeasible : MipStatus::optimal;
  return best;
}

// LP text format.

namespace {

std::string fmt_num(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_terms(std::ostream& os,
                 const std::vector<std::pair<std::size_t, double>>& terms,
                 const LinearProgram& lp) {
  std::size_t on_line = 0;
  for (const auto& [j, a] : terms) {
    if (on_line == 8) {
      os << "\n   ";
      on_line = 0;
    }
    os << (std::signbit(a) ? " - " : " + ") << fmt_num(std::abs(a)) << ' '
       << lp.var_names[j];
    ++on_line;
  }
}

bool is_binary(const LinearProgram& lp, std::size_t j) {
  return lp.integer[j] && lp.lo[j] == 0.0 && lp.hi[j] == 1.0;
}

enum class Tok { name, number, op, colon, plus, minus, end };

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
};

std::vector<Token> tokenize(std::istream& is) {
  std::vector<Token> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto cut = line.find('\\');
    if (cut != std::string::npos) line.erase(cut);
    std::size_t i = 0;
    while (i < line.size()) {
      const char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == ':') {
        out.push_back({Tok::colon, ":"});
        ++i;
      } else if (c == '+' || c == '-') {
        out.push_back({c == '+' ? Tok::plus : Tok::minus, std::string(1, c)});
        ++i;
      } else if (c == '<' || c == '>' || c == '=') {
        std::string op(1, c);
        if (i + 1 < line.size() && (line[i + 1] == '=' || line[i + 1] == '<' ||
                                    line[i + 1] == '>'))
          op += line[++i];
        ++i;
        if (op == "<" || op == "=<") op = "<=";
        if (op == ">" || op == "=>") op = ">=";
        out.push_back({Tok::op, op});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        char* end = nullptr;
        const double v = std::strtod(line.c_str() + i, &end);
        const std::size_t len = static_cast<std::size_t>(end - (line.c_str() + i));
        if (len == 0) throw InvalidInput("LP format: bad number near '" + line.substr(i) + "'");
        out.push_back({Tok::number, line.substr(i, len), v});
        i += len;
      } else {
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) &&
               std::string("+-:<>=").find(line[j]) == std::string::npos)
          ++j;
        out.push_back({Tok::name, line.substr(i, j - i)});
        i = j;
      }
    }
  }
  out.push_back({Tok::end, ""});
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

enum class Section { none, objective, constraints, bounds, general, binary, end };

class LpParser {
 public:
  explicit LpParser(std::vector<Token> toks) : t_(std::move(toks)) {}

  LinearProgram parse() {
    Section s = section_at(pos_);
    if (s != Section::objective)
      throw InvalidInput("LP format: expected 'Minimize' section");
    while (true) {
      s = enter_section();
      switch (s) {
        case Section::objective: parse_objective(); break;
        case Section::constraints: parse_constraints(); break;
        case Section::bounds: parse_bounds(); break;
        case Section::general: parse_names(false); break;
        case Section::binary: parse_names(true); break;
        case Section::end: return std::move(lp_);
        case Section::none:
          throw InvalidInput("LP format: unexpected token '" + t_[pos_].text + "'");
      }
    }
  }

 private:
  // Section keyword starting at token i, if any.
  Section section_at(std::size_t i, std::size_t* width = nullptr) const {
    std::size_t w = 1;
    Section s = Section::none;
    if (t_[i].kind == Tok::end) {
      s = Section::end;
    } else if (t_[i].kind == Tok::name) {
      const std::string k = lower(t_[i].text);
      if (k == "minimize" || k == "minimise" || k == "minimum" || k == "min") {
        s = Section::objective;
      } else if (k == "maximize" || k == "maximise" || k == "maximum" || k == "max") {
        throw InvalidInput("LP format: only minimization is supported");
      } else if ((k == "subject" || k == "such") && t_[i + 1].kind == Tok::name &&
                 (lower(t_[i + 1].text) == "to" || lower(t_[i + 1].text) == "that")) {
        s = Section::constraints;
        w = 2;
      } else if (k == "st" || k == "s.t." || k == "st.") {
        s = Section::constraints;
      } else if (k == "bounds" || k == "bound") {
        s = Section::bounds;
      } else if (k == "general" || k == "generals" || k == "gen" || k == "integer" ||
                 k == "integers") {
        s = Section::general;
      } else if (k == "binary" || k == "binaries" || k == "bin") {
        s = Section::binary;
      } else if (k == "end") {
        s = Section::end;
      }
      // A keyword followed by ':' is a row label.
      if (s != Section::none && s != Section::end && t_[i + w].kind == Tok::colon)
        s = Section::none;
    }
    if (width) *width = w;
    return s;
  }

  Section enter_section() {
    std::size_t w = 1;
    const Section s = section_at(pos_, &w);
    if (s != Section::none && s != Section::end) pos_ += w;
    return s;
  }

  bool at_section() const { return section_at(pos_) != Section::none; }

  std::size_t var(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const std::size_t j = lp_.add_var(name, 0.0);
    index_.emplace(name, j);
    return j;
  }

  // Optional "label:" prefix.
  std::string label() {
    if (t_[pos_].kind == Tok::name && t_[pos_ + 1].kind == Tok::colon) {
      std::string s = t_[pos_].text;
      pos_ += 2;
      return s;
    }
    return {};
  }

  // Linear terms until an operator or section keyword. Constant terms are
  // added to `constant`.
  std::vector<std::pair<std::size_t, double>> terms(double* constant) {
    std::vector<std::pair<std::size_t, double>> out;
    while (t_[pos_].kind != Tok::op && t_[pos_].kind != Tok::end && !at_section()) {
      double sgn = 1.0;
      while (t_[pos_].kind == Tok::plus || t_[pos_].kind == Tok::minus) {
        if (t_[pos_].kind == Tok::minus) sgn = -sgn;
        ++pos_;
      }
      double coef = 1.0;
      bool has_coef = false;
      if (t_[pos_].kind == Tok::number) {
        coef = t_[pos_].value;
        has_coef = true;
        ++pos_;
      }
      if (t_[pos_].kind == Tok::name && !at_section() &&
          t_[pos_ + 1].kind != Tok::colon) {
        out.emplace_back(var(t_[pos_].text), sgn * coef);
        ++pos_;
      } else if (has_coef && constant) {
        *constant += sgn * coef;
      } else {
        throw InvalidInput("LP format: malformed expression near '" +
                           t_[pos_].text + "'");
      }
    }
    return out;
  }

  double signed_number() {
    double sgn = 1.0;
    while (t_[pos_].kind == Tok::plus || t_[pos_].kind == Tok::minus) {
      if (t_[pos_].kind == Tok::minus) sgn = -sgn;
      ++pos_;
    }
    if (t_[pos_].kind == Tok::number) return sgn * t_[pos_++].value;
    if (t_[pos_].kind == Tok::name) {
      const std::string k = lower(t_[pos_].text);
      if (k == "inf" || k == "infinity") {
        ++pos_;
        return sgn * kLpInfinity;
      }
    }
    throw InvalidInput("LP format: expected a number near '" + t_[pos_].text + "'");
  }

  bool number_ahead() const {
    std::size_t i = pos_;
    while (t_[i].kind == Tok::plus || t_[i].kind == Tok::minus) ++i;
    if (t_[i].kind == Tok::number) return true;
    if (t_[i].kind != Tok::name) return false;
    const std::string k = lower(t_[i].text);
    return k == "inf" || k == "infinity";
  }

  void parse_objective() {
    label();
    for (const auto& [j, a] : terms(&lp_.obj_constant)) lp_.obj[j] += a;
  }

  void parse_constraints() {
    while (!at_section()) {
      std::string name = label();
      if (name.empty()) name = "R" + std::to_string(lp_.rows.size() + 1);
      double constant = 0.0;
      auto coefs = terms(&constant);
      if (t_[pos_].kind != Tok::op)
        throw InvalidInput("LP format: row '" + name + "' lacks a relation");
      const std::string op = t_[pos_++].text;
      const RowSense sense =
          op == "<=" ? RowSense::le : op == ">=" ? RowSense::ge : RowSense::eq;
      const double rhs = signed_number() - constant;
      lp_.add_row(std::move(name), std::move(coefs), sense, rhs);
    }
  }

  void parse_bounds() {
    while (!at_section()) {
      if (number_ahead()) {
        const double a = signed_number();
        const std::string op1 = expect_op();
        const std::size_t j = expect_var();
        apply(j, flip(op1), a);
        if (t_[pos_].kind == Tok::op) {
          const std::string op2 = expect_op();
          apply(j, op2, signed_number());
        }
      } else {
        const std::size_t j = expect_var();
        if (t_[pos_].kind == Tok::name && lower(t_[pos_].text) == "free") {
          ++pos_;
          lp_.lo[j] = -kLpInfinity;
          lp_.hi[j] = kLpInfinity;
        } else {
          const std::string op = expect_op();
          apply(j, op, signed_number());
        }
      }
    }
  }

  void parse_names(bool binary) {
    while (!at_section()) {
      if (t_[pos_].kind != Tok::name)
        throw InvalidInput("LP format: expected a variable name");
      const std::size_t j = var(t_[pos_++].text);
      lp_.integer[j] = true;
      if (binary) {
        lp_.lo[j] = 0.0;
        lp_.hi[j] = 1.0;
      }
    }
  }

  std::string expect_op() {
    if (t_[pos_].kind != Tok::op) throw InvalidInput("LP format: expected a relation");
    return t_[pos_++].text;
  }

  std::size_t expect_var() {
    if (t_[pos_].kind != Tok::name) throw InvalidInput("LP format: expected a variable");
    return var(t_[pos_++].text);
  }

  static std::string flip(const std::string& op) {
    return op == "<=" ? ">=" : op == ">=" ? "<=" : op;
  }

  // Bound "x op v".
  void apply(std::size_t j, const std::string& op, double v) {
    if (op == "<=") {
      lp_.hi[j] = v;
    } else if (op == ">=") {
      lp_.lo[j] = v;
    } else {
      lp_.lo[j] = v;
      lp_.hi[j] = v;
    }
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  LinearProgram lp_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace

void write_lp_format(std::ostream& os, const LinearProgram& lp,
                     const std::string& title) {
  validate(lp);
  if (!title.empty()) os << "\\ " << title << '\n';
  os << "Minimize\n obj:";
  std::vector<std::pair<std::size_t, double>> obj;
  for (std::size_t j = 0; j < lp.var_count(); ++j) obj.emplace_back(j, lp.obj[j]);
  write_terms(os, obj, lp);
  if (lp.obj_constant != 0.0)
    os << (lp.obj_constant < 0 ? " - " : " + ") << fmt_num(std::abs(lp.obj_constant));
  os << "\nSubject To\n";
  for (const auto& row : lp.rows) {
    os << ' ' << row.name << ':';
    write_terms(os, row.coefs, lp);
    os << (row.sense == RowSense::ge ? " >= " : row.sense == RowSense::le ? " <= " : " = ")
       << fmt_num(row.rhs) << '\n';
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < lp.var_count(); ++j) {
    if (is_binary(lp, j)) continue;
    const double lo = lp.lo[j], hi = lp.hi[j];
    if (lo == 0.0 && hi == kLpInfinity) continue;
    if (lo == hi) {
      os << ' ' << lp.var_names[j] << " = " << fmt_num(lo) << '\n';
    } else {
      os << ' ' << fmt_num(lo) << " <= " << lp.var_names[j] << " <= " << fmt_num(hi)
         << '\n';
    }
  }
  std::vector<std::string> general, binary;
  for (std::size_t j = 0; j < lp.var_count(); ++j) {
    if (!lp.integer[j]) continue;
    (is_binary(lp, j) ? binary : general).push_back(lp.var_names[j]);
  }
  auto list = [&](const char* head, const std::vector<std::string>& names) {
    if (names.empty()) return;
    os << head << '\n';
    for (std::size_t k = 0; k < names.size(); ++k)
      os << ' ' << names[k] << (k % 8 == 7 ? "\n" : "");
    if (names.size() % 8 != 0) os << '\n';
  };
  list("General", general);
  list("Binary", binary);
  os << "End\n";
}

LinearProgram parse_lp_format(std::istream& is) {
  return LpParser(tokenize(is)).parse();
}

}  // namespace shiftcg
