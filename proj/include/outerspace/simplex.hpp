#pragma once

// Dense two-phase simplex with Bland's rule, sized for the tiny programs of
// the minima module (a handful of variables, a few dozen rows).
//
//   minimize c.x  subject to  rows (<=, >=, =) and x >= 0.
//
// Artificial columns are kept through phase two (barred from entering) so
// the dual values of every row can be read off the final reduced costs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "outerspace/errors.hpp"

namespace outerspace {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Sense> senses;
  std::vector<double> rhs;

  void add_row(std::vector<double> coeffs, Sense sense, double b) {
    rows.push_back(std::move(coeffs));
    senses.push_back(sense);
    rhs.push_back(b);
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double value = 0.0;
  // Dual value per row: <= rows get y <= 0, >= rows y >= 0, = rows free.
  std::vector<double> duals;
  // Rows still carrying a positive artificial at the end of phase one.
  std::vector<int> violated_rows;
};

namespace detail {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, double tol) : tol_(tol) {
    m_ = static_cast<int>(lp.rows.size());
    n_ = static_cast<int>(lp.objective.size());
    // Columns: originals, then one slack/surplus per inequality, then one
    // artificial per row that has no natural unit column.
    flip_.assign(m_, 1.0);
    std::vector<Sense> sense = lp.senses;
    for (int i = 0; i < m_; ++i) {
      if (static_cast<int>(lp.rows[i].size()) != n_) throw MalformedInput("LP row has wrong width");
      if (lp.rhs[i] < 0.0) {
        flip_[i] = -1.0;
        if (sense[i] == Sense::LessEqual) {
          sense[i] = Sense::GreaterEqual;
        } else if (sense[i] == Sense::GreaterEqual) {
          sense[i] = Sense::LessEqual;
        }
      }
    }
    slack_col_.assign(m_, -1);
    unit_col_.assign(m_, -1);
    int cols = n_;
    for (int i = 0; i < m_; ++i) {
      if (sense[i] != Sense::Equal) slack_col_[i] = cols++;
    }
    first_artificial_ = cols;
    for (int i = 0; i < m_; ++i) {
      if (sense[i] == Sense::LessEqual) {
        unit_col_[i] = slack_col_[i];
      } else {
        unit_col_[i] = cols++;
      }
    }
    cols_ = cols;
    t_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
    basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) t_[i][j] = flip_[i] * lp.rows[i][j];
      t_[i][cols_] = flip_[i] * lp.rhs[i];
      if (slack_col_[i] >= 0) t_[i][slack_col_[i]] = sense[i] == Sense::LessEqual ? 1.0 : -1.0;
      t_[i][unit_col_[i]] = 1.0;
      basis_[i] = unit_col_[i];
    }
  }

  LpSolution solve(const std::vector<double>& c) {
    LpSolution sol;
    // Phase one: minimize the sum of artificials.
    std::vector<double> phase1(cols_, 0.0);
    for (int j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
    run(phase1, true);
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= first_artificial_) infeas += t_[i][cols_];
    }
    if (infeas > tol_ * 10) {
      sol.status = LpStatus::Infeasible;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= first_artificial_ && t_[i][cols_] > tol_) {
          for (int r = 0; r < m_; ++r) {
            if (unit_col_[r] == basis_[i]) sol.violated_rows.push_back(r);
          }
        }
      }
      std::sort(sol.violated_rows.begin(), sol.violated_rows.end());
      sol.x = primal();
      return sol;
    }
    drive_out_artificials();

    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < n_; ++j) cost[j] = c[j] / scale;
    if (!run(cost, false)) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.x = primal();
    sol.value = 0.0;
    for (int j = 0; j < n_; ++j) sol.value += c[j] * sol.x[j];
    const auto rc = reduced_costs(cost);
    sol.duals.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i) sol.duals[i] = -rc[unit_col_[i]] * scale * flip_[i];
    return sol;
  }

 private:
  std::vector<double> reduced_costs(const std::vector<double>& cost) const {
    std::vector<double> rc = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols_; ++j) rc[j] -= cb * t_[i][j];
    }
    return rc;
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, t_[i][cols_]);
    }
    return x;
  }

  void pivot(int row, int col) {
    const double p = t_[row][col];
    for (double& v : t_[row]) v /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[row][j];
      t_[i][col] = 0.0;
    }
    basis_[row] = col;
  }

  // Returns false when unbounded.
  bool run(const std::vector<double>& cost, bool phase_one) {
    const int enter_limit = phase_one ? cols_ : first_artificial_;
    for (int iter = 0; iter < 100000; ++iter) {
      const auto rc = reduced_costs(cost);
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j) {
        if (rc[j] < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (t_[i][enter] <= tol_) continue;
        const double ratio = t_[i][cols_] / t_[i][enter];
        if (leave < 0 || ratio < best - tol_ || (ratio <= best + tol_ && basis_[i] < basis_[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw InvariantViolation("simplex iteration limit reached");
  }

  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (int j = 0; j < first_artificial_; ++j) {
        if (std::abs(t_[i][j]) > tol_) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  double tol_;
  int m_ = 0;
  int n_ = 0;
  int cols_ = 0;
  int first_artificial_ = 0;
  std::vector<double> flip_;
  std::vector<int> slack_col_;
  std::vector<int> unit_col_;
  std::vector<std::vector<double>> t_;
  std::vector<int> basis_;
};

}  // namespace detail

inline LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-11) {
  if (lp.rows.size() != lp.senses.size() || lp.rows.size() != lp.rhs.size()) {
    throw MalformedInput("LP rows, senses and right-hand sides disagree");
  }
  detail::Tableau tableau(lp, tol);
  return tableau.solve(lp.objective);
}

// Among optimal solutions, the lexicographically smallest x. The optimal set
// is cut out by complementary slackness with the first solve's duals:
// variables with positive reduced cost vanish and rows with nonzero dual are
// tight. On that face x_0, x_1, ... are minimized and fixed in turn, so the
// objective never drifts. Duals and status come from the first solve.
inline LpSolution solve_lp_lexmin(const LinearProgram& lp, double tol = 1e-9) {
  LpSolution first = solve_lp(lp);
  if (first.status != LpStatus::Optimal) return first;
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.objective.size();
  double scale = 1.0;
  for (double v : lp.objective) scale = std::max(scale, std::abs(v));
  LinearProgram face = lp;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs(first.duals[i]) > tol * scale) face.senses[i] = Sense::Equal;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double reduced = lp.objective[j];
    for (std::size_t i = 0; i < m; ++i) reduced -= first.duals[i] * lp.rows[i][j];
    if (reduced > tol * scale) {
      std::vector<double> unit(n, 0.0);
      unit[j] = 1.0;
      face.add_row(unit, Sense::Equal, 0.0);
    }
  }
  std::vector<double> x = first.x;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> unit(n, 0.0);
    unit[j] = 1.0;
    face.objective = unit;
    const LpSolution step = solve_lp(face);
    if (step.status != LpStatus::Optimal) break;
    x = step.x;
    face.add_row(unit, Sense::Equal, step.x[j]);
  }
  first.x = x;
  first.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) first.value += lp.objective[j] * x[j];
  return first;
}

// Dual feasibility plus zero duality gap.
struct LpCertificate {
  bool dual_feasible = false;
  double dual_value = 0.0;
  double gap = 0.0;
  bool verified = false;
};

inline LpCertificate check_certificate(const LinearProgram& lp, const LpSolution& sol, double tol = 1e-9) {
  LpCertificate cert;
  if (sol.status != LpStatus::Optimal) return cert;
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.objective.size();
  double scale = 1.0;
  for (double v : lp.objective) scale = std::max(scale, std::abs(v));
  bool feasible = true;
  for (std::size_t i = 0; i < m; ++i) {
    const double y = sol.duals[i];
    if (lp.senses[i] == Sense::GreaterEqual && y < -tol * scale) feasible = false;
    if (lp.senses[i] == Sense::LessEqual && y > tol * scale) feasible = false;
    cert.dual_value += y * lp.rhs[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    double reduced = lp.objective[j];
    for (std::size_t i = 0; i < m; ++i) reduced -= sol.duals[i] * lp.rows[i][j];
    if (reduced < -tol * scale) feasible = false;
  }
  cert.dual_feasible = feasible;
  cert.gap = std::abs(cert.dual_value - sol.value);
  cert.verified = feasible && cert.gap <= tol * std::max(1.0, std::abs(sol.value));
  return cert;
}

}  // namespace outerspace
