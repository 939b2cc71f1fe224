#include "mwl/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mwl {

namespace {

class Tableau {
 public:
  Tableau(const LinearProgram& lp, double eps) : eps_(eps), num_real_(lp.num_vars) {
    const int num_eq = static_cast<int>(lp.eq_rows.size());
    const int num_ub = static_cast<int>(lp.ub_rows.size());
    num_slack_ = num_ub;
    rows_.reserve(static_cast<std::size_t>(num_eq + num_ub));
    rhs_.reserve(static_cast<std::size_t>(num_eq + num_ub));
    slack_sign_.assign(static_cast<std::size_t>(num_ub), 1.0);

    for (int r = 0; r < num_eq; ++r) {
      Vec row = lp.eq_rows[static_cast<std::size_t>(r)];
      double b = lp.eq_rhs[static_cast<std::size_t>(r)];
      if (b < 0.0) {
        for (double& v : row) v = -v;
        b = -b;
      }
      row.resize(static_cast<std::size_t>(num_real_ + num_slack_), 0.0);
      rows_.push_back(std::move(row));
      rhs_.push_back(b);
    }
    for (int r = 0; r < num_ub; ++r) {
      Vec row = lp.ub_rows[static_cast<std::size_t>(r)];
      double b = lp.ub_rhs[static_cast<std::size_t>(r)];
      double sign = 1.0;
      if (b < 0.0) {
        for (double& v : row) v = -v;
        b = -b;
        sign = -1.0;
      }
      row.resize(static_cast<std::size_t>(num_real_ + num_slack_), 0.0);
      row[static_cast<std::size_t>(num_real_ + r)] = sign;
      slack_sign_[static_cast<std::size_t>(r)] = sign;
      rows_.push_back(std::move(row));
      rhs_.push_back(b);
    }
  }

  LpResult solve(const LinearProgram& lp) {
    add_artificials();
    if (!phase(/*phase1=*/true, lp)) {
      throw std::runtime_error("simplex: phase 1 reported unbounded");
    }
    if (phase1_objective() > 1e-7) {
      return {LpStatus::infeasible, 0.0, {}};
    }
    drive_out_artificials();
    if (!phase(/*phase1=*/false, lp)) {
      return {LpStatus::unbounded, 0.0, {}};
    }
    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(static_cast<std::size_t>(num_real_), 0.0);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] < num_real_) res.x[static_cast<std::size_t>(basis_[r])] = rhs_[r];
    }
    res.value = dot(lp.cost, res.x);
    return res;
  }

 private:
  int total_cols() const { return num_real_ + num_slack_ + num_artificial_; }

  void add_artificials() {
    basis_.assign(rows_.size(), -1);
    // slack columns with +1 coefficient can start basic
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (int s = 0; s < num_slack_; ++s) {
        const int col = num_real_ + s;
        if (rows_[r][static_cast<std::size_t>(col)] == 1.0 && row_is_singleton(col, r)) {
          basis_[r] = col;
          break;
        }
      }
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] >= 0) continue;
      const int col = num_real_ + num_slack_ + num_artificial_;
      ++num_artificial_;
      for (auto& row : rows_) row.push_back(0.0);
      rows_[r][static_cast<std::size_t>(col)] = 1.0;
      basis_[r] = col;
    }
  }

  bool row_is_singleton(int col, std::size_t row) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r != row && rows_[r][static_cast<std::size_t>(col)] != 0.0) return false;
    }
    return true;
  }

  double phase1_objective() const {
    double v = 0.0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (basis_[r] >= num_real_ + num_slack_) v += rhs_[r];
    }
    return v;
  }

  Vec reduced_costs(bool phase1, const LinearProgram& lp) const {
    Vec c(static_cast<std::size_t>(total_cols()), 0.0);
    if (phase1) {
      for (int a = 0; a < num_artificial_; ++a) c[static_cast<std::size_t>(num_real_ + num_slack_ + a)] = 1.0;
    } else {
      for (int j = 0; j < num_real_; ++j) c[static_cast<std::size_t>(j)] = lp.cost[static_cast<std::size_t>(j)];
    }
    Vec r = c;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const double cb = c[static_cast<std::size_t>(basis_[i])];
      if (cb == 0.0) continue;
      for (int j = 0; j < total_cols(); ++j) r[static_cast<std::size_t>(j)] -= cb * rows_[i][static_cast<std::size_t>(j)];
    }
    return r;
  }

  void pivot(std::size_t row, int col) {
    Vec& prow = rows_[row];
    const double p = prow[static_cast<std::size_t>(col)];
    for (double& v : prow) v /= p;
    rhs_[row] /= p;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == row) continue;
      const double f = rows_[r][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j < total_cols(); ++j) {
        rows_[r][static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
      }
      rows_[r][static_cast<std::size_t>(col)] = 0.0;
      rhs_[r] -= f * rhs_[row];
    }
    basis_[row] = col;
  }

  // Bland's rule iteration; returns false on unboundedness.
  bool phase(bool phase1, const LinearProgram& lp) {
    const long long max_iters = 200000;
    for (long long iter = 0; iter < max_iters; ++iter) {
      Vec r = reduced_costs(phase1, lp);
      int enter = -1;
      const int eligible = phase1 ? total_cols() : num_real_ + num_slack_;
      for (int j = 0; j < eligible; ++j) {
        if (r[static_cast<std::size_t>(j)] < -eps_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      std::size_t leave = rows_.size();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const double a = rows_[i][static_cast<std::size_t>(enter)];
        if (a > eps_) {
          const double ratio = rhs_[i] / a;
          if (ratio < best_ratio - eps_ ||
              (ratio < best_ratio + eps_ && (leave == rows_.size() || basis_[i] < basis_[leave]))) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave == rows_.size()) return false;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex: iteration limit exceeded");
  }

  // After a feasible phase 1, remove artificial variables from the basis.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < num_real_ + num_slack_) {
        ++r;
        continue;
      }
      int col = -1;
      for (int j = 0; j < num_real_ + num_slack_; ++j) {
        if (std::abs(rows_[r][static_cast<std::size_t>(j)]) > eps_) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(r, col);
        ++r;
      } else {
        // redundant constraint; drop the row
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
  }

  double eps_;
  int num_real_ = 0;
  int num_slack_ = 0;
  int num_artificial_ = 0;
  std::vector<Vec> rows_;
  Vec rhs_;
  Vec slack_sign_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, double eps) {
  if (lp.num_vars <= 0) throw std::invalid_argument("solve_lp: no variables");
  if (lp.eq_rows.size() != lp.eq_rhs.size() || lp.ub_rows.size() != lp.ub_rhs.size()) {
    throw std::invalid_argument("solve_lp: row/rhs count mismatch");
  }
  if (static_cast<int>(lp.cost.size()) != lp.num_vars) {
    throw std::invalid_argument("solve_lp: cost size mismatch");
  }
  for (const auto& row : lp.eq_rows) {
    if (static_cast<int>(row.size()) != lp.num_vars) throw std::invalid_argument("solve_lp: eq row size");
  }
  for (const auto& row : lp.ub_rows) {
    if (static_cast<int>(row.size()) != lp.num_vars) throw std::invalid_argument("solve_lp: ub row size");
  }
  Tableau tableau(lp, eps);
  return tableau.solve(lp);
}

}  // namespace mwl
