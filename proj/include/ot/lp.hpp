#pragma once

#include <vector>

#include "ot/error.hpp"
#include "ot/matrix.hpp"
#include "ot/scalar.hpp"
#include "ot/solver.hpp"

namespace ot {

// Small dense LP in standard form: min c'x subject to A x = b, x >= 0.
// Fallback for structures that are not transportation-shaped (blending
// constraints, feasibility probes).
template <class T>
struct LpProblem {
  std::vector<T> objective;  // length k
  Matrix<T> eq_lhs;          // r x k
  std::vector<T> eq_rhs;     // length r
};

template <class T>
struct LpSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<T> x;
  T objective{};
  std::vector<T> duals;  // one per equality row
  long iterations = 0;
};

namespace detail {

// Two-phase tableau simplex with Bland's rule. Exact for rational T.
template <class T>
class DenseSimplex {
 public:
  DenseSimplex(const LpProblem<T>& p) : k_(p.objective.size()), r_(p.eq_rhs.size()) {
    require(p.eq_lhs.rows() == r_ && p.eq_lhs.cols() == k_, Errc::dimension_mismatch,
            "LP constraint matrix does not match objective/rhs sizes");
    require(k_ >= 1 && k_ <= 10000, Errc::size_limit_exceeded, "LP variable count out of range");
    // Columns: k original + r artificial. Rows scaled so rhs >= 0.
    tab_ = Matrix<T>(r_, k_ + r_ + 1);
    row_sign_.assign(r_, T(1));
    for (size_t i = 0; i < r_; ++i) {
      const T s = p.eq_rhs[i] < T(0) ? T(-1) : T(1);
      row_sign_[i] = s;
      for (size_t j = 0; j < k_; ++j) tab_(i, j) = s * p.eq_lhs(i, j);
      tab_(i, k_ + i) = T(1);
      tab_(i, k_ + r_) = s * p.eq_rhs[i];
    }
    basis_.resize(r_);
    for (size_t i = 0; i < r_; ++i) basis_[i] = k_ + i;
    cost_ = p.objective;
  }

  LpSolution<T> run() {
    LpSolution<T> out;

    // Phase 1: minimize the sum of artificials.
    std::vector<T> phase1(k_ + r_, T(0));
    for (size_t i = 0; i < r_; ++i) phase1[k_ + i] = T(1);
    if (!iterate(phase1, /*allow_artificial_entering=*/false, out.iterations)) {
      out.status = SolveStatus::numerical_failure;
      return out;
    }
    T infeas(0);
    for (size_t i = 0; i < r_; ++i)
      if (basis_[i] >= k_) infeas += tab_(i, k_ + r_);
    if (!tol_is_zero(infeas, tol::feas)) {
      out.status = SolveStatus::infeasible;
      return out;
    }
    drive_out_artificials();

    // Phase 2: original objective over the feasible tableau.
    std::vector<T> phase2(k_ + r_, T(0));
    for (size_t j = 0; j < k_; ++j) phase2[j] = cost_[j];
    if (!iterate(phase2, /*allow_artificial_entering=*/false, out.iterations)) {
      out.status = unbounded_ ? SolveStatus::unbounded : SolveStatus::numerical_failure;
      return out;
    }

    out.status = SolveStatus::optimal;
    out.x.assign(k_, T(0));
    for (size_t i = 0; i < r_; ++i)
      if (basis_[i] < k_) out.x[basis_[i]] = tab_(i, k_ + r_);
    out.objective = T(0);
    for (size_t j = 0; j < k_; ++j) out.objective += cost_[j] * out.x[j];
    // Dual of equality row i: y_i = -reduced_cost(artificial_i), undoing the
    // row scaling applied at construction.
    const std::vector<T> rc = reduced_costs(phase2);
    out.duals.assign(r_, T(0));
    for (size_t i = 0; i < r_; ++i) out.duals[i] = row_sign_[i] * -rc[k_ + i];
    return out;
  }

 private:
  static double pivot_tol() {
    if constexpr (scalar_traits<T>::exact)
      return 0.0;
    else
      return 1e-11;
  }

  std::vector<T> reduced_costs(const std::vector<T>& cost) const {
    std::vector<T> rc = cost;
    for (size_t i = 0; i < r_; ++i) {
      const T cb = cost[basis_[i]];
      if (cb == T(0)) continue;
      for (size_t j = 0; j < k_ + r_; ++j) rc[j] -= cb * tab_(i, j);
    }
    return rc;
  }

  bool iterate(const std::vector<T>& cost, bool allow_artificial_entering, long& iterations) {
    const long cap = 2000L + 50L * static_cast<long>(k_ + r_) * static_cast<long>(r_ + 1);
    const double tol = pivot_tol();
    for (long it = 0; it < cap; ++it) {
      const std::vector<T> rc = reduced_costs(cost);
      // Bland: smallest column index with negative reduced cost.
      long enter = -1;
      const size_t limit = allow_artificial_entering ? k_ + r_ : k_;
      for (size_t j = 0; j < limit; ++j) {
        bool negative;
        if constexpr (scalar_traits<T>::exact)
          negative = rc[j] < T(0);
        else
          negative = rc[j] < -tol;
        if (negative) {
          enter = static_cast<long>(j);
          break;
        }
      }
      if (enter < 0) return true;

      long leave_row = -1;
      T best_ratio{};
      for (size_t i = 0; i < r_; ++i) {
        bool positive;
        if constexpr (scalar_traits<T>::exact)
          positive = tab_(i, static_cast<size_t>(enter)) > T(0);
        else
          positive = tab_(i, static_cast<size_t>(enter)) > tol;
        if (!positive) continue;
        const T ratio = tab_(i, k_ + r_) / tab_(i, static_cast<size_t>(enter));
        if (leave_row < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[static_cast<size_t>(leave_row)])) {
          leave_row = static_cast<long>(i);
          best_ratio = ratio;
        }
      }
      if (leave_row < 0) {
        unbounded_ = true;
        return false;
      }
      pivot(static_cast<size_t>(leave_row), static_cast<size_t>(enter));
      ++iterations;
    }
    return false;  // iteration cap: numerical failure
  }

  void pivot(size_t row, size_t col) {
    const T p = tab_(row, col);
    for (size_t j = 0; j <= k_ + r_; ++j) tab_(row, j) /= p;
    for (size_t i = 0; i < r_; ++i) {
      if (i == row) continue;
      const T f = tab_(i, col);
      if (f == T(0)) continue;
      for (size_t j = 0; j <= k_ + r_; ++j) tab_(i, j) -= f * tab_(row, j);
    }
    basis_[row] = col;
  }

  void drive_out_artificials() {
    const double tol = pivot_tol();
    for (size_t i = 0; i < r_; ++i) {
      if (basis_[i] < k_) continue;
      long col = -1;
      for (size_t j = 0; j < k_; ++j) {
        bool nonzero;
        if constexpr (scalar_traits<T>::exact)
          nonzero = tab_(i, j) != T(0);
        else
          nonzero = std::abs(scalar_traits<T>::to_double(tab_(i, j))) > tol;
        if (nonzero) {
          col = static_cast<long>(j);
          break;
        }
      }
      // Redundant row: the artificial stays basic at level zero.
      if (col >= 0) pivot(i, static_cast<size_t>(col));
    }
  }

  size_t k_, r_;
  Matrix<T> tab_;
  std::vector<size_t> basis_;
  std::vector<T> cost_;
  std::vector<T> row_sign_;
  bool unbounded_ = false;
};

}  // namespace detail

template <class T>
LpSolution<T> solve_lp_dense(const LpProblem<T>& problem, const SolverOptions& = {}) {
  detail::DenseSimplex<T> simplex(problem);
  return simplex.run();
}

}  // namespace ot
