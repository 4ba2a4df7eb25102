#pragma once

#include <optional>
#include <vector>

#include "ot/error.hpp"
#include "ot/matrix.hpp"
#include "ot/scalar.hpp"
#include "ot/solver.hpp"

namespace ot {

// Minimum-cost assignment of source atoms to targets under the exact-cover
// constraint: the source weights mapped onto target j must reproduce the
// target weight exactly (rational mode) or within tol::mass * n_targets
// (float mode). This is the search kernel behind both the Monge problem
// (targets = atoms of nu) and the class problem (targets = meta-atoms).
//
// Depth-first over targets in ascending index with residual-feasibility
// pruning; above `exhaustive_limit` source atoms an LP relaxation of the
// remaining block prunes by cost. The first optimum found is kept, which
// makes the reported map the lexicographically smallest one.
struct MapSearchOptions {
  size_t exhaustive_limit = 8;  // pure feasibility-pruned enumeration up to here
  size_t hard_limit = 12;       // SizeLimitExceeded beyond
};

template <class T>
struct MapSearchResult {
  bool feasible = false;
  std::vector<size_t> best_map;  // target index per source atom
  T best_value{};
  long nodes = 0;
};

namespace detail {

template <class T>
class ProfileAssignmentSearch {
 public:
  ProfileAssignmentSearch(const std::vector<T>& source_w, const std::vector<T>& target_w,
                          const Matrix<T>& cost, bool use_lp_bound)
      : w_(source_w), tw_(target_w), cost_(cost), use_lp_bound_(use_lp_bound) {
    m_ = w_.size();
    k_ = tw_.size();
    slack_ = scalar_traits<T>::exact ? 0.0 : tol::mass * static_cast<double>(k_);
    suffix_.assign(m_ + 1, T(0));
    for (size_t i = m_; i-- > 0;) suffix_[i] = suffix_[i + 1] + w_[i];
    residual_ = tw_;
    current_.assign(m_, 0);
  }

  MapSearchResult<T> run() {
    descend(0, T(0));
    MapSearchResult<T> out;
    out.feasible = best_.has_value();
    if (best_) {
      out.best_map = *best_;
      out.best_value = best_value_;
    }
    out.nodes = nodes_;
    return out;
  }

 private:
  bool residual_ok(const T& r) const {
    if constexpr (scalar_traits<T>::exact)
      return r >= T(0);
    else
      return r >= -slack_;
  }

  bool residual_zero(const T& r) const {
    if constexpr (scalar_traits<T>::exact)
      return r == T(0);
    else
      return std::abs(r) <= slack_;
  }

  void descend(size_t depth, T acc) {
    ++nodes_;
    if (depth == m_) {
      for (const T& r : residual_)
        if (!residual_zero(r)) return;
      if (!best_ || acc < best_value_) {
        best_ = current_;
        best_value_ = acc;
      }
      return;
    }
    // No target can need more mass than all remaining atoms can provide.
    for (const T& r : residual_) {
      if constexpr (scalar_traits<T>::exact) {
        if (r > suffix_[depth]) return;
      } else {
        if (r > suffix_[depth] + slack_) return;
      }
    }
    if (use_lp_bound_ && best_ && !lp_bound_admits(depth, acc)) return;

    for (size_t j = 0; j < k_; ++j) {
      const T after = residual_[j] - w_[depth];
      if (!residual_ok(after)) continue;
      const T next = acc + w_[depth] * cost_(depth, j);
      residual_[j] = after;
      current_[depth] = j;
      descend(depth + 1, next);
      residual_[j] = after + w_[depth];
    }
  }

  // Transportation relaxation of the remaining block; a valid lower bound on
  // any completion cost.
  bool lp_bound_admits(size_t depth, const T& acc) {
    TransportationInstance<T> inst;
    std::vector<size_t> cols;
    for (size_t j = 0; j < k_; ++j) {
      if constexpr (scalar_traits<T>::exact) {
        if (residual_[j] > T(0)) {
          cols.push_back(j);
          inst.demand.push_back(residual_[j]);
        }
      } else {
        if (residual_[j] > slack_) {
          cols.push_back(j);
          inst.demand.push_back(residual_[j]);
        }
      }
    }
    if (cols.empty()) return true;
    for (size_t i = depth; i < m_; ++i) inst.supply.push_back(w_[i]);
    inst.cost = Matrix<T>(inst.supply.size(), cols.size());
    for (size_t i = depth; i < m_; ++i)
      for (size_t jj = 0; jj < cols.size(); ++jj) inst.cost(i - depth, jj) = cost_(i, cols[jj]);
    const SolverSolution<T> relax = solve_transportation(inst);
    if (relax.status != SolveStatus::optimal) return true;  // no usable bound
    const T bound = acc + relax.objective;
    if constexpr (scalar_traits<T>::exact)
      return bound < best_value_;
    else
      return bound < best_value_ + tol::dual;
  }

  const std::vector<T>& w_;
  const std::vector<T>& tw_;
  const Matrix<T>& cost_;
  bool use_lp_bound_;
  size_t m_ = 0, k_ = 0;
  double slack_ = 0.0;
  std::vector<T> suffix_;
  std::vector<T> residual_;
  std::vector<size_t> current_;
  std::optional<std::vector<size_t>> best_;
  T best_value_{};
  long nodes_ = 0;
};

}  // namespace detail

template <class T>
MapSearchResult<T> min_cost_profile_assignment(const std::vector<T>& source_w,
                                               const std::vector<T>& target_w,
                                               const Matrix<T>& cost,
                                               const MapSearchOptions& opts = {}) {
  require(source_w.size() <= opts.hard_limit, Errc::size_limit_exceeded,
          "map search limited to " + std::to_string(opts.hard_limit) + " source atoms");
  require(cost.rows() == source_w.size() && cost.cols() == target_w.size(),
          Errc::dimension_mismatch, "assignment cost matrix does not match weights");
  const bool lp_bound = source_w.size() > opts.exhaustive_limit;
  detail::ProfileAssignmentSearch<T> search(source_w, target_w, cost, lp_bound);
  return search.run();
}

}  // namespace ot
