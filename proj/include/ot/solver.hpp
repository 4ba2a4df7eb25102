#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <vector>

#include "ot/error.hpp"
#include "ot/matrix.hpp"
#include "ot/scalar.hpp"

namespace ot {

enum class SolveStatus { optimal, infeasible, unbounded, numerical_failure };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "Optimal";
    case SolveStatus::infeasible: return "Infeasible";
    case SolveStatus::unbounded: return "Unbounded";
    case SolveStatus::numerical_failure: return "NumericalFailure";
  }
  return "?";
}

// Balanced transportation problem: min <cost, plan> over nonnegative plans
// with prescribed row sums (supply) and column sums (demand).
template <class T>
struct TransportationInstance {
  std::vector<T> supply;
  std::vector<T> demand;
  Matrix<T> cost;

  size_t m() const { return supply.size(); }
  size_t n() const { return demand.size(); }
};

template <class T>
struct SolverSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  Matrix<T> plan;
  T objective{};
  std::vector<T> dual_row;
  std::vector<T> dual_col;
  long iterations = 0;
};

enum class PivotRule {
  bland,          // first negative reduced cost; termination guaranteed
  most_negative,  // steepest single-arc improvement; faster in practice
};

struct SolverOptions {
  PivotRule rule = PivotRule::bland;
  long iteration_cap = 0;           // 0: use 50*(m+n)^2
  std::ostream* pivot_trace = nullptr;  // CSV: iteration,entering,leaving,objective
};

namespace detail {

// Primal network simplex on the complete bipartite graph of a transportation
// instance. The basis is a spanning tree over m row nodes and n column nodes;
// arc (i,j) has id i*n+j. All arithmetic stays in T, so rational instances
// are solved exactly.
template <class T>
class NetworkSimplex {
 public:
  NetworkSimplex(const TransportationInstance<T>& inst, const SolverOptions& opts)
      : inst_(inst), opts_(opts), m_(inst.m()), n_(inst.n()) {}

  SolverSolution<T> run() {
    SolverSolution<T> out;
    if (!validate()) {
      out.status = SolveStatus::infeasible;
      return out;
    }
    northwest_corner();
    build_tree();

    const long cap = opts_.iteration_cap > 0
                         ? opts_.iteration_cap
                         : 50L * static_cast<long>(m_ + n_) * static_cast<long>(m_ + n_);
    long iter = 0;
    while (true) {
      compute_duals();
      const long entering = find_entering();
      if (entering < 0) break;
      if (++iter > cap) {
        out.status = SolveStatus::numerical_failure;
        out.iterations = iter;
        return out;
      }
      const long leaving = pivot(static_cast<size_t>(entering));
      if (leaving < 0) {
        out.status = SolveStatus::numerical_failure;
        out.iterations = iter;
        return out;
      }
      if (opts_.pivot_trace) {
        *opts_.pivot_trace << iter << ',' << entering << ',' << leaving << ','
                           << scalar_traits<T>::to_string(current_objective()) << '\n';
      }
      build_tree();
    }

    out.status = SolveStatus::optimal;
    out.iterations = iter;
    out.plan = Matrix<T>(m_, n_);
    for (size_t i = 0; i < m_; ++i)
      for (size_t j = 0; j < n_; ++j) out.plan(i, j) = flow_[i * n_ + j];
    out.objective = current_objective();
    out.dual_row.assign(u_.begin(), u_.end());
    out.dual_col.assign(v_.begin(), v_.end());
    return out;
  }

 private:
  size_t arc_id(size_t i, size_t j) const { return i * n_ + j; }
  size_t node_of_row(size_t i) const { return i; }
  size_t node_of_col(size_t j) const { return m_ + j; }

  bool validate() {
    for (const T& s : inst_.supply)
      if (!(s > T(0))) return false;
    for (const T& d : inst_.demand)
      if (!(d > T(0))) return false;
    T ssum = std::accumulate(inst_.supply.begin(), inst_.supply.end(), T(0));
    T dsum = std::accumulate(inst_.demand.begin(), inst_.demand.end(), T(0));
    if (!tol_eq(ssum, dsum, tol::mass)) return false;
    demand_ = inst_.demand;
    if constexpr (!scalar_traits<T>::exact) {
      // Absorb the sub-tolerance imbalance into the largest demand so flows
      // balance exactly.
      const size_t k = static_cast<size_t>(
          std::max_element(demand_.begin(), demand_.end()) - demand_.begin());
      demand_[k] += ssum - dsum;
      cost_scale_ = 1.0;
      for (size_t i = 0; i < m_; ++i)
        for (size_t j = 0; j < n_; ++j)
          cost_scale_ = std::max(cost_scale_, std::abs(scalar_traits<T>::to_double(inst_.cost(i, j))));
    }
    return true;
  }

  // Deterministic feasible spanning tree, independent of cost values.
  void northwest_corner() {
    flow_.assign(m_ * n_, T(0));
    in_basis_.assign(m_ * n_, false);
    std::vector<T> rs = inst_.supply;
    std::vector<T> rd = demand_;
    size_t i = 0, j = 0;
    while (true) {
      const T f = rs[i] < rd[j] ? rs[i] : rd[j];
      flow_[arc_id(i, j)] = f > T(0) ? f : T(0);
      in_basis_[arc_id(i, j)] = true;
      rs[i] -= f;
      rd[j] -= f;
      if (i + 1 == m_ && j + 1 == n_) break;
      if (i + 1 < m_ && (rs[i] <= rd[j] || j + 1 == n_))
        ++i;
      else
        ++j;
    }
  }

  void build_tree() {
    const size_t nodes = m_ + n_;
    adj_.assign(nodes, {});
    for (size_t a = 0; a < in_basis_.size(); ++a) {
      if (!in_basis_[a]) continue;
      const size_t i = a / n_, j = a % n_;
      adj_[node_of_row(i)].push_back(a);
      adj_[node_of_col(j)].push_back(a);
    }
    parent_node_.assign(nodes, -1);
    parent_arc_.assign(nodes, -1);
    depth_.assign(nodes, 0);
    bfs_order_.clear();
    bfs_order_.reserve(nodes);
    std::vector<char> seen(nodes, 0);
    std::vector<size_t> queue{0};
    seen[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      const size_t u = queue[qi];
      bfs_order_.push_back(u);
      for (size_t a : adj_[u]) {
        const size_t i = a / n_, j = a % n_;
        const size_t w = (node_of_row(i) == u) ? node_of_col(j) : node_of_row(i);
        if (seen[w]) continue;
        seen[w] = 1;
        parent_node_[w] = static_cast<long>(u);
        parent_arc_[w] = static_cast<long>(a);
        depth_[w] = depth_[u] + 1;
        queue.push_back(w);
      }
    }
  }

  void compute_duals() {
    u_.assign(m_, T(0));
    v_.assign(n_, T(0));
    for (size_t t = 1; t < bfs_order_.size(); ++t) {
      const size_t w = bfs_order_[t];
      const size_t a = static_cast<size_t>(parent_arc_[w]);
      const size_t i = a / n_, j = a % n_;
      if (w == node_of_col(j))
        v_[j] = inst_.cost(i, j) - u_[i];
      else
        u_[i] = inst_.cost(i, j) - v_[j];
    }
  }

  double enter_tol() const {
    if constexpr (scalar_traits<T>::exact)
      return 0.0;
    else
      return 1e-11 * cost_scale_;
  }

  long find_entering() const {
    const double tol = enter_tol();
    long best = -1;
    T best_rc{};
    for (size_t a = 0; a < in_basis_.size(); ++a) {
      if (in_basis_[a]) continue;
      const size_t i = a / n_, j = a % n_;
      const T rc = inst_.cost(i, j) - u_[i] - v_[j];
      bool negative;
      if constexpr (scalar_traits<T>::exact)
        negative = rc < T(0);
      else
        negative = rc < -tol;
      if (!negative) continue;
      if (opts_.rule == PivotRule::bland) return static_cast<long>(a);
      if (best < 0 || rc < best_rc) {
        best = static_cast<long>(a);
        best_rc = rc;
      }
    }
    return best;
  }

  // Swaps the entering arc into the basis; returns the leaving arc id.
  long pivot(size_t entering) {
    const size_t ei = entering / n_, ej = entering % n_;
    // Tree path from the column endpoint to the row endpoint; arcs at even
    // positions carry -theta, odd positions +theta (the entering arc is +).
    std::vector<size_t> path = tree_path(node_of_col(ej), node_of_row(ei));
    long leaving = -1;
    T theta{};
    bool have_theta = false;
    for (size_t t = 0; t < path.size(); t += 2) {
      const size_t a = path[t];
      if (!have_theta || flow_[a] < theta ||
          (flow_[a] == theta && static_cast<long>(a) < leaving)) {
        theta = flow_[a];
        leaving = static_cast<long>(a);
        have_theta = true;
      }
    }
    if (!have_theta) return -1;  // cannot happen on a spanning tree
    for (size_t t = 0; t < path.size(); ++t) {
      const size_t a = path[t];
      if (t % 2 == 0)
        flow_[a] -= theta;
      else
        flow_[a] += theta;
    }
    flow_[entering] = theta;
    flow_[static_cast<size_t>(leaving)] = T(0);
    if constexpr (!scalar_traits<T>::exact) {
      for (size_t a : path) {
        if (flow_[a] < T(0)) {
          if (flow_[a] < -tol::feas) return -1;
          flow_[a] = T(0);
        }
      }
    }
    in_basis_[entering] = true;
    in_basis_[static_cast<size_t>(leaving)] = false;
    return leaving;
  }

  // Arcs along the unique tree path between two nodes, ordered from `from`.
  std::vector<size_t> tree_path(size_t from, size_t to) const {
    std::vector<size_t> down_from, down_to;
    size_t a = from, b = to;
    while (depth_[a] > depth_[b]) {
      down_from.push_back(static_cast<size_t>(parent_arc_[a]));
      a = static_cast<size_t>(parent_node_[a]);
    }
    while (depth_[b] > depth_[a]) {
      down_to.push_back(static_cast<size_t>(parent_arc_[b]));
      b = static_cast<size_t>(parent_node_[b]);
    }
    while (a != b) {
      down_from.push_back(static_cast<size_t>(parent_arc_[a]));
      a = static_cast<size_t>(parent_node_[a]);
      down_to.push_back(static_cast<size_t>(parent_arc_[b]));
      b = static_cast<size_t>(parent_node_[b]);
    }
    down_from.insert(down_from.end(), down_to.rbegin(), down_to.rend());
    return down_from;
  }

  T current_objective() const {
    T obj(0);
    for (size_t i = 0; i < m_; ++i)
      for (size_t j = 0; j < n_; ++j) obj += flow_[arc_id(i, j)] * inst_.cost(i, j);
    return obj;
  }

  const TransportationInstance<T>& inst_;
  const SolverOptions& opts_;
  size_t m_, n_;
  std::vector<T> demand_;
  double cost_scale_ = 1.0;
  std::vector<T> flow_;
  std::vector<char> in_basis_;
  std::vector<std::vector<size_t>> adj_;
  std::vector<long> parent_node_, parent_arc_;
  std::vector<int> depth_;
  std::vector<size_t> bfs_order_;
  std::vector<T> u_, v_;
};

}  // namespace detail

template <class T>
SolverSolution<T> solve_transportation(const TransportationInstance<T>& inst,
                                       const SolverOptions& opts = {}) {
  require(inst.m() >= 1 && inst.n() >= 1, Errc::invalid_argument, "empty instance");
  require(inst.cost.rows() == inst.m() && inst.cost.cols() == inst.n(), Errc::dimension_mismatch,
          "cost matrix does not match supply/demand sizes");
  detail::NetworkSimplex<T> solver(inst, opts);
  return solver.run();
}

}  // namespace ot
