#pragma once

#include <algorithm>
#include <vector>

#include "ot/error.hpp"
#include "ot/matrix.hpp"
#include "ot/scalar.hpp"
#include "ot/solver.hpp"

// Brute-force reference implementations for tests and example derivation.
// Deliberately independent of the production solver and search code: bases
// are enumerated as spanning trees and solved by leaf elimination, maps by
// plain depth-first enumeration.
namespace ot::oracle {

struct EnumerationBudget {
  size_t max_atoms = 10;
  size_t max_vertices = 5'000'000;  // spanning trees visited
  size_t max_maps = 1'000'000;
};

template <class T>
struct BasicSolution {
  Matrix<T> plan;
  T objective{};
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Flows on a spanning tree by repeated leaf elimination; false when any flow
// would be negative (basis not primal feasible).
template <class T>
bool tree_flows(size_t m, size_t n, const std::vector<size_t>& arcs, const std::vector<T>& supply,
                const std::vector<T>& demand, std::vector<T>& flow_out) {
  const size_t nodes = m + n;
  std::vector<std::vector<size_t>> incident(nodes);
  for (size_t t = 0; t < arcs.size(); ++t) {
    incident[arcs[t] / n].push_back(t);
    incident[m + arcs[t] % n].push_back(t);
  }
  std::vector<T> rs = supply, rd = demand;
  std::vector<size_t> degree(nodes);
  for (size_t u = 0; u < nodes; ++u) degree[u] = incident[u].size();
  std::vector<char> arc_done(arcs.size(), 0), node_done(nodes, 0);
  flow_out.assign(arcs.size(), T(0));

  for (size_t round = 0; round + 1 < nodes; ++round) {
    size_t leaf = nodes;
    for (size_t u = 0; u < nodes; ++u)
      if (!node_done[u] && degree[u] == 1) {
        leaf = u;
        break;
      }
    if (leaf == nodes) return false;  // not a tree
    size_t arc_pos = arcs.size();
    for (size_t t : incident[leaf])
      if (!arc_done[t]) {
        arc_pos = t;
        break;
      }
    const size_t i = arcs[arc_pos] / n, j = arcs[arc_pos] % n;
    T f;
    if (leaf == i) {
      f = rs[i];
      rd[j] -= f;
    } else {
      f = rd[j];
      rs[i] -= f;
    }
    if (f < T(0)) return false;
    flow_out[arc_pos] = f;
    arc_done[arc_pos] = 1;
    node_done[leaf] = 1;
    --degree[i];
    --degree[m + j];
  }
  return true;
}

}  // namespace detail

// Every vertex of the transportation polytope, one entry per spanning-tree
// basis whose flows are nonnegative. Exact in rational mode.
template <class T>
std::vector<BasicSolution<T>> enumerate_basic_feasible(const TransportationInstance<T>& inst,
                                                       const EnumerationBudget& budget = {}) {
  const size_t m = inst.m(), n = inst.n();
  require(m >= 1 && n >= 1 && m <= 5 && n <= 5, Errc::budget_exceeded,
          "basis enumeration limited to 5x5 instances");
  const size_t need = m + n - 1;
  const size_t arc_count = m * n;
  std::vector<BasicSolution<T>> out;
  size_t visited = 0;

  std::vector<size_t> chosen;
  auto extend = [&](auto&& self, size_t next_arc, const detail::UnionFind& uf) -> void {
    if (chosen.size() == need) {
      require(++visited <= budget.max_vertices, Errc::budget_exceeded,
              "spanning-tree budget exhausted");
      std::vector<T> flows;
      if (!detail::tree_flows(m, n, chosen, inst.supply, inst.demand, flows)) return;
      BasicSolution<T> sol;
      sol.plan = Matrix<T>(m, n, T(0));
      for (size_t t = 0; t < chosen.size(); ++t)
        sol.plan(chosen[t] / n, chosen[t] % n) = flows[t];
      sol.objective = T(0);
      for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) sol.objective += sol.plan(i, j) * inst.cost(i, j);
      out.push_back(std::move(sol));
      return;
    }
    if (arc_count - next_arc < need - chosen.size()) return;
    for (size_t a = next_arc; a < arc_count; ++a) {
      detail::UnionFind copy = uf;
      if (!copy.unite(static_cast<int>(a / n), static_cast<int>(m + a % n))) continue;
      chosen.push_back(a);
      self(self, a + 1, copy);
      chosen.pop_back();
    }
  };
  extend(extend, 0, detail::UnionFind(m + n));
  return out;
}

// Every index map whose push-forward weight profile matches the targets
// (exactly in rational mode, within tol::mass * n_targets in float mode).
template <class T>
std::vector<std::vector<size_t>> enumerate_feasible_maps(const std::vector<T>& source_w,
                                                         const std::vector<T>& target_w,
                                                         const EnumerationBudget& budget = {}) {
  require(source_w.size() <= budget.max_atoms, Errc::budget_exceeded,
          "map enumeration limited to " + std::to_string(budget.max_atoms) + " atoms");
  const size_t m = source_w.size(), k = target_w.size();
  const double slack = scalar_traits<T>::exact ? 0.0 : tol::mass * static_cast<double>(k);
  std::vector<std::vector<size_t>> out;
  std::vector<T> residual = target_w;
  std::vector<size_t> current(m, 0);

  auto walk = [&](auto&& self, size_t depth) -> void {
    if (depth == m) {
      for (const T& r : residual) {
        if constexpr (scalar_traits<T>::exact) {
          if (r != T(0)) return;
        } else {
          if (std::abs(r) > slack) return;
        }
      }
      require(out.size() < budget.max_maps, Errc::budget_exceeded, "map budget exhausted");
      out.push_back(current);
      return;
    }
    for (size_t j = 0; j < k; ++j) {
      const T after = residual[j] - source_w[depth];
      bool ok;
      if constexpr (scalar_traits<T>::exact)
        ok = after >= T(0);
      else
        ok = after >= -slack;
      if (!ok) continue;
      residual[j] = after;
      current[depth] = j;
      self(self, depth + 1);
      residual[j] = after + source_w[depth];
    }
  };
  walk(walk, 0);
  return out;
}

struct CycleWitness {
  std::vector<size_t> subset;
  std::vector<size_t> permutation;
  double violation = 0.0;
};

// All (subset, permutation) witnesses violating cyclical monotonicity of a
// pair set, from the square table pair_cost(a, b) = c(x_a, y_b).
template <class T>
std::vector<CycleWitness> exhaustive_cycle_search(const Matrix<T>& pair_cost, size_t k_max,
                                                  const EnumerationBudget& = {}) {
  const size_t n = pair_cost.rows();
  require(pair_cost.cols() == n, Errc::dimension_mismatch, "pair cost table must be square");
  require(n <= 8, Errc::budget_exceeded, "cycle search limited to 8 pairs");
  std::vector<CycleWitness> out;

  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<size_t> subset;
    for (size_t t = 0; t < n; ++t)
      if (mask & (1u << t)) subset.push_back(t);
    if (subset.size() < 2 || subset.size() > k_max) continue;
    T base(0);
    for (size_t s : subset) base += pair_cost(s, s);
    std::vector<size_t> perm(subset.size());
    for (size_t t = 0; t < perm.size(); ++t) perm[t] = t;
    do {
      T permuted(0);
      for (size_t t = 0; t < subset.size(); ++t)
        permuted += pair_cost(subset[t], subset[perm[t]]);
      bool violated;
      if constexpr (scalar_traits<T>::exact)
        violated = base > permuted;
      else
        violated = scalar_traits<T>::to_double(base) >
                   scalar_traits<T>::to_double(permuted) + tol::dual;
      if (violated) {
        CycleWitness w;
        w.subset = subset;
        w.permutation = perm;
        w.violation = scalar_traits<T>::to_double(base - permuted);
        out.push_back(std::move(w));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

}  // namespace ot::oracle
