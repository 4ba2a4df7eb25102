#pragma once

#include <numeric>
#include <utility>
#include <vector>

#include "ot/kantorovich.hpp"
#include "ot/measure.hpp"

namespace ot {

// Finitely supported probability measure whose atoms are themselves discrete
// measures on a common target space.
//
// Canonical form: atoms pairwise distinct (exact equality in rational mode,
// W1 <= tol::meta in float mode; coincident atoms merged with weights
// summed), ordered by (support size, lexicographic atom data).
template <class T>
class MetaMeasure {
 public:
  MetaMeasure() = default;

  static MetaMeasure make(std::vector<DiscreteMeasure<T>> atoms, std::vector<T> weights) {
    require(!atoms.empty(), Errc::invalid_argument, "meta-measure needs at least one atom");
    require(atoms.size() == weights.size(), Errc::dimension_mismatch,
            "atoms and weights of different lengths");
    const int d = atoms.front().dim();
    for (const auto& a : atoms)
      require(a.dim() == d, Errc::dimension_mismatch, "meta-atoms on different spaces");
    for (const T& w : weights)
      require(!(w < T(0)), Errc::negative_weight, "weights must be nonnegative");

    MetaMeasure m;
    for (size_t idx = 0; idx < atoms.size(); ++idx) {
      if (weights[idx] == T(0)) continue;
      bool merged = false;
      for (size_t k = 0; k < m.atoms_.size(); ++k) {
        if (atoms_coincide(m.atoms_[k], atoms[idx])) {
          m.weights_[k] += weights[idx];
          merged = true;
          break;
        }
      }
      if (!merged) {
        m.atoms_.push_back(std::move(atoms[idx]));
        m.weights_.push_back(weights[idx]);
      }
    }
    require(!m.atoms_.empty(), Errc::mass_not_one, "all weights are zero");
    const T total = std::accumulate(m.weights_.begin(), m.weights_.end(), T(0));
    require(tol_eq(total, T(1), tol::mass), Errc::mass_not_one, "meta-weights must sum to 1");

    // Canonical order.
    std::vector<size_t> order(m.atoms_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return DiscreteMeasure<T>::compare(m.atoms_[a], m.atoms_[b]) < 0;
    });
    std::vector<DiscreteMeasure<T>> atoms_sorted;
    std::vector<T> weights_sorted;
    atoms_sorted.reserve(order.size());
    weights_sorted.reserve(order.size());
    for (size_t k : order) {
      atoms_sorted.push_back(std::move(m.atoms_[k]));
      weights_sorted.push_back(m.weights_[k]);
    }
    m.atoms_ = std::move(atoms_sorted);
    m.weights_ = std::move(weights_sorted);
    return m;
  }

  static MetaMeasure dirac(DiscreteMeasure<T> lambda) { return make({std::move(lambda)}, {T(1)}); }

  const std::vector<DiscreteMeasure<T>>& atoms() const { return atoms_; }
  const std::vector<T>& weights() const { return weights_; }
  const DiscreteMeasure<T>& atom(size_t i) const { return atoms_[i]; }
  const T& weight(size_t i) const { return weights_[i]; }
  size_t size() const { return atoms_.size(); }
  int dim() const { return atoms_.front().dim(); }

  bool operator==(const MetaMeasure& o) const {
    return atoms_ == o.atoms_ && weights_ == o.weights_;
  }

 private:
  static bool atoms_coincide(const DiscreteMeasure<T>& a, const DiscreteMeasure<T>& b) {
    if constexpr (scalar_traits<T>::exact)
      return a == b;
    else
      return a == b || scalar_traits<T>::to_double(wasserstein1(a, b)) <= tol::meta;
  }

  std::vector<DiscreteMeasure<T>> atoms_;
  std::vector<T> weights_;
};

using MetaF = MetaMeasure<double>;
using MetaQ = MetaMeasure<Rat>;

// Mixture of the meta-atoms: the generalized barycenter of N as a measure on
// the target space.
template <class T>
DiscreteMeasure<T> generalized_barycenter(const MetaMeasure<T>& n) {
  std::vector<Point> pts;
  std::vector<T> ws;
  for (size_t i = 0; i < n.size(); ++i)
    for (size_t j = 0; j < n.atom(i).size(); ++j) {
      pts.push_back(n.atom(i).atom(j));
      ws.push_back(n.weight(i) * n.atom(i).weight(j));
    }
  return DiscreteMeasure<T>::make(std::move(pts), std::move(ws));
}

// W1 on meta-measures: an outer transportation solve whose ground cost is the
// pairwise W1 between meta-atoms (each entry an inner transport solve).
template <class T>
T meta_wasserstein(const MetaMeasure<T>& n1, const MetaMeasure<T>& n2) {
  require(n1.dim() == n2.dim(), Errc::dimension_mismatch, "meta-measures on different spaces");
  TransportationInstance<T> inst;
  inst.supply = n1.weights();
  inst.demand = n2.weights();
  inst.cost = Matrix<T>(n1.size(), n2.size());
  for (size_t i = 0; i < n1.size(); ++i)
    for (size_t j = 0; j < n2.size(); ++j)
      inst.cost(i, j) = n1.atom(i) == n2.atom(j) ? T(0) : wasserstein1(n1.atom(i), n2.atom(j));
  const SolverSolution<T> sol = solve_transportation(inst);
  if (sol.status != SolveStatus::optimal)
    raise(Errc::numerical_failure, "nested transport solve failed");
  return sol.objective;
}

// Barycenter constraint: the mixture of Lambda's atoms must reproduce nu.
template <class T>
bool check_class_constraint(const MetaMeasure<T>& lambda, const DiscreteMeasure<T>& nu) {
  require(lambda.dim() == nu.dim(), Errc::dimension_mismatch,
          "meta-measure and target on different spaces");
  const DiscreteMeasure<T> mix = generalized_barycenter(lambda);
  if constexpr (scalar_traits<T>::exact)
    return mix == nu;
  else
    return mix == nu || scalar_traits<T>::to_double(wasserstein1(mix, nu)) <= tol::meta;
}

}  // namespace ot
