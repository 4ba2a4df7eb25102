#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "ot/error.hpp"
#include "ot/point.hpp"
#include "ot/scalar.hpp"

namespace ot {

// Finitely supported probability measure on points of R^d.
//
// Canonical form: zero-weight atoms dropped, coincident atoms merged (exact
// coincidence in rational mode, L-inf <= tol::geom in float mode), atoms
// sorted lexicographically. Equal measures therefore have identical
// representations and operator== is exact.
template <class T>
class DiscreteMeasure {
 public:
  using Scalar = T;

  DiscreteMeasure() = default;

  static DiscreteMeasure make(std::vector<Point> atoms, std::vector<T> weights,
                              bool normalize = false) {
    require(!atoms.empty(), Errc::invalid_argument, "measure needs at least one atom");
    require(atoms.size() == weights.size(), Errc::dimension_mismatch,
            "atoms and weights of different lengths");
    const size_t d = atoms.front().size();
    require(d >= 1 && d <= static_cast<size_t>(kMaxDim), Errc::dimension_mismatch,
            "dimension must be in [1, 16]");
    for (const Point& p : atoms) {
      require(p.size() == d, Errc::dimension_mismatch, "atoms of inconsistent dimension");
      for (double c : p)
        require(std::isfinite(c), Errc::invalid_argument, "non-finite atom coordinate");
    }
    for (const T& w : weights) {
      if constexpr (!scalar_traits<T>::exact)
        require(std::isfinite(w), Errc::invalid_argument, "non-finite weight");
      require(!(w < T(0)), Errc::negative_weight, "weights must be nonnegative");
    }

    DiscreteMeasure m;
    m.dim_ = static_cast<int>(d);

    // Sort index view lexicographically, then merge coincident atoms into the
    // first (lexicographically smallest) representative of each group.
    std::vector<size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return compare_lex(atoms[a], atoms[b]) < 0;
    });
    const double eps = scalar_traits<T>::exact ? 0.0 : tol::geom;
    for (size_t idx : order) {
      if (weights[idx] == T(0)) continue;  // dropped at construction
      bool merged = false;
      for (size_t k = 0; k < m.atoms_.size(); ++k) {
        if (points_close(m.atoms_[k], atoms[idx], eps)) {
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

    T total = std::accumulate(m.weights_.begin(), m.weights_.end(), T(0));
    if (normalize) {
      require(total > T(0), Errc::mass_not_one, "cannot normalize zero mass");
      for (T& w : m.weights_) w /= total;
    } else {
      require(tol_eq(total, T(1), tol::mass), Errc::mass_not_one,
              "weights must sum to 1 (pass normalize to rescale)");
    }
    return m;
  }

  static DiscreteMeasure dirac(Point p) { return make({std::move(p)}, {T(1)}); }

  const std::vector<Point>& atoms() const { return atoms_; }
  const std::vector<T>& weights() const { return weights_; }
  const Point& atom(size_t i) const { return atoms_[i]; }
  const T& weight(size_t i) const { return weights_[i]; }
  size_t size() const { return atoms_.size(); }
  int dim() const { return dim_; }
  static constexpr Mode mode() { return scalar_traits<T>::mode; }

  T total_mass() const { return std::accumulate(weights_.begin(), weights_.end(), T(0)); }

  bool operator==(const DiscreteMeasure& o) const {
    return dim_ == o.dim_ && atoms_ == o.atoms_ && weights_ == o.weights_;
  }

  // Strict weak order on canonical representations; used for meta-level
  // canonical sorting.
  static int compare(const DiscreteMeasure& a, const DiscreteMeasure& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
      const int c = compare_lex(a.atoms_[i], b.atoms_[i]);
      if (c != 0) return c;
    }
    for (size_t i = 0; i < a.size(); ++i) {
      if (a.weights_[i] < b.weights_[i]) return -1;
      if (b.weights_[i] < a.weights_[i]) return 1;
    }
    return 0;
  }

 private:
  std::vector<Point> atoms_;
  std::vector<T> weights_;
  int dim_ = 0;
};

using MeasureF = DiscreteMeasure<double>;
using MeasureQ = DiscreteMeasure<Rat>;

template <class T>
DiscreteMeasure<T> make_measure(std::vector<Point> atoms, std::vector<T> weights,
                                bool normalize = false) {
  return DiscreteMeasure<T>::make(std::move(atoms), std::move(weights), normalize);
}

// Weighted mean of atoms. Accumulated in T, so rational-mode barycenters of
// rational-coordinate atoms are exact before the final conversion.
template <class T>
Point barycenter(const DiscreteMeasure<T>& m) {
  Point out(static_cast<size_t>(m.dim()), 0.0);
  std::vector<T> acc(out.size(), T(0));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t k = 0; k < out.size(); ++k)
      acc[k] += m.weight(i) * scalar_traits<T>::from_double(m.atom(i)[k]);
  for (size_t k = 0; k < out.size(); ++k) out[k] = scalar_traits<T>::to_double(acc[k]);
  return out;
}

// Push-forward t_# m for an index map given as the target point of each atom.
template <class T>
DiscreteMeasure<T> pushforward_by_index_map(const DiscreteMeasure<T>& m,
                                            const std::vector<Point>& target_of_atom) {
  require(target_of_atom.size() == m.size(), Errc::incomplete_assignment,
          "assignment must cover every atom index");
  return DiscreteMeasure<T>::make(target_of_atom, m.weights());
}

}  // namespace ot
