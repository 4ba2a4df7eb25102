#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "ot/error.hpp"
#include "ot/matrix.hpp"
#include "ot/measure.hpp"
#include "ot/point.hpp"

namespace ot {

// Cost specification c : X x Y -> R. Geometric variants evaluate on points;
// ExplicitMatrix and Separable are sampled on support indices. Evaluation is
// deterministic: same inputs give bit-identical doubles.
struct CostSpec {
  enum class Kind { euclidean, sqeuclidean, inner, matrix, separable };

  Kind kind = Kind::euclidean;
  double p = 1.0;                  // exponent for euclidean: c = |x-y|^p
  Matrix<double> rows;             // matrix kind
  std::vector<double> a, b;        // separable kind: c(i,j) = a[i] * b[j]

  static CostSpec euclidean(double p) {
    require(p >= 1.0, Errc::invalid_argument, "euclidean cost needs p >= 1");
    CostSpec c;
    c.kind = Kind::euclidean;
    c.p = p;
    return c;
  }
  static CostSpec sqeuclidean() {
    CostSpec c;
    c.kind = Kind::sqeuclidean;
    return c;
  }
  static CostSpec inner() {
    CostSpec c;
    c.kind = Kind::inner;
    return c;
  }
  static CostSpec explicit_matrix(Matrix<double> m) {
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j)
        require(m(i, j) >= 0.0, Errc::negative_weight, "explicit cost matrix must be nonnegative");
    CostSpec c;
    c.kind = Kind::matrix;
    c.rows = std::move(m);
    return c;
  }
  static CostSpec separable(std::vector<double> a, std::vector<double> b) {
    require(!a.empty() && !b.empty(), Errc::invalid_argument, "separable samples must be nonempty");
    CostSpec c;
    c.kind = Kind::separable;
    c.a = std::move(a);
    c.b = std::move(b);
    return c;
  }

  const char* kind_name() const {
    switch (kind) {
      case Kind::euclidean: return "euclidean";
      case Kind::sqeuclidean: return "sqeuclidean";
      case Kind::inner: return "inner";
      case Kind::matrix: return "matrix";
      case Kind::separable: return "separable";
    }
    return "?";
  }
};

// InnerProduct is the one variant exempt from nonnegativity; separable costs
// may also change sign if the samples do.
inline bool cost_may_be_negative(const CostSpec& c) {
  switch (c.kind) {
    case CostSpec::Kind::inner: return true;
    case CostSpec::Kind::separable: {
      bool a_neg = false, a_pos = false, b_neg = false, b_pos = false;
      for (double v : c.a) (v < 0 ? a_neg : a_pos) = true;
      for (double v : c.b) (v < 0 ? b_neg : b_pos) = true;
      return (a_neg && b_pos) || (a_pos && b_neg);
    }
    default: return false;
  }
}

inline bool cost_is_geometric(const CostSpec& c) {
  return c.kind == CostSpec::Kind::euclidean || c.kind == CostSpec::Kind::sqeuclidean ||
         c.kind == CostSpec::Kind::inner;
}

// Point form; valid for geometric variants.
inline double eval_cost(const CostSpec& c, const Point& x, const Point& y) {
  switch (c.kind) {
    case CostSpec::Kind::euclidean: {
      const double d = euclidean(x, y);
      if (c.p == 1.0) return d;
      if (c.p == 2.0) return d * d;
      return std::pow(d, c.p);
    }
    case CostSpec::Kind::sqeuclidean: return sq_euclidean(x, y);
    case CostSpec::Kind::inner: return inner_product(x, y);
    default:
      raise(Errc::unsupported_cost_variant,
            std::string(c.kind_name()) + " cost is sampled by index, not by point");
  }
}

// Index form; valid for matrix and separable variants.
inline double eval_cost(const CostSpec& c, size_t i, size_t j) {
  switch (c.kind) {
    case CostSpec::Kind::matrix:
      require(i < c.rows.rows() && j < c.rows.cols(), Errc::index_out_of_range,
              "cost matrix index out of range");
      return c.rows(i, j);
    case CostSpec::Kind::separable:
      require(i < c.a.size() && j < c.b.size(), Errc::index_out_of_range,
              "separable sample index out of range");
      return c.a[i] * c.b[j];
    default:
      raise(Errc::unsupported_cost_variant,
            std::string(c.kind_name()) + " cost is evaluated on points, not indices");
  }
}

// Full cost table over two supports, lifted into the working scalar type.
// The double evaluation is shared by both modes so rational-mode results are
// exact functions of the same lifted values everywhere.
template <class T>
Matrix<T> cost_table(const CostSpec& c, const std::vector<Point>& xs,
                     const std::vector<Point>& ys) {
  if (c.kind == CostSpec::Kind::matrix) {
    require(c.rows.rows() == xs.size() && c.rows.cols() == ys.size(), Errc::dimension_mismatch,
            "explicit cost matrix does not match the supports");
  }
  if (c.kind == CostSpec::Kind::separable) {
    require(c.a.size() == xs.size() && c.b.size() == ys.size(), Errc::dimension_mismatch,
            "separable samples do not match the supports");
  }
  Matrix<T> m(xs.size(), ys.size());
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = 0; j < ys.size(); ++j) {
      const double v =
          cost_is_geometric(c) ? eval_cost(c, xs[i], ys[j]) : eval_cost(c, i, j);
      m(i, j) = scalar_traits<T>::from_double(v);
    }
  return m;
}

template <class T>
Matrix<T> cost_table(const CostSpec& c, const DiscreteMeasure<T>& mu,
                     const DiscreteMeasure<T>& nu) {
  if (cost_is_geometric(c))
    require(mu.dim() == nu.dim(), Errc::dimension_mismatch,
            "geometric cost needs equal dimensions");
  return cost_table<T>(c, mu.atoms(), nu.atoms());
}

}  // namespace ot
