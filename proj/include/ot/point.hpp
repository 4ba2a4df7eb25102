#pragma once

#include <cmath>
#include <vector>

#include "ot/error.hpp"

namespace ot {

// Support points live in R^d with d <= kMaxDim (desk-scale scope).
using Point = std::vector<double>;

inline constexpr int kMaxDim = 16;

inline int compare_lex(const Point& a, const Point& b) {
  const size_t n = a.size() < b.size() ? a.size() : b.size();
  for (size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  if (a.size() < b.size()) return -1;
  if (a.size() > b.size()) return 1;
  return 0;
}

// Coincidence test for atom merging: L-infinity distance <= eps.
inline bool points_close(const Point& a, const Point& b, double eps) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > eps) return false;
  return true;
}

inline double sq_euclidean(const Point& a, const Point& b) {
  require(a.size() == b.size(), Errc::dimension_mismatch, "points of different dimension");
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double euclidean(const Point& a, const Point& b) { return std::sqrt(sq_euclidean(a, b)); }

inline double inner_product(const Point& a, const Point& b) {
  require(a.size() == b.size(), Errc::dimension_mismatch, "points of different dimension");
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a) {
  double s = 0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

}  // namespace ot
