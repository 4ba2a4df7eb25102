#pragma once

#include <cmath>
#include <string>

#include "ot/rational.hpp"

namespace ot {

// Numeric mode of a value or measure. Rational mode does exact arithmetic and
// exact comparisons; float mode uses the tolerances below.
enum class Mode { floating, rational };

inline const char* mode_name(Mode m) { return m == Mode::floating ? "float" : "rational"; }

// Library-wide tolerances (float mode only; rational mode compares exactly).
namespace tol {
inline constexpr double mass = 1e-9;   // total-mass deviation
inline constexpr double geom = 1e-12;  // atom coincidence (per coordinate)
inline constexpr double feas = 1e-9;   // plan marginal deviation
inline constexpr double dual = 1e-7;   // duality gap / reduced-cost slack
inline constexpr double meta = 1e-7;   // meta-atom merge distance (W1)
inline constexpr double twist = 1e-6;  // finite-difference gradient threshold
}  // namespace tol

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static constexpr Mode mode = Mode::floating;
  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static std::string to_string(double x);
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::rational;
  static Rat from_double(double x) { return rat_from_double(x); }
  static double to_double(const Rat& x) { return rat_to_double(x); }
  static std::string to_string(const Rat& x) { return format_rational(x); }
};

template <class T>
inline T t_abs(const T& a) {
  return a < T(0) ? T(-a) : a;
}

// a == b up to eps; exact scalars ignore eps.
template <class T>
inline bool tol_eq(const T& a, const T& b, double eps) {
  if constexpr (scalar_traits<T>::exact)
    return a == b;
  else
    return std::abs(a - b) <= eps;
}

// a <= b + eps; exact scalars compare a <= b.
template <class T>
inline bool tol_le(const T& a, const T& b, double eps) {
  if constexpr (scalar_traits<T>::exact)
    return a <= b;
  else
    return a <= b + eps;
}

template <class T>
inline bool tol_is_zero(const T& a, double eps) {
  return tol_eq(a, T(0), eps);
}

std::string format_double(double x);

inline std::string scalar_traits<double>::to_string(double x) { return format_double(x); }

}  // namespace ot
