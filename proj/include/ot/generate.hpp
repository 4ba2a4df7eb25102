#pragma once

#include <cstdint>
#include <vector>

#include "ot/cost.hpp"
#include "ot/disintegration.hpp"
#include "ot/measure.hpp"
#include "ot/meta.hpp"
#include "ot/solver.hpp"

namespace ot {

// Deterministic generator for randomized suites and fixtures. splitmix64 is
// platform-independent, unlike the standard distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, n).
  size_t next_index(size_t n) { return static_cast<size_t>(next_u64() % n); }

  // Uniform integer in [lo, hi].
  long next_int(long lo, long hi) {
    return lo + static_cast<long>(next_u64() % static_cast<uint64_t>(hi - lo + 1));
  }

  double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  uint64_t state_;
};

namespace gen {

inline Point random_point(Rng& rng, int dim, double lo = -5.0, double hi = 5.0) {
  Point p(static_cast<size_t>(dim));
  for (double& c : p) c = rng.next_range(lo, hi);
  return p;
}

// Distinct random atoms with strictly positive normalized weights.
inline MeasureF random_measure_f(Rng& rng, size_t n_atoms, int dim) {
  std::vector<Point> pts;
  std::vector<double> ws;
  for (size_t i = 0; i < n_atoms; ++i) {
    pts.push_back(random_point(rng, dim));
    ws.push_back(0.1 + rng.next_unit());
  }
  return MeasureF::make(std::move(pts), std::move(ws), /*normalize=*/true);
}

// Rational weights m_i / M with integer masses; exactly sums to one.
inline MeasureQ random_measure_q(Rng& rng, size_t n_atoms, int dim, long max_mass = 12) {
  std::vector<Point> pts;
  std::vector<long> masses;
  long total = 0;
  for (size_t i = 0; i < n_atoms; ++i) {
    Point p(static_cast<size_t>(dim));
    for (double& c : p) c = static_cast<double>(rng.next_int(-8, 8));
    pts.push_back(std::move(p));
    masses.push_back(rng.next_int(1, max_mass));
    total += masses.back();
  }
  std::vector<Rat> ws;
  for (long m : masses) ws.emplace_back(m, total);
  return MeasureQ::make(std::move(pts), std::move(ws));
}

inline TransportationInstance<double> random_instance_f(Rng& rng, size_t m, size_t n,
                                                        double cost_lo = 0.0,
                                                        double cost_hi = 10.0) {
  TransportationInstance<double> inst;
  double total_s = 0;
  for (size_t i = 0; i < m; ++i) {
    inst.supply.push_back(0.1 + rng.next_unit());
    total_s += inst.supply.back();
  }
  for (double& s : inst.supply) s /= total_s;
  double total_d = 0;
  for (size_t j = 0; j < n; ++j) {
    inst.demand.push_back(0.1 + rng.next_unit());
    total_d += inst.demand.back();
  }
  for (double& d : inst.demand) d /= total_d;
  inst.cost = Matrix<double>(m, n);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) inst.cost(i, j) = rng.next_range(cost_lo, cost_hi);
  return inst;
}

// Rational instance with small-denominator data, suitable for exact oracles.
inline TransportationInstance<Rat> random_instance_q(Rng& rng, size_t m, size_t n,
                                                     long max_mass = 9, long max_num = 30,
                                                     long max_den = 7) {
  TransportationInstance<Rat> inst;
  long total_s = 0, total_d = 0;
  std::vector<long> sm(m), dm(n);
  for (size_t i = 0; i < m; ++i) {
    sm[i] = rng.next_int(1, max_mass);
    total_s += sm[i];
  }
  for (size_t j = 0; j < n; ++j) {
    dm[j] = rng.next_int(1, max_mass);
    total_d += dm[j];
  }
  for (size_t i = 0; i < m; ++i) inst.supply.emplace_back(sm[i] * total_d, total_s * total_d);
  for (size_t j = 0; j < n; ++j) inst.demand.emplace_back(dm[j] * total_s, total_d * total_s);
  inst.cost = Matrix<Rat>(m, n);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j)
      inst.cost(i, j) = Rat(rng.next_int(0, max_num), rng.next_int(1, max_den));
  return inst;
}

// Random plan over a shared source: each atom gets a random conditional on
// the given target points; the second marginal is whatever the mixture gives.
template <class T>
TransportPlan<T> random_plan(Rng& rng, const DiscreteMeasure<T>& mu,
                             const std::vector<Point>& targets) {
  DisintegrationMap<T> f;
  f.base = mu;
  for (size_t i = 0; i < mu.size(); ++i) {
    std::vector<Point> pts;
    std::vector<T> ws;
    if constexpr (scalar_traits<T>::exact) {
      long total = 0;
      std::vector<long> masses;
      for (const Point& y : targets) {
        masses.push_back(rng.next_int(0, 6));
        total += masses.back();
      }
      if (total == 0) {
        masses[rng.next_index(targets.size())] = 1;
        total = 1;
      }
      for (size_t j = 0; j < targets.size(); ++j) {
        if (masses[j] == 0) continue;
        pts.push_back(targets[j]);
        ws.emplace_back(masses[j], total);
      }
      f.conditionals.push_back(DiscreteMeasure<T>::make(std::move(pts), std::move(ws)));
    } else {
      for (const Point& y : targets) {
        const double w = rng.next_unit();
        if (w < 0.35) continue;  // sparse rows
        pts.push_back(y);
        ws.push_back(w);
      }
      if (pts.empty()) {
        pts.push_back(targets[rng.next_index(targets.size())]);
        ws.push_back(1.0);
      }
      f.conditionals.push_back(
          DiscreteMeasure<T>::make(std::move(pts), std::move(ws), /*normalize=*/true));
    }
  }
  return recombine(f, mu);
}

// Random meta-measure: n_atoms conditionals over shared target points.
template <class T>
MetaMeasure<T> random_meta(Rng& rng, size_t n_atoms, size_t points_per_atom, int dim) {
  std::vector<DiscreteMeasure<T>> atoms;
  std::vector<T> weights;
  if constexpr (scalar_traits<T>::exact) {
    long total = 0;
    std::vector<long> masses;
    for (size_t a = 0; a < n_atoms; ++a) {
      masses.push_back(rng.next_int(1, 9));
      total += masses.back();
      atoms.push_back(random_measure_q(rng, points_per_atom, dim));
    }
    for (long m : masses) weights.emplace_back(m, total);
  } else {
    for (size_t a = 0; a < n_atoms; ++a) {
      atoms.push_back(random_measure_f(rng, points_per_atom, dim));
      weights.push_back(0.2 + rng.next_unit());
    }
    double total = 0;
    for (double w : weights) total += w;
    for (T& w : weights) w /= total;
  }
  return MetaMeasure<T>::make(std::move(atoms), std::move(weights));
}

}  // namespace gen
}  // namespace ot
