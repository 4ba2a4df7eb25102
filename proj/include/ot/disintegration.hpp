#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ot/kantorovich.hpp"
#include "ot/measure.hpp"
#include "ot/meta.hpp"

namespace ot {

// Conditional-measure decomposition of a plan: one measure on the target
// space per atom of the base. The discrete disintegration is unique (no
// almost-everywhere ambiguity: every base atom has positive weight).
template <class T>
struct DisintegrationMap {
  DiscreteMeasure<T> base;
  std::vector<DiscreteMeasure<T>> conditionals;

  size_t size() const { return conditionals.size(); }
};

// Row-normalizes the plan. In float mode, entries below tol::feas of the row
// mass are treated as zero so solver dust does not create spurious atoms.
template <class T>
DisintegrationMap<T> disintegrate(const TransportPlan<T>& plan) {
  DisintegrationMap<T> f;
  f.base = plan.source();
  f.conditionals.reserve(plan.source().size());
  for (size_t i = 0; i < plan.source().size(); ++i) {
    const T row_mass = plan.source().weight(i);
    std::vector<Point> pts;
    std::vector<T> ws;
    for (size_t j = 0; j < plan.target().size(); ++j) {
      const T& v = plan.matrix()(i, j);
      if constexpr (scalar_traits<T>::exact) {
        if (v == T(0)) continue;
      } else {
        if (v <= tol::feas * row_mass) continue;
      }
      pts.push_back(plan.target().atom(j));
      ws.push_back(v / row_mass);
    }
    f.conditionals.push_back(DiscreteMeasure<T>::make(std::move(pts), std::move(ws),
                                                      /*normalize=*/!scalar_traits<T>::exact));
  }
  return f;
}

// gamma = f(x) (x) mu: plan matrix over the union of the conditional supports.
template <class T>
TransportPlan<T> recombine(const DisintegrationMap<T>& f, const DiscreteMeasure<T>& mu) {
  require(f.base == mu, Errc::base_mismatch, "disintegration base differs from the given measure");
  std::vector<Point> pts;
  std::vector<T> ws;
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < f.conditionals[i].size(); ++j) {
      pts.push_back(f.conditionals[i].atom(j));
      ws.push_back(mu.weight(i) * f.conditionals[i].weight(j));
    }
  const DiscreteMeasure<T> nu = DiscreteMeasure<T>::make(pts, ws);
  Matrix<T> m(mu.size(), nu.size(), T(0));
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < f.conditionals[i].size(); ++j)
      m(i, find_atom_index<T>(nu.atoms(), f.conditionals[i].atom(j))) +=
          mu.weight(i) * f.conditionals[i].weight(j);
  return TransportPlan<T>::make(mu, nu, std::move(m));
}

// f_# mu as a meta-measure: distinct conditionals become meta-atoms with the
// base weights summed.
template <class T>
MetaMeasure<T> pushforward_meta(const DisintegrationMap<T>& f) {
  return MetaMeasure<T>::make(f.conditionals, f.base.weights());
}

// Transport-class equivalence: plans over a shared source are equivalent when
// the push-forwards of their disintegration maps coincide. Decided through
// the nested W1 distance (exactly zero in rational mode for equal classes).
template <class T>
bool classes_equal(const TransportPlan<T>& gamma, const TransportPlan<T>& eta) {
  require(gamma.source() == eta.source(), Errc::source_mismatch,
          "plans must share the same source measure");
  const MetaMeasure<T> fg = pushforward_meta(disintegrate(gamma));
  const MetaMeasure<T> gg = pushforward_meta(disintegrate(eta));
  if (fg == gg) return true;
  const T dist = meta_wasserstein(fg, gg);
  if constexpr (scalar_traits<T>::exact)
    return dist == T(0);
  else
    return dist <= tol::meta;
}

template <class T>
DiscreteMeasure<T> second_marginal(const TransportPlan<T>& plan) {
  return DiscreteMeasure<T>::make(plan.target().atoms(), plan.matrix().col_sums());
}

template <class T>
struct MapExtraction {
  std::optional<std::vector<size_t>> map;  // target atom index per source atom
  std::vector<size_t> splitting_atoms;     // source indices whose conditional splits
};

// Recovers the inducing index map when every conditional is a Dirac; the
// recovered target always coincides with the conditional barycenter.
// Otherwise reports the splitting atoms.
template <class T>
MapExtraction<T> map_from_class_plan(const TransportPlan<T>& gamma) {
  const DisintegrationMap<T> f = disintegrate(gamma);
  MapExtraction<T> out;
  std::vector<size_t> map(f.size(), 0);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f.conditionals[i].size() != 1) {
      out.splitting_atoms.push_back(i);
      continue;
    }
    map[i] = find_atom_index<T>(gamma.target().atoms(), f.conditionals[i].atom(0));
  }
  if (out.splitting_atoms.empty()) out.map = std::move(map);
  return out;
}

}  // namespace ot
