#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ot/cost.hpp"
#include "ot/disintegration.hpp"
#include "ot/lp.hpp"
#include "ot/map_search.hpp"
#include "ot/measure.hpp"
#include "ot/meta.hpp"

namespace ot {

// Expected cost of sending x to the measure lambda: sum of lambda-weights
// times ground costs. Point form for geometric costs.
template <class T>
T lifted_cost(const CostSpec& c, const Point& x, const DiscreteMeasure<T>& lambda) {
  T acc(0);
  for (size_t j = 0; j < lambda.size(); ++j)
    acc += lambda.weight(j) * scalar_traits<T>::from_double(eval_cost(c, x, lambda.atom(j)));
  return acc;
}

// Index form for sampled costs: x_index into the source support, lambda atoms
// resolved inside the reference target support.
template <class T>
T lifted_cost(const CostSpec& c, size_t x_index, const DiscreteMeasure<T>& lambda,
              const std::vector<Point>& y_support) {
  T acc(0);
  for (size_t j = 0; j < lambda.size(); ++j) {
    const size_t y = find_atom_index<T>(y_support, lambda.atom(j));
    acc += lambda.weight(j) * scalar_traits<T>::from_double(eval_cost(c, x_index, y));
  }
  return acc;
}

// Table of lifted costs over (atoms of mu) x (atoms of Lambda). Sampled costs
// are indexed against the canonical support of the generalized barycenter.
template <class T>
Matrix<T> lifted_cost_table(const CostSpec& c, const DiscreteMeasure<T>& mu,
                            const MetaMeasure<T>& lambda) {
  Matrix<T> out(mu.size(), lambda.size());
  if (cost_is_geometric(c)) {
    for (size_t i = 0; i < mu.size(); ++i)
      for (size_t j = 0; j < lambda.size(); ++j)
        out(i, j) = lifted_cost(c, mu.atom(i), lambda.atom(j));
  } else {
    const std::vector<Point> y_support = generalized_barycenter(lambda).atoms();
    for (size_t i = 0; i < mu.size(); ++i)
      for (size_t j = 0; j < lambda.size(); ++j)
        out(i, j) = lifted_cost(c, i, lambda.atom(j), y_support);
  }
  return out;
}

// Result of the class-constrained problem: the relaxed transport value over
// couplings of mu with Lambda, and the map-constrained value over
// disintegration maps f with f_# mu = Lambda (weight profile reproduced
// exactly). The map value is computed twice, by the abstract sum and by
// integrating the cost against the induced plan; the two agree (exactly in
// rational mode).
template <class T>
struct ClassProblemReport {
  T relaxed_value{};
  Matrix<T> relaxed_plan;
  bool feasible_maps_exist = false;
  std::optional<std::vector<size_t>> optimal_assignment;  // meta-atom per source atom
  std::optional<T> map_value;                             // empty means +infinity
  std::optional<T> map_value_via_plan;
  std::optional<T> gap;  // map_value - relaxed_value
  std::vector<std::pair<size_t, size_t>> degeneracy_flags;  // tie-degenerate meta-atom pairs
  long search_nodes = 0;
};

namespace detail {

// Meta-atom pairs whose lifted-cost difference is constant across the source
// atoms; between such atoms every assignment choice costs the same.
template <class T>
std::vector<std::pair<size_t, size_t>> tie_degenerate_pairs(const Matrix<T>& ctilde) {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t a = 0; a < ctilde.cols(); ++a)
    for (size_t b = a + 1; b < ctilde.cols(); ++b) {
      bool constant = true;
      const T base = ctilde(0, a) - ctilde(0, b);
      for (size_t i = 1; i < ctilde.rows() && constant; ++i)
        constant = tol_eq(ctilde(i, a) - ctilde(i, b), base, tol::dual);
      if (constant) out.emplace_back(a, b);
    }
  return out;
}

}  // namespace detail

template <class T>
ClassProblemReport<T> solve_class_problem(const CostSpec& c, const DiscreteMeasure<T>& mu,
                                          const MetaMeasure<T>& lambda,
                                          const MapSearchOptions& opts = {}) {
  require(mu.size() <= opts.hard_limit, Errc::size_limit_exceeded,
          "exact map search limited to " + std::to_string(opts.hard_limit) + " source atoms");
  const Matrix<T> ctilde = lifted_cost_table(c, mu, lambda);

  ClassProblemReport<T> report;
  report.degeneracy_flags = detail::tie_degenerate_pairs(ctilde);

  TransportationInstance<T> relaxed{mu.weights(), lambda.weights(), ctilde};
  const SolverSolution<T> sol = solve_transportation(relaxed);
  if (sol.status != SolveStatus::optimal)
    raise(Errc::numerical_failure, "relaxed class solve did not reach optimality");
  report.relaxed_value = sol.objective;
  report.relaxed_plan = sol.plan;

  const MapSearchResult<T> found =
      min_cost_profile_assignment(mu.weights(), lambda.weights(), ctilde, opts);
  report.search_nodes = found.nodes;
  report.feasible_maps_exist = found.feasible;
  if (!found.feasible) return report;

  report.optimal_assignment = found.best_map;
  report.map_value = found.best_value;
  report.gap = found.best_value - report.relaxed_value;

  // Same value through the induced plan gamma = f (x) mu.
  DisintegrationMap<T> f;
  f.base = mu;
  for (size_t i = 0; i < mu.size(); ++i) f.conditionals.push_back(lambda.atom(found.best_map[i]));
  const TransportPlan<T> gamma = recombine(f, mu);
  const Matrix<T> ground = cost_table<T>(c, mu.atoms(),
                                         cost_is_geometric(c)
                                             ? gamma.target().atoms()
                                             : generalized_barycenter(lambda).atoms());
  T integral(0);
  if (cost_is_geometric(c)) {
    for (size_t i = 0; i < mu.size(); ++i)
      for (size_t j = 0; j < gamma.target().size(); ++j)
        integral += gamma.matrix()(i, j) * ground(i, j);
  } else {
    const std::vector<Point> y_support = generalized_barycenter(lambda).atoms();
    for (size_t i = 0; i < mu.size(); ++i)
      for (size_t j = 0; j < gamma.target().size(); ++j) {
        const size_t y = find_atom_index<T>(y_support, gamma.target().atom(j));
        integral += gamma.matrix()(i, j) * ground(i, y);
      }
  }
  report.map_value_via_plan = integral;
  if (!tol_eq(integral, found.best_value, tol::dual))
    raise(Errc::numerical_failure, "map value disagrees between its two computations");
  return report;
}

template <class T>
struct KantorovichComparison {
  T mk_value{};     // unconstrained transport to the barycenter of Lambda
  T class_value{};  // relaxed transport from mu to Lambda under the lifted cost
  bool inequality_holds = false;
};

template <class T>
KantorovichComparison<T> compare_with_kantorovich(const CostSpec& c, const DiscreteMeasure<T>& mu,
                                                  const MetaMeasure<T>& lambda) {
  KantorovichComparison<T> out;
  const DiscreteMeasure<T> nu = generalized_barycenter(lambda);
  out.mk_value = solve_mk(c, mu, nu).value;
  TransportationInstance<T> relaxed{mu.weights(), lambda.weights(),
                                    lifted_cost_table(c, mu, lambda)};
  const SolverSolution<T> sol = solve_transportation(relaxed);
  if (sol.status != SolveStatus::optimal)
    raise(Errc::numerical_failure, "relaxed class solve did not reach optimality");
  out.class_value = sol.objective;
  out.inequality_holds = tol_le(out.mk_value, out.class_value, tol::dual);
  return out;
}

// The meta-measure of the class induced by an index map: Dirac meta-atoms at
// the target points, weights merged.
template <class T>
MetaMeasure<T> class_of_map(const DiscreteMeasure<T>& mu,
                            const std::vector<Point>& target_of_atom) {
  require(target_of_atom.size() == mu.size(), Errc::incomplete_assignment,
          "assignment must cover every atom index");
  std::vector<DiscreteMeasure<T>> atoms;
  atoms.reserve(mu.size());
  for (const Point& p : target_of_atom) atoms.push_back(DiscreteMeasure<T>::dirac(p));
  return MetaMeasure<T>::make(std::move(atoms), mu.weights());
}

// Existence diagnostics for the map-constrained problem between meta-atom
// pairs. Closed forms: inner-product cost compares barycenters; separable
// cost compares the b-integrals. The empirical verdict flags pairs whose
// lifted-cost difference is constant across the source atoms (mass may then
// split between them at no cost).
struct PairDiagnosis {
  size_t i = 0, j = 0;
  bool closed_form_available = false;
  bool closed_form_degenerate = false;
  std::vector<double> barycenter_difference;  // inner-product cost
  double sample_integral_difference = 0.0;    // separable cost
  bool tie_degenerate = false;
  double max_deviation_from_constant = 0.0;
};

struct DegeneracyReport {
  std::vector<PairDiagnosis> pairs;
  bool any_flagged = false;
};

template <class T>
DegeneracyReport diagnose_existence(const CostSpec& c, const DiscreteMeasure<T>& mu,
                                    const MetaMeasure<T>& lambda,
                                    bool require_closed_form = false) {
  const bool closed_form = c.kind == CostSpec::Kind::inner || c.kind == CostSpec::Kind::separable;
  require(closed_form || !require_closed_form, Errc::unsupported_cost_variant,
          "closed-form criteria exist for inner-product and separable costs only");
  const Matrix<T> ctilde = lifted_cost_table(c, mu, lambda);
  const std::vector<Point> y_support =
      c.kind == CostSpec::Kind::separable ? generalized_barycenter(lambda).atoms()
                                          : std::vector<Point>{};

  DegeneracyReport out;
  for (size_t a = 0; a < lambda.size(); ++a)
    for (size_t b = a + 1; b < lambda.size(); ++b) {
      PairDiagnosis d;
      d.i = a;
      d.j = b;
      d.closed_form_available = closed_form;
      if (c.kind == CostSpec::Kind::inner) {
        const Point ba = barycenter(lambda.atom(a));
        const Point bb = barycenter(lambda.atom(b));
        d.closed_form_degenerate = true;
        for (size_t k = 0; k < ba.size(); ++k) {
          d.barycenter_difference.push_back(ba[k] - bb[k]);
          if (std::abs(ba[k] - bb[k]) > tol::dual) d.closed_form_degenerate = false;
        }
      } else if (c.kind == CostSpec::Kind::separable) {
        T diff(0);
        for (size_t j = 0; j < lambda.atom(a).size(); ++j)
          diff += lambda.atom(a).weight(j) *
                  scalar_traits<T>::from_double(
                      c.b[find_atom_index<T>(y_support, lambda.atom(a).atom(j))]);
        for (size_t j = 0; j < lambda.atom(b).size(); ++j)
          diff -= lambda.atom(b).weight(j) *
                  scalar_traits<T>::from_double(
                      c.b[find_atom_index<T>(y_support, lambda.atom(b).atom(j))]);
        d.sample_integral_difference = scalar_traits<T>::to_double(diff);
        d.closed_form_degenerate = tol_is_zero(diff, tol::dual);
      }
      const T base = ctilde(0, a) - ctilde(0, b);
      d.tie_degenerate = true;
      for (size_t i = 0; i < mu.size(); ++i) {
        const double dev =
            std::abs(scalar_traits<T>::to_double(ctilde(i, a) - ctilde(i, b) - base));
        d.max_deviation_from_constant = std::max(d.max_deviation_from_constant, dev);
        if (!tol_eq(ctilde(i, a) - ctilde(i, b), base, tol::dual)) d.tie_degenerate = false;
      }
      out.any_flagged = out.any_flagged || d.closed_form_degenerate || d.tie_degenerate;
      out.pairs.push_back(std::move(d));
    }
  return out;
}

enum class AllocationStatus { ok, infeasible, no_feasible_map };

inline const char* allocation_status_name(AllocationStatus s) {
  switch (s) {
    case AllocationStatus::ok: return "ok";
    case AllocationStatus::infeasible: return "Infeasible";
    case AllocationStatus::no_feasible_map: return "NoFeasibleMap";
  }
  return "?";
}

template <class T>
struct AllocationResult {
  AllocationStatus status = AllocationStatus::infeasible;
  std::vector<T> alpha;           // blend weight per profile
  std::vector<size_t> partition;  // source atom -> profile index (status ok)
  bool exhaustive = true;         // vertex enumeration covered the alpha polytope
  std::optional<ClassProblemReport<T>> report;
};

namespace detail {

// Solves A x = b exactly when the chosen columns are independent and the
// system is consistent; returns nothing otherwise.
template <class T>
std::optional<std::vector<T>> solve_consistent(const Matrix<T>& a, const std::vector<T>& b) {
  const size_t r = a.rows(), s = a.cols();
  Matrix<T> m(r, s + 1);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < s; ++j) m(i, j) = a(i, j);
    m(i, s) = b[i];
  }
  const double eps = scalar_traits<T>::exact ? 0.0 : 1e-12;
  size_t row = 0;
  std::vector<size_t> pivot_row_of_col(s, size_t(-1));
  for (size_t col = 0; col < s && row < r; ++col) {
    size_t best = row;
    double best_abs = std::abs(scalar_traits<T>::to_double(m(row, col)));
    for (size_t i = row + 1; i < r; ++i) {
      const double v = std::abs(scalar_traits<T>::to_double(m(i, col)));
      if (v > best_abs) {
        best = i;
        best_abs = v;
      }
    }
    if (best_abs <= eps && m(best, col) == T(0)) return std::nullopt;  // dependent column
    if (best_abs <= eps) {
      if constexpr (!scalar_traits<T>::exact) return std::nullopt;
    }
    if (best != row)
      for (size_t j = 0; j <= s; ++j) std::swap(m(best, j), m(row, j));
    const T p = m(row, col);
    for (size_t j = 0; j <= s; ++j) m(row, j) /= p;
    for (size_t i = 0; i < r; ++i) {
      if (i == row) continue;
      const T f = m(i, col);
      if (f == T(0)) continue;
      for (size_t j = 0; j <= s; ++j) m(i, j) -= f * m(row, j);
    }
    pivot_row_of_col[col] = row;
    ++row;
  }
  if (row < s) return std::nullopt;  // rank below column count
  // Remaining rows must be consistent.
  for (size_t i = row; i < r; ++i)
    if (!tol_is_zero(m(i, s), tol::feas)) return std::nullopt;
  std::vector<T> x(s, T(0));
  for (size_t col = 0; col < s; ++col) x[col] = m(pivot_row_of_col[col], s);
  return x;
}

}  // namespace detail

// Optimal allocation: find blend weights alpha >= 0 with sum alpha_i
// profile_i = nu, then minimize the class problem over the resulting
// meta-measures. For up to 6 profiles every vertex of the alpha polytope is
// tried; beyond that only the LP's basic solution is used.
template <class T>
AllocationResult<T> solve_allocation(const CostSpec& c, const DiscreteMeasure<T>& mu,
                                     const std::vector<DiscreteMeasure<T>>& profiles,
                                     const DiscreteMeasure<T>& nu,
                                     const MapSearchOptions& opts = {}) {
  require(!profiles.empty(), Errc::invalid_argument, "need at least one profile");
  for (const auto& p : profiles)
    require(p.dim() == nu.dim(), Errc::dimension_mismatch, "profiles on a different space");

  // Union support of nu and the profiles, canonically ordered.
  std::vector<Point> ys = nu.atoms();
  const double eps = scalar_traits<T>::exact ? 0.0 : tol::geom;
  for (const auto& p : profiles)
    for (const Point& y : p.atoms()) {
      bool present = false;
      for (const Point& z : ys)
        if (points_close(z, y, eps)) {
          present = true;
          break;
        }
      if (!present) ys.push_back(y);
    }
  std::sort(ys.begin(), ys.end(), [](const Point& a, const Point& b) {
    return compare_lex(a, b) < 0;
  });

  const size_t k = profiles.size();
  Matrix<T> blend(ys.size(), k, T(0));
  std::vector<T> rhs(ys.size(), T(0));
  for (size_t col = 0; col < k; ++col)
    for (size_t j = 0; j < profiles[col].size(); ++j)
      blend(find_atom_index<T>(ys, profiles[col].atom(j)), col) += profiles[col].weight(j);
  for (size_t j = 0; j < nu.size(); ++j) rhs[find_atom_index<T>(ys, nu.atom(j))] = nu.weight(j);

  AllocationResult<T> out;
  LpProblem<T> lp{std::vector<T>(k, T(0)), blend, rhs};
  const LpSolution<T> feas = solve_lp_dense(lp);
  if (feas.status != SolveStatus::optimal) {
    out.status = AllocationStatus::infeasible;
    return out;
  }

  std::vector<std::vector<T>> candidates;
  auto push_candidate = [&](std::vector<T> alpha) {
    for (T& v : alpha) {
      if constexpr (!scalar_traits<T>::exact) {
        if (v < T(0) && v > -tol::feas) v = T(0);
      }
      if (v < T(0)) return;
    }
    for (const auto& seen : candidates) {
      bool same = true;
      for (size_t i = 0; i < k && same; ++i) same = tol_eq(seen[i], alpha[i], tol::feas);
      if (same) return;
    }
    candidates.push_back(std::move(alpha));
  };

  if (k <= 6) {
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      std::vector<size_t> cols;
      for (size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) cols.push_back(i);
      Matrix<T> sub(ys.size(), cols.size());
      for (size_t i = 0; i < ys.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) sub(i, j) = blend(i, cols[j]);
      const auto solved = detail::solve_consistent(sub, rhs);
      if (!solved) continue;
      std::vector<T> alpha(k, T(0));
      for (size_t j = 0; j < cols.size(); ++j) alpha[cols[j]] = (*solved)[j];
      push_candidate(std::move(alpha));
    }
  } else {
    out.exhaustive = false;
    push_candidate(feas.x);
  }
  if (candidates.empty()) {
    // LP found a feasible point but no basic subset reproduced it (float
    // dust); fall back to the LP solution.
    out.exhaustive = false;
    push_candidate(feas.x);
  }

  bool have_best = false;
  for (const auto& alpha : candidates) {
    std::vector<DiscreteMeasure<T>> atoms;
    std::vector<T> weights;
    std::vector<size_t> original_index;
    for (size_t i = 0; i < k; ++i) {
      if (alpha[i] == T(0)) continue;
      atoms.push_back(profiles[i]);
      weights.push_back(alpha[i]);
      original_index.push_back(i);
    }
    if (atoms.empty()) continue;
    const MetaMeasure<T> lambda = MetaMeasure<T>::make(atoms, weights);
    ClassProblemReport<T> report = solve_class_problem(c, mu, lambda, opts);
    const bool better = report.feasible_maps_exist &&
                        (!have_best || !out.report->feasible_maps_exist ||
                         *report.map_value < *out.report->map_value);
    if (!have_best || better) {
      out.alpha = alpha;
      if (report.feasible_maps_exist) {
        out.partition.assign(mu.size(), 0);
        for (size_t i = 0; i < mu.size(); ++i) {
          // Map the meta-atom back to the first matching original profile.
          const DiscreteMeasure<T>& atom = lambda.atom((*report.optimal_assignment)[i]);
          size_t prof = 0;
          for (size_t q = 0; q < original_index.size(); ++q)
            if (profiles[original_index[q]] == atom ||
                tol_is_zero(wasserstein1(profiles[original_index[q]], atom), tol::meta)) {
              prof = original_index[q];
              break;
            }
          out.partition[i] = prof;
        }
      }
      out.report = std::move(report);
      have_best = true;
    }
  }
  out.status = (have_best && out.report->feasible_maps_exist) ? AllocationStatus::ok
                                                              : AllocationStatus::no_feasible_map;
  return out;
}

}  // namespace ot
