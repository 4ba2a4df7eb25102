#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "ot/cost.hpp"
#include "ot/map_search.hpp"
#include "ot/matrix.hpp"
#include "ot/measure.hpp"
#include "ot/solver.hpp"

namespace ot {

// Coupling with prescribed marginals: row sums reproduce the source weights,
// column sums the target weights. Matrix columns align with target atoms.
template <class T>
class TransportPlan {
 public:
  TransportPlan() = default;

  static TransportPlan make(DiscreteMeasure<T> source, DiscreteMeasure<T> target,
                            Matrix<T> matrix) {
    require(matrix.rows() == source.size() && matrix.cols() == target.size(),
            Errc::dimension_mismatch, "plan matrix does not match the marginals");
    for (size_t i = 0; i < matrix.rows(); ++i)
      for (size_t j = 0; j < matrix.cols(); ++j)
        require(!(matrix(i, j) < T(0)), Errc::negative_weight, "plan entries must be nonnegative");
    const std::vector<T> rs = matrix.row_sums();
    const std::vector<T> cs = matrix.col_sums();
    for (size_t i = 0; i < rs.size(); ++i)
      require(tol_eq(rs[i], source.weight(i), tol::feas), Errc::invalid_argument,
              "plan row sums must equal the source weights");
    for (size_t j = 0; j < cs.size(); ++j)
      require(tol_eq(cs[j], target.weight(j), tol::feas), Errc::invalid_argument,
              "plan column sums must equal the target weights");
    TransportPlan p;
    p.source_ = std::move(source);
    p.target_ = std::move(target);
    p.matrix_ = std::move(matrix);
    return p;
  }

  const DiscreteMeasure<T>& source() const { return source_; }
  const DiscreteMeasure<T>& target() const { return target_; }
  const Matrix<T>& matrix() const { return matrix_; }

  bool operator==(const TransportPlan& o) const {
    return source_ == o.source_ && target_ == o.target_ && matrix_ == o.matrix_;
  }

 private:
  DiscreteMeasure<T> source_, target_;
  Matrix<T> matrix_;
};

using PlanF = TransportPlan<double>;
using PlanQ = TransportPlan<Rat>;

// Locates a point inside a canonical support; SupportMismatch when absent.
template <class T>
size_t find_atom_index(const std::vector<Point>& support, const Point& p) {
  const double eps = scalar_traits<T>::exact ? 0.0 : tol::geom;
  for (size_t i = 0; i < support.size(); ++i)
    if (points_close(support[i], p, eps)) return i;
  raise(Errc::support_mismatch, "point is not an atom of the support");
}

// (Id x t)_# mu for an index map given by the target point of each atom.
template <class T>
TransportPlan<T> plan_from_index_map(const DiscreteMeasure<T>& mu,
                                     const std::vector<Point>& target_of_atom) {
  DiscreteMeasure<T> nu = pushforward_by_index_map(mu, target_of_atom);
  Matrix<T> m(mu.size(), nu.size(), T(0));
  for (size_t i = 0; i < mu.size(); ++i)
    m(i, find_atom_index<T>(nu.atoms(), target_of_atom[i])) += mu.weight(i);
  return TransportPlan<T>::make(mu, nu, std::move(m));
}

template <class T>
TransportPlan<T> product_plan(const DiscreteMeasure<T>& mu, const DiscreteMeasure<T>& nu) {
  Matrix<T> m(mu.size(), nu.size());
  for (size_t i = 0; i < mu.size(); ++i)
    for (size_t j = 0; j < nu.size(); ++j) m(i, j) = mu.weight(i) * nu.weight(j);
  return TransportPlan<T>::make(mu, nu, std::move(m));
}

// Real-valued function on a finite support, one value per point.
template <class T>
struct Potential {
  std::vector<Point> support;
  std::vector<T> values;
};

template <class T>
struct MkSolution {
  TransportPlan<T> plan;
  T value{};
  Potential<T> source_potential;  // psi on the atoms of mu
  Potential<T> target_potential;  // psi^c on the atoms of nu
  long iterations = 0;
};

template <class T>
MkSolution<T> solve_mk(const CostSpec& c, const DiscreteMeasure<T>& mu,
                       const DiscreteMeasure<T>& nu, const SolverOptions& opts = {}) {
  TransportationInstance<T> inst{mu.weights(), nu.weights(), cost_table(c, mu, nu)};
  SolverSolution<T> sol = solve_transportation(inst, opts);
  if (sol.status == SolveStatus::infeasible)
    raise(Errc::infeasible, "transportation instance is infeasible");
  if (sol.status != SolveStatus::optimal)
    raise(Errc::numerical_failure, "transportation solve did not reach optimality");
  MkSolution<T> out;
  out.value = sol.objective;
  out.iterations = sol.iterations;
  out.source_potential = {mu.atoms(), std::move(sol.dual_row)};
  out.target_potential = {nu.atoms(), std::move(sol.dual_col)};
  out.plan = TransportPlan<T>::make(mu, nu, std::move(sol.plan));
  return out;
}

// W1 in the working scalar type; exact zeros in rational mode make this the
// equality test behind meta-measure comparisons.
template <class T>
T wasserstein1(const DiscreteMeasure<T>& mu, const DiscreteMeasure<T>& nu,
               const SolverOptions& opts = {}) {
  return solve_mk(CostSpec::euclidean(1.0), mu, nu, opts).value;
}

template <class T>
double wasserstein(double p, const DiscreteMeasure<T>& mu, const DiscreteMeasure<T>& nu) {
  require(p >= 1.0, Errc::invalid_argument, "wasserstein needs p >= 1");
  const T value = solve_mk(CostSpec::euclidean(p), mu, nu).value;
  const double v = scalar_traits<T>::to_double(value);
  return p == 1.0 ? v : std::pow(v, 1.0 / p);
}

template <class T>
struct DualCheckResult {
  T lower_bound{};
  bool is_lip1 = false;
};

// Evaluates the Lip-1 dual functional of W1: integral of phi d(mu - nu) and a
// Lipschitz certificate over all support pairs.
template <class T>
DualCheckResult<T> dual_check_w1(const DiscreteMeasure<T>& mu, const DiscreteMeasure<T>& nu,
                                 const Potential<T>& phi) {
  require(mu.dim() == nu.dim(), Errc::dimension_mismatch, "measures on different spaces");
  DualCheckResult<T> out;
  out.lower_bound = T(0);
  for (size_t i = 0; i < mu.size(); ++i)
    out.lower_bound += phi.values[find_atom_index<T>(phi.support, mu.atom(i))] * mu.weight(i);
  for (size_t j = 0; j < nu.size(); ++j)
    out.lower_bound -= phi.values[find_atom_index<T>(phi.support, nu.atom(j))] * nu.weight(j);
  out.is_lip1 = true;
  for (size_t a = 0; a < phi.support.size() && out.is_lip1; ++a)
    for (size_t b = a + 1; b < phi.support.size(); ++b) {
      const T dist = scalar_traits<T>::from_double(euclidean(phi.support[a], phi.support[b]));
      if (!tol_le(t_abs(phi.values[a] - phi.values[b]), dist, tol::dual)) {
        out.is_lip1 = false;
        break;
      }
    }
  return out;
}

// Monge problem over index maps t with t_# mu = nu.
template <class T>
struct MongeResult {
  std::optional<std::vector<size_t>> map;  // target atom index per source atom
  std::optional<T> value;                  // empty means +infinity (no feasible map)
  std::optional<T> gap;                    // value - kantorovich value
  T kantorovich_value{};
  long nodes = 0;
};

template <class T>
MongeResult<T> solve_monge_maps(const CostSpec& c, const DiscreteMeasure<T>& mu,
                                const DiscreteMeasure<T>& nu,
                                const MapSearchOptions& opts = {}) {
  const Matrix<T> cost = cost_table(c, mu, nu);
  MapSearchResult<T> found = min_cost_profile_assignment(mu.weights(), nu.weights(), cost, opts);
  MongeResult<T> out;
  out.nodes = found.nodes;
  out.kantorovich_value = solve_mk(c, mu, nu).value;
  if (found.feasible) {
    out.map = found.best_map;
    out.value = found.best_value;
    out.gap = found.best_value - out.kantorovich_value;
  }
  return out;
}

enum class TransformDirection { source_to_target, target_to_source };

// c-transform over the finite supports: psi^c(y) = min_x c(x,y) - psi(x).
template <class T>
Potential<T> c_transform(const CostSpec& c, const DiscreteMeasure<T>& mu,
                         const DiscreteMeasure<T>& nu, const Potential<T>& psi,
                         TransformDirection dir = TransformDirection::source_to_target) {
  const Matrix<T> cost = cost_table(c, mu, nu);
  Potential<T> out;
  if (dir == TransformDirection::source_to_target) {
    require(psi.values.size() == mu.size(), Errc::support_mismatch,
            "potential must cover every source atom");
    out.support = nu.atoms();
    out.values.resize(nu.size());
    for (size_t j = 0; j < nu.size(); ++j) {
      T best = cost(0, j) - psi.values[0];
      for (size_t i = 1; i < mu.size(); ++i) best = std::min(best, cost(i, j) - psi.values[i]);
      out.values[j] = best;
    }
  } else {
    require(psi.values.size() == nu.size(), Errc::support_mismatch,
            "potential must cover every target atom");
    out.support = mu.atoms();
    out.values.resize(mu.size());
    for (size_t i = 0; i < mu.size(); ++i) {
      T best = cost(i, 0) - psi.values[0];
      for (size_t j = 1; j < nu.size(); ++j) best = std::min(best, cost(i, j) - psi.values[j]);
      out.values[i] = best;
    }
  }
  return out;
}

// c-superdifferential at a source atom: target atoms y with
// psi(x') - psi(x) <= c(x',y) - c(x,y) for every x'.
template <class T>
std::vector<size_t> c_superdifferential(const CostSpec& c, const DiscreteMeasure<T>& mu,
                                        const DiscreteMeasure<T>& nu, const Potential<T>& psi,
                                        size_t x_index) {
  require(psi.values.size() == mu.size(), Errc::support_mismatch,
          "potential must cover every source atom");
  require(x_index < mu.size(), Errc::index_out_of_range, "x_index out of range");
  const Matrix<T> cost = cost_table(c, mu, nu);
  std::vector<size_t> out;
  for (size_t j = 0; j < nu.size(); ++j) {
    bool inside = true;
    for (size_t ip = 0; ip < mu.size() && inside; ++ip) {
      const T lhs = psi.values[ip] - psi.values[x_index];
      const T rhs = cost(ip, j) - cost(x_index, j);
      if (!tol_le(lhs, rhs, tol::dual)) inside = false;
    }
    if (inside) out.push_back(j);
  }
  return out;
}

struct CycleWitness {
  std::vector<size_t> subset;       // indices into the pair list
  std::vector<size_t> permutation;  // reassignment sigma over the subset
  double violation = 0.0;           // original cost minus permuted cost
};

template <class T>
struct CycleCheckResult {
  bool monotone = true;
  std::optional<CycleWitness> witness;
};

// c-cyclical monotonicity of a finite pair set: no subset of size <= k_max
// admits a permutation that strictly lowers the summed cost. Pairs are
// (source index, target index) into the given supports.
template <class T>
CycleCheckResult<T> check_cyclical_monotonicity(
    const CostSpec& c, const std::vector<Point>& xs, const std::vector<Point>& ys,
    const std::vector<std::pair<size_t, size_t>>& pairs, size_t k_max = 3) {
  require(k_max >= 1 && k_max <= 4, Errc::size_limit_exceeded,
          "exhaustive cycle check limited to k_max <= 4");
  const Matrix<T> cost = cost_table<T>(c, xs, ys);
  for (const auto& [i, j] : pairs)
    require(i < xs.size() && j < ys.size(), Errc::index_out_of_range, "pair index out of range");

  CycleCheckResult<T> out;
  const size_t n = pairs.size();
  std::vector<size_t> subset;
  // Enumerate subsets of each size k in ascending lexicographic order, then
  // all permutations of the chosen subset.
  auto check_subset = [&](const std::vector<size_t>& sel) -> bool {
    T base(0);
    for (size_t s : sel) base += cost(pairs[s].first, pairs[s].second);
    std::vector<size_t> perm(sel.size());
    for (size_t t = 0; t < sel.size(); ++t) perm[t] = t;
    do {
      T permuted(0);
      for (size_t t = 0; t < sel.size(); ++t)
        permuted += cost(pairs[sel[t]].first, pairs[sel[perm[t]]].second);
      const bool violated = [&] {
        if constexpr (scalar_traits<T>::exact)
          return base > permuted;
        else
          return scalar_traits<T>::to_double(base) >
                 scalar_traits<T>::to_double(permuted) + tol::dual;
      }();
      if (violated) {
        out.monotone = false;
        CycleWitness w;
        w.subset = sel;
        w.permutation = perm;
        w.violation = scalar_traits<T>::to_double(base - permuted);
        out.witness = w;
        return true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };

  std::vector<size_t> sel;
  auto choose = [&](auto&& self, size_t start, size_t k) -> bool {
    if (sel.size() == k) return check_subset(sel);
    for (size_t t = start; t < n; ++t) {
      sel.push_back(t);
      if (self(self, t + 1, k)) return true;
      sel.pop_back();
    }
    return false;
  };
  for (size_t k = 2; k <= std::min(k_max, n); ++k)
    if (choose(choose, 0, k)) break;
  return out;
}

struct TwistViolation {
  size_t grid_index = 0;
  size_t pair_index = 0;
  double gradient_norm = 0.0;
};

// Finite-difference twist diagnostic: reports grid points where the gradient
// of x -> c(x, y1) - c(x, y2) vanishes (norm <= tol::twist).
//
// Geometric costs use central differences with step h * (1 + |x|). Separable
// costs treat x_grid as the 1-d sample grid of `a` and the coordinates of
// each y-pair as indices into `b`; differences are taken along the samples.
inline std::vector<TwistViolation> check_twist(const CostSpec& c,
                                               const std::vector<Point>& x_grid,
                                               const std::vector<std::pair<Point, Point>>& y_pairs,
                                               double h = 1e-4) {
  require(h > 0, Errc::invalid_argument, "step size must be positive");
  require(c.kind != CostSpec::Kind::matrix, Errc::non_differentiable_cost,
          "explicit cost matrices have no point derivative");
  std::vector<TwistViolation> out;

  if (c.kind == CostSpec::Kind::separable) {
    require(x_grid.size() == c.a.size(), Errc::dimension_mismatch,
            "separable twist check needs the sample grid of a");
    for (const Point& p : x_grid)
      require(p.size() == 1, Errc::dimension_mismatch, "sample grid must be 1-d");
    for (size_t q = 0; q < y_pairs.size(); ++q) {
      const size_t j1 = static_cast<size_t>(y_pairs[q].first.at(0));
      const size_t j2 = static_cast<size_t>(y_pairs[q].second.at(0));
      require(j1 < c.b.size() && j2 < c.b.size(), Errc::index_out_of_range,
              "separable y-pair index out of range");
      require(j1 != j2, Errc::invalid_argument, "twist condition needs y1 != y2");
      const double db = c.b[j1] - c.b[j2];
      for (size_t i = 0; i < x_grid.size(); ++i) {
        const size_t lo = i == 0 ? 0 : i - 1;
        const size_t hi = i + 1 == x_grid.size() ? i : i + 1;
        const double dx = x_grid[hi][0] - x_grid[lo][0];
        require(dx != 0.0, Errc::invalid_argument, "sample grid must be strictly monotone");
        const double da = (c.a[hi] - c.a[lo]) / dx;
        const double g = std::abs(da * db);
        if (g <= tol::twist) out.push_back({i, q, g});
      }
    }
    return out;
  }

  for (size_t q = 0; q < y_pairs.size(); ++q) {
    const Point& y1 = y_pairs[q].first;
    const Point& y2 = y_pairs[q].second;
    require(!points_close(y1, y2, 0.0), Errc::invalid_argument, "twist condition needs y1 != y2");
    for (size_t i = 0; i < x_grid.size(); ++i) {
      const Point& x = x_grid[i];
      const double step = h * (1.0 + norm(x));
      double sq = 0.0;
      for (size_t k = 0; k < x.size(); ++k) {
        Point xp = x, xm = x;
        xp[k] += step;
        xm[k] -= step;
        const double gp = eval_cost(c, xp, y1) - eval_cost(c, xp, y2);
        const double gm = eval_cost(c, xm, y1) - eval_cost(c, xm, y2);
        const double d = (gp - gm) / (2.0 * step);
        sq += d * d;
      }
      const double g = std::sqrt(sq);
      if (g <= tol::twist) out.push_back({i, q, g});
    }
  }
  return out;
}

}  // namespace ot
