#include "ot/suites.hpp"

#include <algorithm>

#include "ot/disintegration.hpp"
#include "ot/generate.hpp"
#include "ot/json_io.hpp"
#include "ot/kantorovich.hpp"
#include "ot/meta.hpp"
#include "ot/oracle.hpp"
#include "ot/transport_class.hpp"

namespace ot::suites {

namespace {

void record(SuiteResult& r, double violation, const nlohmann::json& witness) {
  r.max_violation = std::max(r.max_violation, violation);
  if (violation > 0 && !r.witness) r.witness = witness;
}

}  // namespace

SuiteResult duality_suite(uint64_t seed, long trials) {
  SuiteResult r{.name = "duality", .trials = trials};
  Rng rng(seed);
  r.max_violation = -1.0;
  for (long t = 0; t < trials; ++t) {
    const size_t m = static_cast<size_t>(rng.next_int(2, 12));
    const size_t n = static_cast<size_t>(rng.next_int(2, 12));
    const MeasureF mu = gen::random_measure_f(rng, m, 2);
    const MeasureF nu = gen::random_measure_f(rng, n, 2);
    CostSpec cost = CostSpec::euclidean(1.0);
    if (t % 3 == 1) cost = CostSpec::sqeuclidean();
    if (t % 3 == 2) {
      Matrix<double> rows(mu.size(), nu.size());
      for (size_t i = 0; i < mu.size(); ++i)
        for (size_t j = 0; j < nu.size(); ++j) rows(i, j) = rng.next_range(0.0, 10.0);
      cost = CostSpec::explicit_matrix(std::move(rows));
    }
    const MkSolution<double> sol = solve_mk(cost, mu, nu);
    double dual = 0.0;
    for (size_t i = 0; i < mu.size(); ++i)
      dual += sol.source_potential.values[i] * mu.weight(i);
    for (size_t j = 0; j < nu.size(); ++j)
      dual += sol.target_potential.values[j] * nu.weight(j);
    const double gap = std::abs(sol.value - dual);
    const double budget = tol::dual * static_cast<double>(mu.size() + nu.size());
    record(r, gap - budget,
           {{"trial", t}, {"gap", gap}, {"primal", sol.value}, {"dual", dual}});
  }
  r.pass = !r.witness.has_value();
  return r;
}

SuiteResult monotonicity_suite(uint64_t seed, long trials) {
  SuiteResult r{.name = "monotonicity", .trials = trials};
  Rng rng(seed);
  r.max_violation = -1.0;
  for (long t = 0; t < trials; ++t) {
    const size_t m = static_cast<size_t>(rng.next_int(2, 6));
    const size_t n = static_cast<size_t>(rng.next_int(2, 6));
    const MeasureF mu = gen::random_measure_f(rng, m, 2);
    const MeasureF nu = gen::random_measure_f(rng, n, 2);
    const CostSpec cost = t % 2 ? CostSpec::sqeuclidean() : CostSpec::euclidean(1.0);
    const MkSolution<double> sol = solve_mk(cost, mu, nu);
    std::vector<std::pair<size_t, size_t>> support;
    for (size_t i = 0; i < mu.size(); ++i)
      for (size_t j = 0; j < nu.size(); ++j)
        if (sol.plan.matrix()(i, j) > tol::feas) support.emplace_back(i, j);
    const CycleCheckResult<double> check =
        check_cyclical_monotonicity<double>(cost, mu.atoms(), nu.atoms(), support, 3);
    const double violation = check.monotone ? -1.0 : check.witness->violation;
    record(r, violation, {{"trial", t}, {"violation", violation}});
  }
  r.pass = !r.witness.has_value();
  return r;
}

SuiteResult barycenter_lipschitz_suite(uint64_t seed, long trials) {
  SuiteResult r{.name = "barycenter-lipschitz", .trials = trials};
  Rng rng(seed);
  r.max_violation = -1.0;
  for (long t = 0; t < trials; ++t) {
    const MetaF n1 = gen::random_meta<double>(rng, static_cast<size_t>(rng.next_int(1, 4)),
                                              static_cast<size_t>(rng.next_int(1, 4)), 2);
    const MetaF n2 = gen::random_meta<double>(rng, static_cast<size_t>(rng.next_int(1, 4)),
                                              static_cast<size_t>(rng.next_int(1, 4)), 2);
    const double lhs = wasserstein1(generalized_barycenter(n1), generalized_barycenter(n2));
    const double rhs = meta_wasserstein(n1, n2);
    record(r, lhs - rhs - tol::dual, {{"trial", t}, {"lhs", lhs}, {"rhs", rhs}});
  }
  r.pass = !r.witness.has_value();
  return r;
}

SuiteResult twist_suite(uint64_t seed, long trials, const CostSpec& cost) {
  SuiteResult r{.name = "twist", .trials = trials};
  Rng rng(seed);
  r.max_violation = -1.0;
  for (long t = 0; t < trials; ++t) {
    std::vector<Point> grid;
    for (int g = 0; g < 6; ++g) grid.push_back(gen::random_point(rng, 2));
    std::vector<std::pair<Point, Point>> pairs;
    for (int q = 0; q < 4; ++q) {
      Point y1 = gen::random_point(rng, 2);
      Point y2 = gen::random_point(rng, 2);
      if (points_close(y1, y2, 1e-9)) y2[0] += 1.0;
      pairs.emplace_back(std::move(y1), std::move(y2));
    }
    const std::vector<TwistViolation> violations = check_twist(cost, grid, pairs);
    record(r, violations.empty() ? -1.0 : 1.0,
           {{"trial", t}, {"violations", violations.size()}});
  }
  r.pass = !r.witness.has_value();
  return r;
}

SuiteResult push_lemma_suite(uint64_t seed, long trials) {
  SuiteResult r{.name = "push-lemma", .trials = trials};
  Rng rng(seed);
  r.max_violation = -1.0;

  // Stored counterexample to the converse: the product plan and a map plan
  // share the second marginal but sit in different classes.
  {
    const MeasureF mu = MeasureF::make({{0.0}, {1.0}, {2.0}}, {1, 1, 1}, true);
    const std::vector<Point> t = {{0.0}, {1.0}, {1.0}};
    const PlanF eta = plan_from_index_map(mu, t);
    const PlanF gamma = product_plan(mu, eta.target());
    const bool marginals_equal =
        wasserstein1(second_marginal(gamma), second_marginal(eta)) <= tol::meta;
    const bool same_class = classes_equal(gamma, eta);
    if (!marginals_equal || same_class)
      record(r, 1.0, {{"counterexample", "product vs map plan"},
                      {"marginals_equal", marginals_equal},
                      {"same_class", same_class}});
  }

  for (long t = 0; t < trials; ++t) {
    // Same-class pair: permute the conditionals of a random plan over a
    // uniform source.
    const size_t m = static_cast<size_t>(rng.next_int(2, 6));
    std::vector<Point> xs;
    for (size_t i = 0; i < m; ++i) xs.push_back({static_cast<double>(i)});
    const MeasureF mu = MeasureF::make(xs, std::vector<double>(m, 1.0), true);
    std::vector<Point> targets;
    const size_t n = static_cast<size_t>(rng.next_int(2, 4));
    for (size_t j = 0; j < n; ++j) targets.push_back(gen::random_point(rng, 1));
    const PlanF gamma = gen::random_plan(rng, mu, targets);
    DisintegrationMap<double> f = disintegrate(gamma);
    for (size_t i = m; i-- > 1;)
      std::swap(f.conditionals[i], f.conditionals[rng.next_index(i + 1)]);
    const PlanF eta = recombine(f, mu);

    const bool same_class = classes_equal(gamma, eta);
    const double marginal_gap =
        scalar_traits<double>::to_double(wasserstein1(second_marginal(gamma), second_marginal(eta)));
    const bool implication = !same_class || marginal_gap <= tol::meta;
    record(r, implication ? -1.0 : marginal_gap,
           {{"trial", t}, {"same_class", same_class}, {"marginal_gap", marginal_gap}});
  }
  r.pass = !r.witness.has_value();
  return r;
}

}  // namespace ot::suites
