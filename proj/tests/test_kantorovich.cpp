#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ot/demo_instance.hpp"
#include "ot/disintegration.hpp"
#include "ot/generate.hpp"
#include "ot/kantorovich.hpp"
#include "ot/oracle.hpp"

using namespace ot;

TEST_CASE("dirac to dirac costs exactly c(x,y)") {
  const MeasureF mu = MeasureF::dirac({0.0, 0.0});
  const MeasureF nu = MeasureF::dirac({3.0, 4.0});
  const MkSolution<double> sol = solve_mk(CostSpec::euclidean(1.0), mu, nu);
  CHECK(sol.value == doctest::Approx(5.0));
  CHECK(sol.plan.matrix()(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("a dirac source splits in the relaxation") {
  const MeasureF mu = MeasureF::dirac({0.0});
  const MeasureF nu = MeasureF::make({{1.0}, {-1.0}}, {0.5, 0.5});
  const MkSolution<double> sol = solve_mk(CostSpec::euclidean(1.0), mu, nu);
  CHECK(sol.value == doctest::Approx(1.0));  // 1/2 c(x,y) + 1/2 c(x,z)
}

TEST_CASE("demo marginals with an explicit cost match the enumeration oracle") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const CostSpec cost =
      CostSpec::explicit_matrix(Matrix<double>::from_rows({{0, 1}, {1, 0}, {2, 1}}));
  const MkSolution<Rat> sol = solve_mk(cost, d.mu, d.nu);
  TransportationInstance<Rat> inst{d.mu.weights(), d.nu.weights(), cost_table(cost, d.mu, d.nu)};
  const auto vertices = oracle::enumerate_basic_feasible(inst);
  Rat best = vertices.front().objective;
  for (const auto& v : vertices) best = std::min(best, v.objective);
  CHECK(sol.value == best);
}

TEST_CASE("wasserstein basics") {
  Rng rng(31);
  const MeasureF mu = gen::random_measure_f(rng, 4, 2);
  CHECK(wasserstein(1.0, mu, mu) == 0.0);
  CHECK(wasserstein(2.0, mu, mu) == 0.0);

  const MeasureF a = MeasureF::dirac({0.0, 0.0});
  const MeasureF b = MeasureF::dirac({3.0, 4.0});
  CHECK(wasserstein(1.0, a, b) == doctest::Approx(5.0));
  CHECK(wasserstein(2.0, a, b) == doctest::Approx(5.0));
  CHECK(wasserstein(3.0, a, b) == doctest::Approx(5.0));
}

TEST_CASE("one-sixth of the mass moves distance one") {
  const MeasureQ from = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 6), Rat(5, 6)});
  const MeasureQ to = MeasureQ::dirac({1.0});
  CHECK(wasserstein1(from, to) == Rat(1, 6));
}

TEST_CASE("metric axioms at desk scale") {
  Rng rng(37);
  for (int t = 0; t < 15; ++t) {
    const MeasureF a = gen::random_measure_f(rng, 1 + rng.next_index(4), 2);
    const MeasureF b = gen::random_measure_f(rng, 1 + rng.next_index(4), 2);
    const MeasureF c = gen::random_measure_f(rng, 1 + rng.next_index(4), 2);
    const double ab = wasserstein(1.0, a, b);
    const double ba = wasserstein(1.0, b, a);
    const double ac = wasserstein(1.0, a, c);
    const double cb = wasserstein(1.0, c, b);
    CHECK(std::abs(ab - ba) <= tol::dual);
    CHECK(ab <= ac + cb + 3 * tol::dual);
  }
  // W1 = 0 forces canonical equality for measures on a common grid.
  const MeasureF x = MeasureF::make({{0.0}, {1.0}}, {0.5, 0.5});
  const MeasureF y = MeasureF::make({{1.0}, {0.0}}, {0.5, 0.5});
  CHECK(wasserstein(1.0, x, y) == 0.0);
  CHECK(x == y);
}

TEST_CASE("dual potentials certify the W1 value") {
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    // Disjoint supports so the potential extends unambiguously to the union.
    const MeasureF mu = gen::random_measure_f(rng, 3, 2);
    std::vector<Point> shifted;
    for (int i = 0; i < 3; ++i) {
      Point p = gen::random_point(rng, 2);
      p[0] += 20.0;
      shifted.push_back(p);
    }
    const MeasureF nu = MeasureF::make(shifted, {1, 1, 1}, true);
    const MkSolution<double> sol = solve_mk(CostSpec::euclidean(1.0), mu, nu);

    Potential<double> phi;
    for (size_t i = 0; i < mu.size(); ++i) {
      phi.support.push_back(mu.atom(i));
      phi.values.push_back(sol.source_potential.values[i]);
    }
    for (size_t j = 0; j < nu.size(); ++j) {
      phi.support.push_back(nu.atom(j));
      phi.values.push_back(-sol.target_potential.values[j]);
    }
    const DualCheckResult<double> check = dual_check_w1(mu, nu, phi);
    CHECK(check.is_lip1);
    CHECK(check.lower_bound == doctest::Approx(sol.value).epsilon(1e-7));
  }
}

TEST_CASE("duality sandwich holds for any Lip-1 test function") {
  const MeasureF mu = MeasureF::make({{0.0}, {2.0}}, {0.5, 0.5});
  const MeasureF nu = MeasureF::make({{1.0}, {3.0}}, {0.5, 0.5});

  Potential<double> zero{{{0.0}, {2.0}, {1.0}, {3.0}}, {0, 0, 0, 0}};
  const DualCheckResult<double> z = dual_check_w1(mu, nu, zero);
  CHECK(z.is_lip1);
  CHECK(z.lower_bound == 0.0);
  CHECK(z.lower_bound <= wasserstein(1.0, mu, nu) + tol::dual);

  // Slope 2 between support points at distance 1 is not Lip-1.
  Potential<double> steep{{{0.0}, {2.0}, {1.0}, {3.0}}, {0, 4, 2, 6}};
  CHECK_FALSE(dual_check_w1(mu, nu, steep).is_lip1);

  Potential<double> missing{{{0.0}}, {0.0}};
  CHECK_THROWS_WITH_AS(dual_check_w1(mu, nu, missing), doctest::Contains("SupportMismatch"),
                       OtError);
}

TEST_CASE("no index map splits a dirac") {
  const MeasureQ mu = MeasureQ::dirac({0.0});
  const MeasureQ nu = MeasureQ::make({{1.0}, {-1.0}}, {Rat(1, 2), Rat(1, 2)});
  const MongeResult<Rat> r = solve_monge_maps(CostSpec::euclidean(1.0), mu, nu);
  CHECK_FALSE(r.map.has_value());
  CHECK_FALSE(r.value.has_value());
}

TEST_CASE("identity map is optimal between equal measures") {
  Rng rng(43);
  const MeasureF mu = gen::random_measure_f(rng, 5, 2);
  const MongeResult<double> r = solve_monge_maps(CostSpec::euclidean(1.0), mu, mu);
  REQUIRE(r.map.has_value());
  for (size_t i = 0; i < mu.size(); ++i) CHECK((*r.map)[i] == i);
  CHECK(*r.value == 0.0);
  CHECK(std::abs(*r.gap) <= tol::dual);
}

TEST_CASE("exhaustive search matches the map-enumeration oracle") {
  const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}, {2.0}}, {Rat(1, 3), Rat(1, 3), Rat(1, 3)});
  const MeasureQ nu = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 3), Rat(2, 3)});
  const CostSpec cost = CostSpec::euclidean(1.0);
  const MongeResult<Rat> r = solve_monge_maps(cost, mu, nu);
  REQUIRE(r.map.has_value());
  CHECK(*r.gap >= Rat(0));

  const auto maps = oracle::enumerate_feasible_maps(mu.weights(), nu.weights());
  REQUIRE(maps.size() == 3);
  const Matrix<Rat> table = cost_table(cost, mu, nu);
  Rat best;
  bool first = true;
  for (const auto& map : maps) {
    Rat v(0);
    for (size_t i = 0; i < mu.size(); ++i) v += mu.weight(i) * table(i, map[i]);
    if (first || v < best) best = v;
    first = false;
  }
  CHECK(*r.value == best);
}

TEST_CASE("monge value dominates the relaxation and ties on map targets") {
  Rng rng(47);
  for (int t = 0; t < 10; ++t) {
    const MeasureQ mu = gen::random_measure_q(rng, 5, 1);
    std::vector<Point> targets;
    for (size_t i = 0; i < mu.size(); ++i)
      targets.push_back({static_cast<double>(rng.next_int(0, 2))});
    const MeasureQ nu = pushforward_by_index_map(mu, targets);
    const MongeResult<Rat> r = solve_monge_maps(CostSpec::sqeuclidean(), mu, nu);
    REQUIRE(r.map.has_value());
    CHECK(*r.gap >= Rat(0));
  }
}

TEST_CASE("branch-and-bound regime agrees with exhaustive enumeration") {
  Rng rng(53);
  const size_t m = 9;  // above the exhaustive limit
  const MeasureQ mu = gen::random_measure_q(rng, m, 1, 3);
  std::vector<Point> targets;
  for (size_t i = 0; i < mu.size(); ++i)
    targets.push_back({static_cast<double>(rng.next_int(0, 1))});
  const MeasureQ nu = pushforward_by_index_map(mu, targets);
  const CostSpec cost = CostSpec::euclidean(1.0);
  const MongeResult<Rat> bnb = solve_monge_maps(cost, mu, nu);
  REQUIRE(bnb.map.has_value());

  const auto maps = oracle::enumerate_feasible_maps(mu.weights(), nu.weights());
  const Matrix<Rat> table = cost_table(cost, mu, nu);
  Rat best;
  bool first = true;
  for (const auto& map : maps) {
    Rat v(0);
    for (size_t i = 0; i < mu.size(); ++i) v += mu.weight(i) * table(i, map[i]);
    if (first || v < best) best = v;
    first = false;
  }
  CHECK(*bnb.value == best);
}

TEST_CASE("size limit on the map search") {
  std::vector<Point> pts;
  std::vector<Rat> ws;
  for (int i = 0; i < 13; ++i) {
    pts.push_back({static_cast<double>(i)});
    ws.emplace_back(1, 13);
  }
  const MeasureQ mu = MeasureQ::make(pts, ws);
  CHECK_THROWS_WITH_AS(solve_monge_maps(CostSpec::euclidean(1.0), mu, mu),
                       doctest::Contains("SizeLimitExceeded"), OtError);
}

TEST_CASE("c-transform of zero is the column minimum") {
  const MeasureF mu = MeasureF::make({{0.0}, {1.0}}, {0.5, 0.5});
  const MeasureF nu = MeasureF::make({{0.0}, {1.0}}, {0.5, 0.5});
  const CostSpec cost = CostSpec::explicit_matrix(Matrix<double>::from_rows({{4, 2}, {1, 3}}));
  Potential<double> zero{mu.atoms(), {0.0, 0.0}};
  const Potential<double> trans = c_transform(cost, mu, nu, zero);
  CHECK(trans.values[0] == 1.0);
  CHECK(trans.values[1] == 2.0);
}

TEST_CASE("double c-transform dominates and is idempotent") {
  Rng rng(59);
  for (int t = 0; t < 15; ++t) {
    const MeasureF mu = gen::random_measure_f(rng, 4, 2);
    const MeasureF nu = gen::random_measure_f(rng, 5, 2);
    const CostSpec cost = t % 2 ? CostSpec::sqeuclidean() : CostSpec::euclidean(1.0);
    Potential<double> psi{mu.atoms(), {}};
    for (size_t i = 0; i < mu.size(); ++i) psi.values.push_back(rng.next_range(-2, 2));

    const Potential<double> psi_c = c_transform(cost, mu, nu, psi);
    const Potential<double> psi_cc =
        c_transform(cost, mu, nu, psi_c, TransformDirection::target_to_source);
    for (size_t i = 0; i < mu.size(); ++i) CHECK(psi_cc.values[i] >= psi.values[i] - 1e-12);

    const Potential<double> psi_ccc = c_transform(cost, mu, nu, psi_cc);
    const Potential<double> psi_cccc =
        c_transform(cost, mu, nu, psi_ccc, TransformDirection::target_to_source);
    for (size_t i = 0; i < mu.size(); ++i)
      CHECK(psi_cccc.values[i] == doctest::Approx(psi_cc.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("solver duals are c-transforms of each other") {
  Rng rng(61);
  for (int t = 0; t < 10; ++t) {
    const MeasureF mu = gen::random_measure_f(rng, 5, 2);
    const MeasureF nu = gen::random_measure_f(rng, 5, 2);
    const CostSpec cost = CostSpec::euclidean(1.0);
    const MkSolution<double> sol = solve_mk(cost, mu, nu);
    const Potential<double> trans = c_transform(cost, mu, nu, sol.source_potential);
    for (size_t j = 0; j < nu.size(); ++j)
      CHECK(trans.values[j] == doctest::Approx(sol.target_potential.values[j]).epsilon(tol::dual));
  }
}

TEST_CASE("superdifferential matches the contact-set characterization") {
  Rng rng(67);
  for (int t = 0; t < 10; ++t) {
    const MeasureF mu = gen::random_measure_f(rng, 4, 2);
    const MeasureF nu = gen::random_measure_f(rng, 4, 2);
    const CostSpec cost = CostSpec::sqeuclidean();
    Potential<double> psi{mu.atoms(), {}};
    for (size_t i = 0; i < mu.size(); ++i) psi.values.push_back(rng.next_range(-1, 1));
    const Potential<double> psi_c = c_transform(cost, mu, nu, psi);
    const Matrix<double> table = cost_table(cost, mu, nu);
    for (size_t i = 0; i < mu.size(); ++i) {
      const std::vector<size_t> sd = c_superdifferential(cost, mu, nu, psi, i);
      // y in the superdifferential iff psi(x) + psi^c(y) = c(x,y); direct
      // double-loop check.
      for (size_t j = 0; j < nu.size(); ++j) {
        const bool contact =
            std::abs(psi.values[i] + psi_c.values[j] - table(i, j)) <= tol::dual;
        const bool in_sd = std::find(sd.begin(), sd.end(), j) != sd.end();
        CHECK(contact == in_sd);
      }
    }
  }
}

TEST_CASE("optimal plans live inside the superdifferential of their dual") {
  Rng rng(71);
  for (int t = 0; t < 10; ++t) {
    const MeasureF mu = gen::random_measure_f(rng, 4, 2);
    const MeasureF nu = gen::random_measure_f(rng, 4, 2);
    const CostSpec cost = t % 2 ? CostSpec::euclidean(1.0) : CostSpec::sqeuclidean();
    const MkSolution<double> sol = solve_mk(cost, mu, nu);
    for (size_t i = 0; i < mu.size(); ++i) {
      const std::vector<size_t> sd = c_superdifferential(cost, mu, nu, sol.source_potential, i);
      for (size_t j = 0; j < nu.size(); ++j)
        if (sol.plan.matrix()(i, j) > tol::feas)
          CHECK(std::find(sd.begin(), sd.end(), j) != sd.end());
    }
  }
}

TEST_CASE("constant potential puts the strict column minimum in the superdifferential") {
  const MeasureF mu = MeasureF::make({{0.0}, {1.0}}, {0.5, 0.5});
  const MeasureF nu = MeasureF::make({{0.0}, {1.0}}, {0.5, 0.5});
  const CostSpec cost = CostSpec::explicit_matrix(Matrix<double>::from_rows({{0, 5}, {5, 0}}));
  Potential<double> flat{mu.atoms(), {1.0, 1.0}};
  const std::vector<size_t> sd = c_superdifferential(cost, mu, nu, flat, 0);
  CHECK(std::find(sd.begin(), sd.end(), 0) != sd.end());
  CHECK(std::find(sd.begin(), sd.end(), 1) == sd.end());
}

TEST_CASE("cyclical monotonicity of single pairs and optimal supports") {
  const std::vector<Point> xs = {{0.0}, {1.0}};
  const std::vector<Point> ys = {{0.0}, {1.0}};
  const CycleCheckResult<double> single = check_cyclical_monotonicity<double>(
      CostSpec::sqeuclidean(), xs, ys, {{0, 0}}, 3);
  CHECK(single.monotone);

  Rng rng(73);
  for (int t = 0; t < 10; ++t) {
    const MeasureF mu = gen::random_measure_f(rng, 4, 2);
    const MeasureF nu = gen::random_measure_f(rng, 4, 2);
    const CostSpec cost = CostSpec::sqeuclidean();
    const MkSolution<double> sol = solve_mk(cost, mu, nu);
    std::vector<std::pair<size_t, size_t>> support;
    for (size_t i = 0; i < mu.size(); ++i)
      for (size_t j = 0; j < nu.size(); ++j)
        if (sol.plan.matrix()(i, j) > tol::feas) support.emplace_back(i, j);
    CHECK(check_cyclical_monotonicity<double>(cost, mu.atoms(), nu.atoms(), support, 3).monotone);
  }
}

TEST_CASE("the crossing pair is caught with a swap witness") {
  const std::vector<Point> xs = {{0.0}, {1.0}};
  const std::vector<Point> ys = {{0.0}, {1.0}};
  // pairs: x0 -> y1, x1 -> y0 under squared distance.
  const CycleCheckResult<double> r = check_cyclical_monotonicity<double>(
      CostSpec::sqeuclidean(), xs, ys, {{0, 1}, {1, 0}}, 3);
  CHECK_FALSE(r.monotone);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->violation == doctest::Approx(2.0));
  CHECK_THROWS_WITH_AS(check_cyclical_monotonicity<double>(CostSpec::sqeuclidean(), xs, ys,
                                                           {{0, 1}, {1, 0}}, 5),
                       doctest::Contains("SizeLimitExceeded"), OtError);
}

TEST_CASE("twist holds for the squared distance and fails on flat separable samples") {
  std::vector<Point> grid;
  for (int i = 0; i < 5; ++i) grid.push_back({0.5 * i, -0.25 * i});
  const std::vector<std::pair<Point, Point>> pairs = {{{0.0, 0.0}, {1.0, 1.0}},
                                                      {{2.0, 0.0}, {0.0, 2.0}}};
  CHECK(check_twist(CostSpec::sqeuclidean(), grid, pairs).empty());
  CHECK(check_twist(CostSpec::inner(), grid, pairs).empty());

  CHECK_THROWS_WITH_AS(
      check_twist(CostSpec::sqeuclidean(), grid, {{{1.0, 1.0}, {1.0, 1.0}}}),
      doctest::Contains("InvalidArgument"), OtError);
  CHECK_THROWS_WITH_AS(
      check_twist(CostSpec::explicit_matrix(Matrix<double>::from_rows({{1.0}})), grid, pairs),
      doctest::Contains("NonDifferentiableCost"), OtError);

  // Sampled a(x) constant on an inner subgrid: the finite-difference oracle
  // marks exactly the samples whose stencil sits inside the flat run.
  const std::vector<double> a = {0.0, 1.0, 2.0, 2.0, 2.0, 2.0, 3.0, 4.0};
  std::vector<double> b = {0.0, 1.0};
  std::vector<Point> sample_grid;
  for (size_t i = 0; i < a.size(); ++i) sample_grid.push_back({static_cast<double>(i)});
  const CostSpec sep = CostSpec::separable(a, b);
  const std::vector<TwistViolation> violations =
      check_twist(sep, sample_grid, {{{0.0}, {1.0}}});
  std::vector<size_t> flagged;
  for (const auto& v : violations) flagged.push_back(v.grid_index);
  std::vector<size_t> expect;
  for (size_t i = 0; i < a.size(); ++i) {
    const size_t lo = i == 0 ? 0 : i - 1;
    const size_t hi = i + 1 == a.size() ? i : i + 1;
    if (a[hi] == a[lo]) expect.push_back(i);
  }
  CHECK(flagged == expect);
}

TEST_CASE("plan validation rejects broken marginals") {
  const MeasureF mu = MeasureF::make({{0.0}, {1.0}}, {0.5, 0.5});
  const MeasureF nu = MeasureF::make({{0.0}, {1.0}}, {0.5, 0.5});
  CHECK_THROWS_AS(
      PlanF::make(mu, nu, Matrix<double>::from_rows({{0.5, 0.25}, {0.0, 0.25}})), OtError);
  CHECK_THROWS_AS(
      PlanF::make(mu, nu, Matrix<double>::from_rows({{0.75, -0.25}, {0.0, 0.5}})), OtError);
}
