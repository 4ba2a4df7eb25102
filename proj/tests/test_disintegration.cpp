#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ot/demo_instance.hpp"
#include "ot/disintegration.hpp"
#include "ot/generate.hpp"

using namespace ot;

TEST_CASE("map-induced plans disintegrate into diracs") {
  const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}, {2.0}}, {Rat(1, 4), Rat(1, 4), Rat(1, 2)});
  const std::vector<Point> t = {{5.0}, {6.0}, {6.0}};
  const PlanQ plan = plan_from_index_map(mu, t);
  const DisintegrationMap<Rat> f = disintegrate(plan);
  REQUIRE(f.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(f.conditionals[i].size() == 1);
    CHECK(f.conditionals[i].atom(0) == t[i]);
  }
}

TEST_CASE("the product plan has constant conditionals") {
  Rng rng(7);
  const MeasureF mu = gen::random_measure_f(rng, 4, 1);
  const MeasureF nu = gen::random_measure_f(rng, 3, 1);
  const DisintegrationMap<double> f = disintegrate(product_plan(mu, nu));
  for (size_t i = 0; i < f.size(); ++i) CHECK(f.conditionals[i] == nu);
}

TEST_CASE("the demo plan splits only its first atom") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const DisintegrationMap<Rat> f = disintegrate(d.one_split_first);
  REQUIRE(f.size() == 3);
  REQUIRE(f.conditionals[0].size() == 2);
  CHECK(f.conditionals[0].weight(0) == Rat(1, 2));
  CHECK(f.conditionals[0].weight(1) == Rat(1, 2));
  CHECK(f.conditionals[1] == MeasureQ::dirac({1.0}));
  CHECK(f.conditionals[2] == MeasureQ::dirac({1.0}));
}

TEST_CASE("recombine inverts disintegrate") {
  SUBCASE("dirac conditionals rebuild the map plan") {
    const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 2), Rat(1, 2)});
    const PlanQ plan = plan_from_index_map(mu, {{3.0}, {4.0}});
    CHECK(recombine(disintegrate(plan), mu) == plan);
  }
  SUBCASE("constant conditionals rebuild the product plan") {
    Rng rng(11);
    const MeasureF mu = gen::random_measure_f(rng, 3, 1);
    const MeasureF nu = gen::random_measure_f(rng, 4, 1);
    const PlanF plan = product_plan(mu, nu);
    const PlanF back = recombine(disintegrate(plan), mu);
    REQUIRE(back.matrix().rows() == plan.matrix().rows());
    REQUIRE(back.matrix().cols() == plan.matrix().cols());
    for (size_t i = 0; i < plan.matrix().rows(); ++i)
      for (size_t j = 0; j < plan.matrix().cols(); ++j)
        CHECK(back.matrix()(i, j) ==
              doctest::Approx(plan.matrix()(i, j)).epsilon(tol::feas));
  }
  SUBCASE("round trip on random plans, entrywise") {
    Rng rng(13);
    for (int t = 0; t < 25; ++t) {
      const MeasureQ mu = gen::random_measure_q(rng, 1 + rng.next_index(5), 1);
      std::vector<Point> targets;
      for (int j = 0; j < 3; ++j) targets.push_back({static_cast<double>(j) * 2.0});
      const PlanQ plan = gen::random_plan(rng, mu, targets);
      const PlanQ back = recombine(disintegrate(plan), mu);
      CHECK(back == plan);
    }
  }
  SUBCASE("base mismatch is rejected") {
    const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 2), Rat(1, 2)});
    const MeasureQ other = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 3), Rat(2, 3)});
    const DisintegrationMap<Rat> f = disintegrate(plan_from_index_map(mu, {{3.0}, {4.0}}));
    CHECK_THROWS_WITH_AS(recombine(f, other), doctest::Contains("BaseMismatch"), OtError);
  }
}

TEST_CASE("pushforward meta merges equal conditionals") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const MetaQ meta = pushforward_meta(disintegrate(d.one_split_first));
  REQUIRE(meta.size() == 2);
  // Canonical order: the dirac (one atom) before the split conditional (two).
  CHECK(meta.atom(0) == MeasureQ::dirac({1.0}));
  CHECK(meta.weight(0) == Rat(2, 3));
  CHECK(meta.atom(1).size() == 2);
  CHECK(meta.weight(1) == Rat(1, 3));
}

TEST_CASE("constant conditionals collapse to one meta-atom") {
  Rng rng(17);
  const MeasureF mu = gen::random_measure_f(rng, 4, 1);
  const MeasureF nu = gen::random_measure_f(rng, 3, 1);
  const MetaF meta = pushforward_meta(disintegrate(product_plan(mu, nu)));
  REQUIRE(meta.size() == 1);
  CHECK(meta.atom(0) == nu);
  CHECK(meta.weight(0) == doctest::Approx(1.0));
}

TEST_CASE("map-induced meta-measures mirror the pushforward of the map") {
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    const MeasureQ mu = gen::random_measure_q(rng, 4, 1);
    std::vector<Point> targets;
    for (size_t i = 0; i < mu.size(); ++i)
      targets.push_back({static_cast<double>(rng.next_int(0, 2))});
    const MetaQ meta = pushforward_meta(disintegrate(plan_from_index_map(mu, targets)));
    const MeasureQ pushed = pushforward_by_index_map(mu, targets);
    REQUIRE(meta.size() == pushed.size());
    for (size_t k = 0; k < meta.size(); ++k) {
      CHECK(meta.atom(k).size() == 1);  // dirac atoms only
      CHECK(meta.atom(k).atom(0) == pushed.atom(k));
      CHECK(meta.weight(k) == pushed.weight(k));
    }
  }
}

TEST_CASE("demo classes partition as one-split vs two-split families") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  CHECK(classes_equal(d.one_split_first, d.one_split_second));
  CHECK_FALSE(classes_equal(d.one_split_first, d.two_splits_a));
  CHECK_FALSE(classes_equal(d.two_splits_a, d.two_splits_b));
  CHECK_FALSE(classes_equal(d.one_split_first, d.two_splits_b));
}

TEST_CASE("classes_equal needs a shared source") {
  const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 2), Rat(1, 2)});
  const MeasureQ other = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 3), Rat(2, 3)});
  const PlanQ a = plan_from_index_map(mu, {{3.0}, {4.0}});
  const PlanQ b = plan_from_index_map(other, {{3.0}, {4.0}});
  CHECK_THROWS_WITH_AS(classes_equal(a, b), doctest::Contains("SourceMismatch"), OtError);
}

TEST_CASE("second marginals") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  for (const PlanQ* p :
       {&d.one_split_first, &d.one_split_second, &d.two_splits_a, &d.two_splits_b})
    CHECK(second_marginal(*p) == d.nu);

  Rng rng(23);
  const MeasureF mu = gen::random_measure_f(rng, 3, 1);
  const MeasureF nu = gen::random_measure_f(rng, 4, 1);
  CHECK(second_marginal(product_plan(mu, nu)) == nu);
  const MkSolution<double> sol = solve_mk(CostSpec::euclidean(1.0), mu, nu);
  const MeasureF marg = second_marginal(sol.plan);
  CHECK(wasserstein1(marg, nu) <= tol::feas);
}

TEST_CASE("map extraction recovers index maps and reports splitting atoms") {
  const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 2), Rat(1, 2)});
  const PlanQ mapped = plan_from_index_map(mu, {{4.0}, {3.0}});
  const MapExtraction<Rat> got = map_from_class_plan(mapped);
  REQUIRE(got.map.has_value());
  CHECK((*got.map)[0] == 1);  // target atoms sort as 3.0, 4.0
  CHECK((*got.map)[1] == 0);
  // The recovered target equals the conditional barycenter.
  const DisintegrationMap<Rat> f = disintegrate(mapped);
  for (size_t i = 0; i < mu.size(); ++i)
    CHECK(barycenter(f.conditionals[i])[0] ==
          mapped.target().atom((*got.map)[i])[0]);

  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const MapExtraction<Rat> split = map_from_class_plan(d.one_split_first);
  CHECK_FALSE(split.map.has_value());
  CHECK(split.splitting_atoms == std::vector<size_t>{0});
}

TEST_CASE("numerically-near conditional atoms merge back into a dirac") {
  const MeasureF mu = MeasureF::make({{0.0}}, {1.0});
  const MeasureF nu = MeasureF::make({{1.0}, {1.0 + 1e-13}}, {0.5, 0.5});
  // Construction merges the two near-coincident target atoms, so the plan is
  // dirac-conditional and the map is recovered.
  REQUIRE(nu.size() == 1);
  const PlanF plan = product_plan(mu, nu);
  const MapExtraction<double> got = map_from_class_plan(plan);
  REQUIRE(got.map.has_value());
  CHECK((*got.map)[0] == 0);
}

TEST_CASE("equal classes force equal second marginals") {
  Rng rng(29);
  for (int t = 0; t < 30; ++t) {
    const size_t m = 2 + rng.next_index(4);
    std::vector<Point> xs;
    for (size_t i = 0; i < m; ++i) xs.push_back({static_cast<double>(i)});
    const MeasureQ mu = MeasureQ::make(xs, std::vector<Rat>(m, Rat(1, m)));
    std::vector<Point> targets = {{0.0}, {1.0}, {2.0}};
    const PlanQ gamma = gen::random_plan(rng, mu, targets);
    DisintegrationMap<Rat> f = disintegrate(gamma);
    for (size_t i = m; i-- > 1;) std::swap(f.conditionals[i], f.conditionals[rng.next_index(i + 1)]);
    const PlanQ eta = recombine(f, mu);
    REQUIRE(classes_equal(gamma, eta));
    CHECK(second_marginal(gamma) == second_marginal(eta));
  }
}

TEST_CASE("equal marginals do not force equal classes") {
  // Stored counterexample: product plan vs a non-constant map plan.
  const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}, {2.0}}, std::vector<Rat>(3, Rat(1, 3)));
  const std::vector<Point> t = {{0.0}, {1.0}, {1.0}};
  const PlanQ eta = plan_from_index_map(mu, t);
  const PlanQ gamma = product_plan(mu, eta.target());
  CHECK(second_marginal(gamma) == second_marginal(eta));
  CHECK_FALSE(classes_equal(gamma, eta));
}

TEST_CASE("map-induced plans are class-equal iff their pushforwards agree") {
  Rng rng(31);
  for (int t = 0; t < 25; ++t) {
    const size_t m = 2 + rng.next_index(4);
    std::vector<Point> xs;
    for (size_t i = 0; i < m; ++i) xs.push_back({static_cast<double>(i)});
    const MeasureQ mu = MeasureQ::make(xs, std::vector<Rat>(m, Rat(1, m)));
    std::vector<Point> ta, tb;
    for (size_t i = 0; i < m; ++i) {
      ta.push_back({static_cast<double>(rng.next_int(0, 2))});
      tb.push_back({static_cast<double>(rng.next_int(0, 2))});
    }
    const PlanQ ga = plan_from_index_map(mu, ta);
    const PlanQ gb = plan_from_index_map(mu, tb);
    const bool push_equal = pushforward_by_index_map(mu, ta) == pushforward_by_index_map(mu, tb);
    CHECK(classes_equal(ga, gb) == push_equal);
  }
}

TEST_CASE("class equivalence is reflexive, symmetric and transitive") {
  Rng rng(37);
  const MeasureQ mu = MeasureQ::make({{0.0}, {1.0}, {2.0}}, std::vector<Rat>(3, Rat(1, 3)));
  const std::vector<Point> targets = {{0.0}, {1.0}};
  for (int t = 0; t < 10; ++t) {
    const PlanQ a = gen::random_plan(rng, mu, targets);
    DisintegrationMap<Rat> f = disintegrate(a);
    std::swap(f.conditionals[0], f.conditionals[1]);
    const PlanQ b = recombine(f, mu);
    std::swap(f.conditionals[1], f.conditionals[2]);
    const PlanQ c = recombine(f, mu);
    CHECK(classes_equal(a, a));
    CHECK(classes_equal(a, b) == classes_equal(b, a));
    if (classes_equal(a, b) && classes_equal(b, c)) CHECK(classes_equal(a, c));
  }
}
