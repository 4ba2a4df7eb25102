#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ot/demo_instance.hpp"
#include "ot/generate.hpp"
#include "ot/json_io.hpp"

using namespace ot;

TEST_CASE("float measures round-trip through the schema") {
  Rng rng(3);
  const MeasureF m = gen::random_measure_f(rng, 5, 3);
  const Json j = measure_to_json(m);
  CHECK(j["mode"] == "float");
  CHECK(j["dim"] == 3);
  const AnyMeasure back = measure_from_json(j);
  REQUIRE(std::holds_alternative<MeasureF>(back));
  CHECK(std::get<MeasureF>(back) == m);
}

TEST_CASE("rational measures serialize weights as p/q strings") {
  const MeasureQ m = MeasureQ::make({{0.0}, {1.0}}, {Rat(1, 6), Rat(5, 6)});
  const Json j = measure_to_json(m);
  CHECK(j["mode"] == "rational");
  CHECK(j["weights"][0] == "1/6");
  const AnyMeasure back = measure_from_json(j);
  REQUIRE(std::holds_alternative<MeasureQ>(back));
  CHECK(std::get<MeasureQ>(back) == m);
}

TEST_CASE("parse errors name the offending field") {
  Json j;
  j["mode"] = "float";
  j["atoms"] = Json::array({Json::array({0.0})});
  j["weights"] = Json::array({"not-a-number"});
  try {
    measure_from_json(j, "m");
    FAIL("expected a parse error");
  } catch (const OtError& e) {
    CHECK(e.code() == Errc::parse_error);
    CHECK(std::string(e.what()).find("m.weights[0]") != std::string::npos);
  }

  Json missing_mode;
  missing_mode["atoms"] = Json::array({Json::array({0.0})});
  missing_mode["weights"] = Json::array({1.0});
  CHECK_THROWS_WITH_AS(measure_from_json(missing_mode, "m"), doctest::Contains("m.mode"),
                       OtError);
}

TEST_CASE("rational weights must be strings") {
  Json j;
  j["mode"] = "rational";
  j["atoms"] = Json::array({Json::array({0.0})});
  j["weights"] = Json::array({1.0});
  CHECK_THROWS_WITH_AS(measure_from_json(j, "m"), doctest::Contains("p/q"), OtError);
}

TEST_CASE("rational literal parsing") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational(" -2/6 ") == Rat(-1, 3));
  CHECK(parse_rational("5") == Rat(5));
  CHECK_THROWS_AS(parse_rational("1/0"), OtError);
  CHECK_THROWS_AS(parse_rational("x/y"), OtError);
  CHECK(format_rational(Rat(10, 4)) == "5/2");
  CHECK(format_rational(Rat(8, 4)) == "2");
}

TEST_CASE("cost specs round-trip") {
  for (const CostSpec& c :
       {CostSpec::euclidean(2.0), CostSpec::sqeuclidean(), CostSpec::inner(),
        CostSpec::explicit_matrix(Matrix<double>::from_rows({{1.0, 2.0}, {3.0, 4.0}})),
        CostSpec::separable({1.0, 2.0}, {3.0})}) {
    const CostSpec back = cost_from_json(cost_to_json(c));
    CHECK(back.kind == c.kind);
    CHECK(back.p == c.p);
    CHECK(back.rows == c.rows);
    CHECK(back.a == c.a);
    CHECK(back.b == c.b);
  }
  CHECK(cost_from_cli_spec("euclidean:2").p == 2.0);
  CHECK(cost_from_cli_spec("sqeuclidean").kind == CostSpec::Kind::sqeuclidean);
  CHECK(cost_from_cli_spec("inner").kind == CostSpec::Kind::inner);
  CHECK_THROWS_AS(cost_from_json(Json{{"cost", "unknown"}}), OtError);
}

TEST_CASE("plans round-trip with exact rational entries") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const Json j = plan_to_json(d.two_splits_a);
  const AnyPlan back = plan_from_json(j);
  REQUIRE(std::holds_alternative<PlanQ>(back));
  CHECK(std::get<PlanQ>(back) == d.two_splits_a);
}

TEST_CASE("meta-measures round-trip") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const MetaQ meta = pushforward_meta(disintegrate(d.one_split_first));
  const AnyMeta back = meta_from_json(meta_to_json(meta));
  REQUIRE(std::holds_alternative<MetaQ>(back));
  CHECK(std::get<MetaQ>(back) == meta);
}

TEST_CASE("disintegration maps serialize base and conditionals") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const DisintegrationMap<Rat> f = disintegrate(d.one_split_first);
  const Json j = disintegration_to_json(f);
  CHECK(j["conditionals"].size() == 3);
  CHECK(j["base"]["weights"][0] == "1/3");
}

TEST_CASE("plan CSV lists the support with costs") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const std::string csv = plan_to_csv(d.one_split_first, CostSpec::euclidean(1.0));
  CHECK(csv.rfind("i,j,mass,cost\n", 0) == 0);
  CHECK(csv.find("0,0,1/6,0") != std::string::npos);
  CHECK(csv.find("1,1,1/3,0") != std::string::npos);
}

TEST_CASE("DOT export is a bipartite digraph weighted by mass") {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const std::string dot = plan_to_dot(d.one_split_first, "test");
  CHECK(dot.find("digraph \"test\"") != std::string::npos);
  CHECK(dot.find("x0 -> y0 [label=\"1/6\"") != std::string::npos);
  CHECK(dot.find("penwidth=") != std::string::npos);
  // Zero-mass pairs draw no edge.
  CHECK(dot.find("x1 -> y0") == std::string::npos);
}

TEST_CASE("potentials export as value arrays in canonical order") {
  Rng rng(7);
  const MeasureF mu = gen::random_measure_f(rng, 3, 1);
  const MeasureF nu = gen::random_measure_f(rng, 3, 1);
  const MkSolution<double> sol = solve_mk(CostSpec::euclidean(1.0), mu, nu);
  const Json j = potential_to_json(sol.source_potential);
  REQUIRE(j.is_array());
  CHECK(j.size() == mu.size());
}
