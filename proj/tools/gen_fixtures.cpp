// Regenerates the golden fixtures under fixtures/ from the enumeration
// oracles. Each record stores the instance, the oracle result and the id of
// the example it backs; tests compare these files against fresh runs.

#include <iostream>
#include <string>

#include "ot/demo_instance.hpp"
#include "ot/json_io.hpp"
#include "ot/oracle.hpp"
#include "ot/transport_class.hpp"

using namespace ot;

namespace {

Json rat_json(const Rat& r) { return format_rational(r); }

void write_fixture(const std::string& dir, const std::string& id, Json instance, Json result) {
  Json j;
  j["derived_example_id"] = id;
  j["instance"] = std::move(instance);
  j["oracle_result"] = std::move(result);
  write_text_file(dir + "/" + id + ".json", j.dump(2) + "\n");
}

Json instance_to_json(const TransportationInstance<Rat>& inst) {
  Json j;
  Json s = Json::array(), d = Json::array(), c = Json::array();
  for (const Rat& v : inst.supply) s.push_back(rat_json(v));
  for (const Rat& v : inst.demand) d.push_back(rat_json(v));
  for (size_t i = 0; i < inst.m(); ++i) {
    Json row = Json::array();
    for (size_t jj = 0; jj < inst.n(); ++jj) row.push_back(rat_json(inst.cost(i, jj)));
    c.push_back(row);
  }
  j["supply"] = s;
  j["demand"] = d;
  j["cost"] = c;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "fixtures";

  // Weighted-mean oracle: plain summation, independent of the measure type's
  // own accumulation order.
  {
    const MeasureQ m = MeasureQ::make({{0.0, 0.0}, {6.0, 0.0}}, {Rat(1, 6), Rat(5, 6)});
    Point expect(2, 0.0);
    for (size_t i = 0; i < m.size(); ++i)
      for (size_t k = 0; k < 2; ++k)
        expect[k] += rat_to_double(m.weight(i)) * m.atom(i)[k];
    write_fixture(dir, "barycenter_weighted_mean", measure_to_json(m),
                  {{"barycenter", expect}});
  }

  // Push-forward weight summation on the demo source.
  {
    const demo::SplitClassDemo d = demo::make_split_class_demo();
    const std::vector<Point> t = {{0.0}, {1.0}, {1.0}};
    const MeasureQ pushed = pushforward_by_index_map(d.mu, t);
    write_fixture(dir, "pushforward_demo_map",
                  {{"mu", measure_to_json(d.mu)}, {"targets", t}},
                  {{"pushforward", measure_to_json(pushed)}});
  }

  // Transport value of the demo instance: minimum over every basic feasible
  // solution of the transportation polytope.
  {
    const demo::SplitClassDemo d = demo::make_split_class_demo();
    TransportationInstance<Rat> inst{
        d.mu.weights(), d.nu.weights(), cost_table(CostSpec::euclidean(1.0), d.mu, d.nu)};
    const auto vertices = oracle::enumerate_basic_feasible(inst);
    Rat best = vertices.front().objective;
    for (const auto& v : vertices) best = std::min(best, v.objective);
    write_fixture(dir, "demo_transport_value", instance_to_json(inst),
                  {{"minimum", rat_json(best)}, {"bases", vertices.size()}});
  }

  // One-move W1: 1/6 of the mass travels distance 1.
  {
    TransportationInstance<Rat> inst{{Rat(1, 6), Rat(5, 6)},
                                     {Rat(1)},
                                     Matrix<Rat>::from_rows({{Rat(1)}, {Rat(0)}})};
    const auto vertices = oracle::enumerate_basic_feasible(inst);
    Rat best = vertices.front().objective;
    for (const auto& v : vertices) best = std::min(best, v.objective);
    write_fixture(dir, "w1_single_move", instance_to_json(inst), {{"minimum", rat_json(best)}});
  }

  // Map feasibility is a subset-sum condition on the weights.
  {
    const std::vector<Rat> uniform2 = {Rat(1, 2), Rat(1, 2)};
    const auto balanced = oracle::enumerate_feasible_maps(uniform2, {Rat(1, 2), Rat(1, 2)});
    const auto unbalanced = oracle::enumerate_feasible_maps(uniform2, {Rat(1, 3), Rat(2, 3)});
    write_fixture(dir, "map_feasibility_subset_sum",
                  {{"source", {"1/2", "1/2"}},
                   {"balanced_targets", {"1/2", "1/2"}},
                   {"unbalanced_targets", {"1/3", "2/3"}}},
                  {{"balanced_maps", balanced.size()}, {"unbalanced_maps", unbalanced.size()}});
  }

  // Three ways to choose the atom that travels alone.
  {
    const std::vector<Rat> uniform3 = {Rat(1, 3), Rat(1, 3), Rat(1, 3)};
    const auto maps = oracle::enumerate_feasible_maps(uniform3, {Rat(1, 3), Rat(2, 3)});
    Json listing = Json::array();
    for (const auto& m : maps) listing.push_back(m);
    write_fixture(dir, "demo_feasible_maps",
                  {{"source", {"1/3", "1/3", "1/3"}}, {"targets", {"1/3", "2/3"}}},
                  {{"count", maps.size()}, {"maps", listing}});
  }

  // A Dirac source cannot split onto two targets.
  {
    const auto maps = oracle::enumerate_feasible_maps<Rat>({Rat(1)}, {Rat(1, 2), Rat(1, 2)});
    write_fixture(dir, "dirac_cannot_split",
                  {{"source", {"1"}}, {"targets", {"1/2", "1/2"}}}, {{"count", maps.size()}});
  }

  // Two-point swap violating cyclical monotonicity for the squared distance.
  {
    Matrix<Rat> pair_cost = Matrix<Rat>::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    const auto witnesses = oracle::exhaustive_cycle_search(pair_cost, 2);
    Json ws = Json::array();
    for (const auto& w : witnesses)
      ws.push_back({{"subset", w.subset}, {"permutation", w.permutation}, {"violation", w.violation}});
    write_fixture(dir, "two_swap_violation",
                  {{"pairs", {{0.0, 1.0}, {1.0, 0.0}}}, {"cost", "sqeuclidean"}},
                  {{"witnesses", ws}});
  }

  // Single pair: no subset of size >= 2 exists.
  {
    Matrix<Rat> pair_cost = Matrix<Rat>::from_rows({{Rat(3)}});
    const auto witnesses = oracle::exhaustive_cycle_search(pair_cost, 2);
    write_fixture(dir, "single_pair_monotone", {{"pairs", 1}}, {{"witnesses", witnesses.size()}});
  }

  // Blend weights for the demo profiles: alpha_0 * 1/2 = 1/6 forces 1/3.
  {
    const Rat a0 = Rat(1, 6) / Rat(1, 2);
    const Rat a1 = Rat(1) - a0;
    write_fixture(dir, "demo_blend_weights",
                  {{"profiles", {"1/2 at y0 + 1/2 at y1", "1 at y1"}},
                   {"nu", {"1/6", "5/6"}}},
                  {{"alpha", {rat_json(a0), rat_json(a1)}}});
  }

  std::cout << "fixtures written to " << dir << "\n";
  return 0;
}
