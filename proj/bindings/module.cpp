// Python bindings: mode-tagged facade over the C++ core. Rational-mode
// weights and values cross the boundary as "p/q" strings, float-mode values
// as plain floats.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "ot/demo_instance.hpp"
#include "ot/disintegration.hpp"
#include "ot/json_io.hpp"
#include "ot/oracle.hpp"
#include "ot/transport_class.hpp"

namespace py = pybind11;
using namespace ot;

namespace {

struct PyMeasure {
  AnyMeasure m;
};
struct PyPlan {
  AnyPlan p;
};
struct PyMeta {
  AnyMeta n;
};

template <class T>
py::object scalar_out(const T& v) {
  if constexpr (scalar_traits<T>::exact)
    return py::str(format_rational(v));
  else
    return py::float_(v);
}

template <class T>
T scalar_in(const py::handle& h, const std::string& field) {
  if constexpr (scalar_traits<T>::exact) {
    if (py::isinstance<py::str>(h)) return parse_rational(h.cast<std::string>());
    if (py::isinstance<py::int_>(h)) return Rat(h.cast<long>());
    if (py::isinstance<py::float_>(h)) return rat_from_double(h.cast<double>());
    raise(Errc::parse_error, field + ": rational mode expects \"p/q\" strings");
  } else {
    return h.cast<double>();
  }
}

Mode parse_mode(const std::string& mode) {
  if (mode == "float") return Mode::floating;
  if (mode == "rational") return Mode::rational;
  raise(Errc::parse_error, "mode must be \"float\" or \"rational\"");
}

CostSpec cost_in(const py::object& cost) {
  if (py::isinstance<py::str>(cost)) return cost_from_cli_spec(cost.cast<std::string>());
  const py::module_ json_mod = py::module_::import("json");
  const std::string dumped = json_mod.attr("dumps")(cost).cast<std::string>();
  return cost_from_json(Json::parse(dumped));
}

py::object json_out(const Json& j) {
  const py::module_ json_mod = py::module_::import("json");
  return json_mod.attr("loads")(j.dump());
}

template <class F>
auto visit_measure(const PyMeasure& m, F&& f) {
  return std::visit(std::forward<F>(f), m.m);
}

// Both-operands dispatch requiring a shared numeric mode.
template <class F>
auto visit_pair(const PyMeasure& a, const PyMeasure& b, F&& f) {
  require(a.m.index() == b.m.index(), Errc::mode_mismatch,
          "operands are in different numeric modes");
  if (std::holds_alternative<MeasureF>(a.m))
    return f(std::get<MeasureF>(a.m), std::get<MeasureF>(b.m));
  return f(std::get<MeasureQ>(a.m), std::get<MeasureQ>(b.m));
}

template <class T>
PyMeasure wrap(DiscreteMeasure<T> m) {
  return PyMeasure{AnyMeasure(std::move(m))};
}
template <class T>
PyPlan wrap(TransportPlan<T> p) {
  return PyPlan{AnyPlan(std::move(p))};
}
template <class T>
PyMeta wrap(MetaMeasure<T> n) {
  return PyMeta{AnyMeta(std::move(n))};
}

template <class T>
py::dict mk_solution_out(const MkSolution<T>& sol) {
  py::dict d;
  d["value"] = scalar_out(sol.value);
  d["value_float"] = scalar_traits<T>::to_double(sol.value);
  py::list rows;
  for (size_t i = 0; i < sol.plan.matrix().rows(); ++i) {
    py::list row;
    for (size_t j = 0; j < sol.plan.matrix().cols(); ++j)
      row.append(scalar_out(sol.plan.matrix()(i, j)));
    rows.append(row);
  }
  d["plan"] = rows;
  py::list dual_row, dual_col;
  for (const T& v : sol.source_potential.values) dual_row.append(scalar_out(v));
  for (const T& v : sol.target_potential.values) dual_col.append(scalar_out(v));
  d["dual_row"] = dual_row;
  d["dual_col"] = dual_col;
  d["iterations"] = sol.iterations;
  return d;
}

template <class T>
py::dict class_report_out(const ClassProblemReport<T>& r) {
  py::dict d;
  d["relaxed_value"] = scalar_out(r.relaxed_value);
  d["feasible_maps_exist"] = r.feasible_maps_exist;
  if (r.map_value) {
    d["map_value"] = scalar_out(*r.map_value);
    d["map_value_via_plan"] = scalar_out(*r.map_value_via_plan);
    d["gap"] = scalar_out(*r.gap);
    d["assignment"] = *r.optimal_assignment;
  } else {
    d["map_value"] = py::none();
  }
  py::list flags;
  for (const auto& [a, b] : r.degeneracy_flags) flags.append(py::make_tuple(a, b));
  d["degeneracy_flags"] = flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_otclasses, m) {
  m.doc() = "discrete optimal transport with transport classes";

  py::register_exception<OtError>(m, "Error");

  py::class_<PyMeasure>(m, "Measure")
      .def(py::init([](const std::vector<Point>& atoms, const py::list& weights,
                       const std::string& mode, bool normalize) {
             if (parse_mode(mode) == Mode::floating) {
               std::vector<double> ws;
               for (const auto& w : weights) ws.push_back(scalar_in<double>(w, "weights"));
               return wrap(MeasureF::make(atoms, std::move(ws), normalize));
             }
             std::vector<Rat> ws;
             for (const auto& w : weights) ws.push_back(scalar_in<Rat>(w, "weights"));
             return wrap(MeasureQ::make(atoms, std::move(ws), normalize));
           }),
           py::arg("atoms"), py::arg("weights"), py::arg("mode") = "float",
           py::arg("normalize") = false)
      .def_property_readonly("atoms",
                             [](const PyMeasure& s) {
                               return visit_measure(s, [](const auto& m) { return m.atoms(); });
                             })
      .def_property_readonly("weights",
                             [](const PyMeasure& s) {
                               return visit_measure(s, [](const auto& m) {
                                 py::list out;
                                 for (const auto& w : m.weights()) out.append(scalar_out(w));
                                 return out;
                               });
                             })
      .def_property_readonly("dim",
                             [](const PyMeasure& s) {
                               return visit_measure(s, [](const auto& m) { return m.dim(); });
                             })
      .def_property_readonly("mode",
                             [](const PyMeasure& s) {
                               return std::string(mode_name(mode_of(s.m)));
                             })
      .def("__len__",
           [](const PyMeasure& s) {
             return visit_measure(s, [](const auto& m) { return m.size(); });
           })
      .def("__eq__",
           [](const PyMeasure& a, const PyMeasure& b) {
             if (a.m.index() != b.m.index()) return false;
             return a.m == b.m;
           })
      .def("barycenter",
           [](const PyMeasure& s) {
             return visit_measure(s, [](const auto& m) { return barycenter(m); });
           })
      .def("pushforward",
           [](const PyMeasure& s, const std::vector<Point>& targets) {
             return visit_measure(s, [&](const auto& m) {
               return PyMeasure{AnyMeasure(pushforward_by_index_map(m, targets))};
             });
           })
      .def("to_json", [](const PyMeasure& s) { return json_out(measure_to_json(s.m)); })
      .def_static("from_json", [](const py::object& obj) {
        const py::module_ json_mod = py::module_::import("json");
        const std::string dumped = json_mod.attr("dumps")(obj).cast<std::string>();
        return PyMeasure{measure_from_json(Json::parse(dumped))};
      });

  py::class_<PyPlan>(m, "Plan")
      .def_property_readonly("source",
                             [](const PyPlan& s) {
                               return std::visit(
                                   [](const auto& p) { return PyMeasure{AnyMeasure(p.source())}; },
                                   s.p);
                             })
      .def_property_readonly("target",
                             [](const PyPlan& s) {
                               return std::visit(
                                   [](const auto& p) { return PyMeasure{AnyMeasure(p.target())}; },
                                   s.p);
                             })
      .def_property_readonly("matrix",
                             [](const PyPlan& s) {
                               return std::visit(
                                   [](const auto& p) {
                                     py::list rows;
                                     for (size_t i = 0; i < p.matrix().rows(); ++i) {
                                       py::list row;
                                       for (size_t j = 0; j < p.matrix().cols(); ++j)
                                         row.append(scalar_out(p.matrix()(i, j)));
                                       rows.append(row);
                                     }
                                     return rows;
                                   },
                                   s.p);
                             })
      .def("to_json", [](const PyPlan& s) { return json_out(plan_to_json(s.p)); })
      .def_static("from_json", [](const py::object& obj) {
        const py::module_ json_mod = py::module_::import("json");
        const std::string dumped = json_mod.attr("dumps")(obj).cast<std::string>();
        return PyPlan{plan_from_json(Json::parse(dumped))};
      });

  py::class_<PyMeta>(m, "MetaMeasure")
      .def(py::init([](const std::vector<PyMeasure>& atoms, const py::list& weights) {
             require(!atoms.empty(), Errc::invalid_argument, "need at least one atom");
             if (std::holds_alternative<MeasureF>(atoms[0].m)) {
               std::vector<MeasureF> as;
               std::vector<double> ws;
               for (const auto& a : atoms) as.push_back(std::get<MeasureF>(a.m));
               for (const auto& w : weights) ws.push_back(scalar_in<double>(w, "weights"));
               return wrap(MetaF::make(std::move(as), std::move(ws)));
             }
             std::vector<MeasureQ> as;
             std::vector<Rat> ws;
             for (const auto& a : atoms) as.push_back(std::get<MeasureQ>(a.m));
             for (const auto& w : weights) ws.push_back(scalar_in<Rat>(w, "weights"));
             return wrap(MetaQ::make(std::move(as), std::move(ws)));
           }),
           py::arg("atoms"), py::arg("weights"))
      .def_property_readonly("atoms",
                             [](const PyMeta& s) {
                               return std::visit(
                                   [](const auto& n) {
                                     py::list out;
                                     for (const auto& a : n.atoms())
                                       out.append(PyMeasure{AnyMeasure(a)});
                                     return out;
                                   },
                                   s.n);
                             })
      .def_property_readonly("weights",
                             [](const PyMeta& s) {
                               return std::visit(
                                   [](const auto& n) {
                                     py::list out;
                                     for (const auto& w : n.weights()) out.append(scalar_out(w));
                                     return out;
                                   },
                                   s.n);
                             })
      .def("__len__", [](const PyMeta& s) {
        return std::visit([](const auto& n) { return n.size(); }, s.n);
      })
      .def("to_json", [](const PyMeta& s) { return json_out(meta_to_json(s.n)); });

  m.def(
      "solve",
      [](const py::object& cost, const PyMeasure& mu, const PyMeasure& nu) {
        const CostSpec c = cost_in(cost);
        return visit_pair(mu, nu, [&](const auto& a, const auto& b) {
          return mk_solution_out(solve_mk(c, a, b));
        });
      },
      py::arg("cost"), py::arg("mu"), py::arg("nu"));

  m.def(
      "wasserstein",
      [](double p, const PyMeasure& mu, const PyMeasure& nu) {
        return visit_pair(mu, nu,
                          [&](const auto& a, const auto& b) { return wasserstein(p, a, b); });
      },
      py::arg("p"), py::arg("mu"), py::arg("nu"));

  m.def(
      "solve_monge_maps",
      [](const py::object& cost, const PyMeasure& mu, const PyMeasure& nu) {
        const CostSpec c = cost_in(cost);
        return visit_pair(mu, nu, [&](const auto& a, const auto& b) {
          const auto r = solve_monge_maps(c, a, b);
          py::dict d;
          d["map"] = r.map ? py::cast(*r.map) : py::object(py::none());
          d["value"] = r.value ? scalar_out(*r.value) : py::object(py::none());
          d["gap"] = r.gap ? scalar_out(*r.gap) : py::object(py::none());
          d["kantorovich_value"] = scalar_out(r.kantorovich_value);
          return d;
        });
      },
      py::arg("cost"), py::arg("mu"), py::arg("nu"));

  m.def(
      "plan_from_map",
      [](const PyMeasure& mu, const std::vector<Point>& targets) {
        return visit_measure(mu, [&](const auto& a) {
          return PyPlan{AnyPlan(plan_from_index_map(a, targets))};
        });
      },
      py::arg("mu"), py::arg("targets"));

  m.def(
      "product_plan",
      [](const PyMeasure& mu, const PyMeasure& nu) {
        return visit_pair(mu, nu, [&](const auto& a, const auto& b) {
          return PyPlan{AnyPlan(product_plan(a, b))};
        });
      },
      py::arg("mu"), py::arg("nu"));

  m.def(
      "classes_equal",
      [](const PyPlan& a, const PyPlan& b) {
        require(a.p.index() == b.p.index(), Errc::mode_mismatch,
                "plans are in different numeric modes");
        if (std::holds_alternative<PlanF>(a.p))
          return classes_equal(std::get<PlanF>(a.p), std::get<PlanF>(b.p));
        return classes_equal(std::get<PlanQ>(a.p), std::get<PlanQ>(b.p));
      },
      py::arg("gamma"), py::arg("eta"));

  m.def("second_marginal", [](const PyPlan& a) {
    return std::visit([](const auto& p) { return PyMeasure{AnyMeasure(second_marginal(p))}; },
                      a.p);
  });

  m.def("disintegrate", [](const PyPlan& a) {
    return std::visit(
        [](const auto& p) {
          const auto f = disintegrate(p);
          py::dict d;
          d["base"] = PyMeasure{AnyMeasure(f.base)};
          py::list cs;
          for (const auto& c : f.conditionals) cs.append(PyMeasure{AnyMeasure(c)});
          d["conditionals"] = cs;
          return d;
        },
        a.p);
  });

  m.def("pushforward_meta", [](const PyPlan& a) {
    return std::visit(
        [](const auto& p) { return PyMeta{AnyMeta(pushforward_meta(disintegrate(p)))}; }, a.p);
  });

  m.def(
      "map_from_class_plan",
      [](const PyPlan& a) {
        return std::visit(
            [](const auto& p) {
              const auto r = map_from_class_plan(p);
              py::dict d;
              d["map"] = r.map ? py::cast(*r.map) : py::object(py::none());
              d["splitting_atoms"] = r.splitting_atoms;
              return d;
            },
            a.p);
      },
      py::arg("plan"));

  m.def("generalized_barycenter", [](const PyMeta& n) {
    return std::visit(
        [](const auto& v) { return PyMeasure{AnyMeasure(generalized_barycenter(v))}; }, n.n);
  });

  m.def("meta_wasserstein", [](const PyMeta& a, const PyMeta& b) {
    require(a.n.index() == b.n.index(), Errc::mode_mismatch,
            "meta-measures are in different numeric modes");
    if (std::holds_alternative<MetaF>(a.n))
      return scalar_out(meta_wasserstein(std::get<MetaF>(a.n), std::get<MetaF>(b.n)));
    return scalar_out(meta_wasserstein(std::get<MetaQ>(a.n), std::get<MetaQ>(b.n)));
  });

  m.def("check_class_constraint", [](const PyMeta& n, const PyMeasure& nu) {
    if (std::holds_alternative<MetaF>(n.n)) {
      require(std::holds_alternative<MeasureF>(nu.m), Errc::mode_mismatch, "mode mismatch");
      return check_class_constraint(std::get<MetaF>(n.n), std::get<MeasureF>(nu.m));
    }
    require(std::holds_alternative<MeasureQ>(nu.m), Errc::mode_mismatch, "mode mismatch");
    return check_class_constraint(std::get<MetaQ>(n.n), std::get<MeasureQ>(nu.m));
  });

  m.def(
      "lifted_cost",
      [](const py::object& cost, const Point& x, const PyMeasure& lambda) {
        const CostSpec c = cost_in(cost);
        return visit_measure(lambda,
                             [&](const auto& l) { return scalar_out(lifted_cost(c, x, l)); });
      },
      py::arg("cost"), py::arg("x"), py::arg("lam"));

  m.def(
      "class_of_map",
      [](const PyMeasure& mu, const std::vector<Point>& targets) {
        return visit_measure(
            mu, [&](const auto& a) { return PyMeta{AnyMeta(class_of_map(a, targets))}; });
      },
      py::arg("mu"), py::arg("targets"));

  m.def(
      "solve_class_problem",
      [](const py::object& cost, const PyMeasure& mu, const PyMeta& lambda) {
        const CostSpec c = cost_in(cost);
        if (std::holds_alternative<MeasureF>(mu.m)) {
          require(std::holds_alternative<MetaF>(lambda.n), Errc::mode_mismatch, "mode mismatch");
          return class_report_out(
              solve_class_problem(c, std::get<MeasureF>(mu.m), std::get<MetaF>(lambda.n)));
        }
        require(std::holds_alternative<MetaQ>(lambda.n), Errc::mode_mismatch, "mode mismatch");
        return class_report_out(
            solve_class_problem(c, std::get<MeasureQ>(mu.m), std::get<MetaQ>(lambda.n)));
      },
      py::arg("cost"), py::arg("mu"), py::arg("lam"));

  m.def(
      "compare_with_kantorovich",
      [](const py::object& cost, const PyMeasure& mu, const PyMeta& lambda) {
        const CostSpec c = cost_in(cost);
        py::dict d;
        if (std::holds_alternative<MeasureF>(mu.m)) {
          require(std::holds_alternative<MetaF>(lambda.n), Errc::mode_mismatch, "mode mismatch");
          const auto r =
              compare_with_kantorovich(c, std::get<MeasureF>(mu.m), std::get<MetaF>(lambda.n));
          d["mk_value"] = scalar_out(r.mk_value);
          d["class_value"] = scalar_out(r.class_value);
          d["inequality_holds"] = r.inequality_holds;
          return d;
        }
        require(std::holds_alternative<MetaQ>(lambda.n), Errc::mode_mismatch, "mode mismatch");
        const auto r =
            compare_with_kantorovich(c, std::get<MeasureQ>(mu.m), std::get<MetaQ>(lambda.n));
        d["mk_value"] = scalar_out(r.mk_value);
        d["class_value"] = scalar_out(r.class_value);
        d["inequality_holds"] = r.inequality_holds;
        return d;
      },
      py::arg("cost"), py::arg("mu"), py::arg("lam"));

  m.def(
      "diagnose_existence",
      [](const py::object& cost, const PyMeasure& mu, const PyMeta& lambda,
         bool require_closed_form) {
        const CostSpec c = cost_in(cost);
        DegeneracyReport r;
        if (std::holds_alternative<MeasureF>(mu.m)) {
          require(std::holds_alternative<MetaF>(lambda.n), Errc::mode_mismatch, "mode mismatch");
          r = diagnose_existence(c, std::get<MeasureF>(mu.m), std::get<MetaF>(lambda.n),
                                 require_closed_form);
        } else {
          require(std::holds_alternative<MetaQ>(lambda.n), Errc::mode_mismatch, "mode mismatch");
          r = diagnose_existence(c, std::get<MeasureQ>(mu.m), std::get<MetaQ>(lambda.n),
                                 require_closed_form);
        }
        py::dict d;
        d["any_flagged"] = r.any_flagged;
        py::list pairs;
        for (const auto& p : r.pairs) {
          py::dict e;
          e["i"] = p.i;
          e["j"] = p.j;
          e["closed_form_available"] = p.closed_form_available;
          e["closed_form_degenerate"] = p.closed_form_degenerate;
          e["barycenter_difference"] = p.barycenter_difference;
          e["sample_integral_difference"] = p.sample_integral_difference;
          e["tie_degenerate"] = p.tie_degenerate;
          e["max_deviation_from_constant"] = p.max_deviation_from_constant;
          pairs.append(e);
        }
        d["pairs"] = pairs;
        return d;
      },
      py::arg("cost"), py::arg("mu"), py::arg("lam"), py::arg("require_closed_form") = false);

  m.def(
      "solve_allocation",
      [](const py::object& cost, const PyMeasure& mu, const std::vector<PyMeasure>& profiles,
         const PyMeasure& nu) {
        const CostSpec c = cost_in(cost);
        py::dict d;
        auto fill = [&](const auto& r) {
          d["status"] = allocation_status_name(r.status);
          py::list alpha;
          for (const auto& a : r.alpha) alpha.append(scalar_out(a));
          d["alpha"] = alpha;
          d["partition"] = r.partition;
          d["exhaustive"] = r.exhaustive;
          if (r.report) d["report"] = class_report_out(*r.report);
        };
        if (std::holds_alternative<MeasureF>(mu.m)) {
          std::vector<MeasureF> ps;
          for (const auto& p : profiles) ps.push_back(std::get<MeasureF>(p.m));
          fill(solve_allocation(c, std::get<MeasureF>(mu.m), ps, std::get<MeasureF>(nu.m)));
        } else {
          std::vector<MeasureQ> ps;
          for (const auto& p : profiles) ps.push_back(std::get<MeasureQ>(p.m));
          fill(solve_allocation(c, std::get<MeasureQ>(mu.m), ps, std::get<MeasureQ>(nu.m)));
        }
        return d;
      },
      py::arg("cost"), py::arg("mu"), py::arg("profiles"), py::arg("nu"));

  m.def(
      "c_transform",
      [](const py::object& cost, const PyMeasure& mu, const PyMeasure& nu, const py::list& values,
         const std::string& direction) {
        const CostSpec c = cost_in(cost);
        const TransformDirection dir = direction == "target_to_source"
                                           ? TransformDirection::target_to_source
                                           : TransformDirection::source_to_target;
        return visit_pair(mu, nu, [&](const auto& a, const auto& b) {
          using T = typename std::decay_t<decltype(a)>::Scalar;
          Potential<T> psi;
          psi.support = dir == TransformDirection::source_to_target ? a.atoms() : b.atoms();
          for (const auto& v : values) psi.values.push_back(scalar_in<T>(v, "values"));
          const Potential<T> out = c_transform(c, a, b, psi, dir);
          py::list result;
          for (const T& v : out.values) result.append(scalar_out(v));
          return result;
        });
      },
      py::arg("cost"), py::arg("mu"), py::arg("nu"), py::arg("values"),
      py::arg("direction") = "source_to_target");

  m.def(
      "c_superdifferential",
      [](const py::object& cost, const PyMeasure& mu, const PyMeasure& nu, const py::list& values,
         size_t x_index) {
        const CostSpec c = cost_in(cost);
        return visit_pair(mu, nu, [&](const auto& a, const auto& b) {
          using T = typename std::decay_t<decltype(a)>::Scalar;
          Potential<T> psi;
          psi.support = a.atoms();
          for (const auto& v : values) psi.values.push_back(scalar_in<T>(v, "values"));
          return c_superdifferential(c, a, b, psi, x_index);
        });
      },
      py::arg("cost"), py::arg("mu"), py::arg("nu"), py::arg("values"), py::arg("x_index"));

  m.def(
      "check_cyclical_monotonicity",
      [](const py::object& cost, const std::vector<Point>& xs, const std::vector<Point>& ys,
         const std::vector<std::pair<size_t, size_t>>& pairs, size_t k_max) {
        const CostSpec c = cost_in(cost);
        const auto r = check_cyclical_monotonicity<double>(c, xs, ys, pairs, k_max);
        py::dict d;
        d["monotone"] = r.monotone;
        if (r.witness) {
          py::dict w;
          w["subset"] = r.witness->subset;
          w["permutation"] = r.witness->permutation;
          w["violation"] = r.witness->violation;
          d["witness"] = w;
        } else {
          d["witness"] = py::none();
        }
        return d;
      },
      py::arg("cost"), py::arg("xs"), py::arg("ys"), py::arg("pairs"), py::arg("k_max") = 3);

  m.def(
      "check_twist",
      [](const py::object& cost, const std::vector<Point>& grid,
         const std::vector<std::pair<Point, Point>>& y_pairs, double h) {
        const auto violations = check_twist(cost_in(cost), grid, y_pairs, h);
        py::list out;
        for (const auto& v : violations)
          out.append(py::make_tuple(v.grid_index, v.pair_index, v.gradient_norm));
        return out;
      },
      py::arg("cost"), py::arg("grid"), py::arg("y_pairs"), py::arg("h") = 1e-4);

  m.def(
      "dual_check_w1",
      [](const PyMeasure& mu, const PyMeasure& nu, const std::vector<Point>& support,
         const py::list& values) {
        return visit_pair(mu, nu, [&](const auto& a, const auto& b) {
          using T = typename std::decay_t<decltype(a)>::Scalar;
          Potential<T> phi;
          phi.support = support;
          for (const auto& v : values) phi.values.push_back(scalar_in<T>(v, "values"));
          const auto r = dual_check_w1(a, b, phi);
          py::dict d;
          d["lower_bound"] = scalar_out(r.lower_bound);
          d["is_lip1"] = r.is_lip1;
          return d;
        });
      },
      py::arg("mu"), py::arg("nu"), py::arg("support"), py::arg("values"));

  m.def("demo_instance", []() {
    const demo::SplitClassDemo d = demo::make_split_class_demo();
    py::dict out;
    out["mu"] = PyMeasure{AnyMeasure(d.mu)};
    out["nu"] = PyMeasure{AnyMeasure(d.nu)};
    out["one_split_first"] = PyPlan{AnyPlan(d.one_split_first)};
    out["one_split_second"] = PyPlan{AnyPlan(d.one_split_second)};
    out["two_splits_a"] = PyPlan{AnyPlan(d.two_splits_a)};
    out["two_splits_b"] = PyPlan{AnyPlan(d.two_splits_b)};
    return out;
  });
}
