#pragma once

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ot/cost.hpp"
#include "ot/disintegration.hpp"
#include "ot/kantorovich.hpp"
#include "ot/measure.hpp"
#include "ot/meta.hpp"

namespace ot {

using Json = nlohmann::json;

using AnyMeasure = std::variant<MeasureF, MeasureQ>;
using AnyPlan = std::variant<PlanF, PlanQ>;
using AnyMeta = std::variant<MetaF, MetaQ>;

inline Mode mode_of(const AnyMeasure& m) {
  return std::holds_alternative<MeasureF>(m) ? Mode::floating : Mode::rational;
}

// --- scalar <-> json ------------------------------------------------------

template <class T>
Json weight_to_json(const T& w) {
  if constexpr (scalar_traits<T>::exact)
    return format_rational(w);
  else
    return w;
}

template <class T>
T weight_from_json(const Json& j, const std::string& field);

template <>
inline double weight_from_json<double>(const Json& j, const std::string& field) {
  require(j.is_number(), Errc::parse_error, field + " must be a number in float mode");
  return j.get<double>();
}

template <>
inline Rat weight_from_json<Rat>(const Json& j, const std::string& field) {
  require(j.is_string(), Errc::parse_error, field + " must be a \"p/q\" string in rational mode");
  return parse_rational(j.get<std::string>());
}

// --- measures ---------------------------------------------------------------

// Schema: {"dim": d, "mode": "float"|"rational", "atoms": [[..]], "weights": [..]}
template <class T>
Json measure_to_json(const DiscreteMeasure<T>& m) {
  Json j;
  j["dim"] = m.dim();
  j["mode"] = mode_name(scalar_traits<T>::mode);
  j["atoms"] = m.atoms();
  Json ws = Json::array();
  for (const T& w : m.weights()) ws.push_back(weight_to_json(w));
  j["weights"] = ws;
  return j;
}

template <class T>
DiscreteMeasure<T> measure_from_json_typed(const Json& j, const std::string& where) {
  require(j.is_object(), Errc::parse_error, where + " must be an object");
  require(j.contains("atoms") && j["atoms"].is_array(), Errc::parse_error,
          where + ".atoms must be an array of points");
  require(j.contains("weights") && j["weights"].is_array(), Errc::parse_error,
          where + ".weights must be an array");
  std::vector<Point> atoms;
  for (size_t i = 0; i < j["atoms"].size(); ++i) {
    const Json& a = j["atoms"][i];
    require(a.is_array() && !a.empty(), Errc::parse_error,
            where + ".atoms[" + std::to_string(i) + "] must be a nonempty array");
    Point p;
    for (const Json& c : a) {
      require(c.is_number(), Errc::parse_error,
              where + ".atoms[" + std::to_string(i) + "] must hold numbers");
      p.push_back(c.get<double>());
    }
    atoms.push_back(std::move(p));
  }
  if (j.contains("dim")) {
    require(j["dim"].is_number_integer(), Errc::parse_error, where + ".dim must be an integer");
    for (const Point& p : atoms)
      require(p.size() == j["dim"].get<size_t>(), Errc::parse_error,
              where + ".atoms do not match the declared dim");
  }
  std::vector<T> ws;
  for (size_t i = 0; i < j["weights"].size(); ++i)
    ws.push_back(weight_from_json<T>(j["weights"][i],
                                     where + ".weights[" + std::to_string(i) + "]"));
  return DiscreteMeasure<T>::make(std::move(atoms), std::move(ws));
}

AnyMeasure measure_from_json(const Json& j, const std::string& where = "measure");
Json measure_to_json(const AnyMeasure& m);

// --- cost -------------------------------------------------------------------

// One of: {"cost":"euclidean","p":1} | {"cost":"sqeuclidean"} | {"cost":"inner"}
//       | {"cost":"matrix","rows":[[..]]} | {"cost":"separable","a":[..],"b":[..]}
CostSpec cost_from_json(const Json& j, const std::string& where = "cost");
Json cost_to_json(const CostSpec& c);

// Shorthand accepted by the CLI: "euclidean:2", "sqeuclidean", "inner", or a
// path to a JSON cost file.
CostSpec cost_from_cli_spec(const std::string& text);

// --- plans ------------------------------------------------------------------

// Schema: {"source": <measure>, "target": <measure>, "matrix": [[..]]}
template <class T>
Json plan_to_json(const TransportPlan<T>& p) {
  Json j;
  j["source"] = measure_to_json(p.source());
  j["target"] = measure_to_json(p.target());
  Json rows = Json::array();
  for (size_t i = 0; i < p.matrix().rows(); ++i) {
    Json row = Json::array();
    for (size_t jj = 0; jj < p.matrix().cols(); ++jj) row.push_back(weight_to_json(p.matrix()(i, jj)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return j;
}

template <class T>
TransportPlan<T> plan_from_json_typed(const Json& j, const std::string& where) {
  require(j.is_object() && j.contains("source") && j.contains("target") && j.contains("matrix"),
          Errc::parse_error, where + " must hold source, target and matrix");
  DiscreteMeasure<T> source = measure_from_json_typed<T>(j["source"], where + ".source");
  DiscreteMeasure<T> target = measure_from_json_typed<T>(j["target"], where + ".target");
  const Json& rows = j["matrix"];
  require(rows.is_array() && rows.size() == source.size(), Errc::parse_error,
          where + ".matrix must have one row per source atom");
  Matrix<T> m(source.size(), target.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].is_array() && rows[i].size() == target.size(), Errc::parse_error,
            where + ".matrix[" + std::to_string(i) + "] must have one entry per target atom");
    for (size_t jj = 0; jj < target.size(); ++jj)
      m(i, jj) = weight_from_json<T>(rows[i][jj], where + ".matrix[" + std::to_string(i) + "][" +
                                                      std::to_string(jj) + "]");
  }
  return TransportPlan<T>::make(std::move(source), std::move(target), std::move(m));
}

AnyPlan plan_from_json(const Json& j, const std::string& where = "plan");
Json plan_to_json(const AnyPlan& p);

// --- meta-measures ----------------------------------------------------------

// Schema: {"atoms": [<measure>, ..], "weights": [..]}
template <class T>
Json meta_to_json(const MetaMeasure<T>& n) {
  Json j;
  Json atoms = Json::array();
  for (const auto& a : n.atoms()) atoms.push_back(measure_to_json(a));
  j["atoms"] = atoms;
  Json ws = Json::array();
  for (const T& w : n.weights()) ws.push_back(weight_to_json(w));
  j["weights"] = ws;
  return j;
}

template <class T>
MetaMeasure<T> meta_from_json_typed(const Json& j, const std::string& where) {
  require(j.is_object() && j.contains("atoms") && j.contains("weights"), Errc::parse_error,
          where + " must hold atoms and weights");
  require(j["atoms"].is_array() && j["weights"].is_array() &&
              j["atoms"].size() == j["weights"].size(),
          Errc::parse_error, where + ".atoms and .weights must be arrays of equal length");
  std::vector<DiscreteMeasure<T>> atoms;
  std::vector<T> ws;
  for (size_t i = 0; i < j["atoms"].size(); ++i) {
    atoms.push_back(
        measure_from_json_typed<T>(j["atoms"][i], where + ".atoms[" + std::to_string(i) + "]"));
    ws.push_back(
        weight_from_json<T>(j["weights"][i], where + ".weights[" + std::to_string(i) + "]"));
  }
  return MetaMeasure<T>::make(std::move(atoms), std::move(ws));
}

AnyMeta meta_from_json(const Json& j, const std::string& where = "lambda");
Json meta_to_json(const AnyMeta& n);

// --- disintegration maps ----------------------------------------------------

// Schema: {"base": <measure>, "conditionals": [<measure>, ..]}
template <class T>
Json disintegration_to_json(const DisintegrationMap<T>& f) {
  Json j;
  j["base"] = measure_to_json(f.base);
  Json cs = Json::array();
  for (const auto& c : f.conditionals) cs.push_back(measure_to_json(c));
  j["conditionals"] = cs;
  return j;
}

// --- potentials -------------------------------------------------------------

// Exported as a plain array aligned with the canonical atom order.
template <class T>
Json potential_to_json(const Potential<T>& phi) {
  Json values = Json::array();
  for (const T& v : phi.values) values.push_back(weight_to_json(v));
  return values;
}

// --- text exports -----------------------------------------------------------

// Sparse CSV rows "i,j,mass,cost" over the plan support.
template <class T>
std::string plan_to_csv(const TransportPlan<T>& p, const CostSpec& c) {
  const Matrix<T> table = cost_table(c, p.source(), p.target());
  std::string out = "i,j,mass,cost\n";
  for (size_t i = 0; i < p.matrix().rows(); ++i)
    for (size_t j = 0; j < p.matrix().cols(); ++j) {
      if (p.matrix()(i, j) == T(0)) continue;
      out += std::to_string(i) + "," + std::to_string(j) + "," +
             scalar_traits<T>::to_string(p.matrix()(i, j)) + "," +
             scalar_traits<T>::to_string(table(i, j)) + "\n";
    }
  return out;
}

std::string format_point(const Point& p);

// Bipartite digraph in DOT: one node per atom, edge label = mass, penwidth
// proportional to mass.
template <class T>
std::string plan_to_dot(const TransportPlan<T>& p, const std::string& name) {
  std::string out = "digraph \"" + name + "\" {\n  rankdir=LR;\n";
  for (size_t i = 0; i < p.source().size(); ++i)
    out += "  x" + std::to_string(i) + " [label=\"x" + std::to_string(i) + " " +
           format_point(p.source().atom(i)) + "\"];\n";
  for (size_t j = 0; j < p.target().size(); ++j)
    out += "  y" + std::to_string(j) + " [label=\"y" + std::to_string(j) + " " +
           format_point(p.target().atom(j)) + "\", shape=box];\n";
  for (size_t i = 0; i < p.matrix().rows(); ++i)
    for (size_t j = 0; j < p.matrix().cols(); ++j) {
      const T& w = p.matrix()(i, j);
      if (w == T(0)) continue;
      const double width = 0.5 + 4.0 * scalar_traits<T>::to_double(w);
      out += "  x" + std::to_string(i) + " -> y" + std::to_string(j) + " [label=\"" +
             scalar_traits<T>::to_string(w) + "\", penwidth=" + format_double(width) + "];\n";
    }
  out += "}\n";
  return out;
}

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ot
