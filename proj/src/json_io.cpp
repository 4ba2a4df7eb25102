#include "ot/json_io.hpp"

#include <fstream>
#include <sstream>

namespace ot {

namespace {

Mode mode_from_json(const Json& j, const std::string& where) {
  require(j.contains("mode"), Errc::parse_error, where + ".mode is required");
  require(j["mode"].is_string(), Errc::parse_error, where + ".mode must be a string");
  const std::string m = j["mode"].get<std::string>();
  if (m == "float") return Mode::floating;
  if (m == "rational") return Mode::rational;
  raise(Errc::parse_error, where + ".mode must be \"float\" or \"rational\"");
}

}  // namespace

AnyMeasure measure_from_json(const Json& j, const std::string& where) {
  require(j.is_object(), Errc::parse_error, where + " must be an object");
  if (mode_from_json(j, where) == Mode::floating)
    return measure_from_json_typed<double>(j, where);
  return measure_from_json_typed<Rat>(j, where);
}

Json measure_to_json(const AnyMeasure& m) {
  return std::visit([](const auto& v) { return measure_to_json(v); }, m);
}

CostSpec cost_from_json(const Json& j, const std::string& where) {
  require(j.is_object() && j.contains("cost") && j["cost"].is_string(), Errc::parse_error,
          where + ".cost must name the variant");
  const std::string kind = j["cost"].get<std::string>();
  if (kind == "euclidean") {
    double p = 1.0;
    if (j.contains("p")) {
      require(j["p"].is_number(), Errc::parse_error, where + ".p must be a number");
      p = j["p"].get<double>();
    }
    return CostSpec::euclidean(p);
  }
  if (kind == "sqeuclidean") return CostSpec::sqeuclidean();
  if (kind == "inner") return CostSpec::inner();
  if (kind == "matrix") {
    require(j.contains("rows") && j["rows"].is_array() && !j["rows"].empty(), Errc::parse_error,
            where + ".rows must be a nonempty array of rows");
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < j["rows"].size(); ++i) {
      const Json& r = j["rows"][i];
      require(r.is_array(), Errc::parse_error,
              where + ".rows[" + std::to_string(i) + "] must be an array");
      std::vector<double> row;
      for (const Json& v : r) {
        require(v.is_number(), Errc::parse_error,
                where + ".rows[" + std::to_string(i) + "] must hold numbers");
        row.push_back(v.get<double>());
      }
      rows.push_back(std::move(row));
    }
    return CostSpec::explicit_matrix(Matrix<double>::from_rows(rows));
  }
  if (kind == "separable") {
    require(j.contains("a") && j["a"].is_array() && j.contains("b") && j["b"].is_array(),
            Errc::parse_error, where + " needs sample arrays a and b");
    std::vector<double> a, b;
    for (const Json& v : j["a"]) {
      require(v.is_number(), Errc::parse_error, where + ".a must hold numbers");
      a.push_back(v.get<double>());
    }
    for (const Json& v : j["b"]) {
      require(v.is_number(), Errc::parse_error, where + ".b must hold numbers");
      b.push_back(v.get<double>());
    }
    return CostSpec::separable(std::move(a), std::move(b));
  }
  raise(Errc::parse_error, where + ".cost \"" + kind + "\" is not a known variant");
}

Json cost_to_json(const CostSpec& c) {
  Json j;
  j["cost"] = c.kind_name();
  switch (c.kind) {
    case CostSpec::Kind::euclidean: j["p"] = c.p; break;
    case CostSpec::Kind::matrix: {
      Json rows = Json::array();
      for (size_t i = 0; i < c.rows.rows(); ++i) {
        Json row = Json::array();
        for (size_t jj = 0; jj < c.rows.cols(); ++jj) row.push_back(c.rows(i, jj));
        rows.push_back(row);
      }
      j["rows"] = rows;
      break;
    }
    case CostSpec::Kind::separable:
      j["a"] = c.a;
      j["b"] = c.b;
      break;
    default: break;
  }
  return j;
}

CostSpec cost_from_cli_spec(const std::string& text) {
  if (text == "sqeuclidean") return CostSpec::sqeuclidean();
  if (text == "inner") return CostSpec::inner();
  if (text.rfind("euclidean", 0) == 0) {
    double p = 1.0;
    const size_t colon = text.find(':');
    if (colon != std::string::npos) {
      try {
        p = std::stod(text.substr(colon + 1));
      } catch (const std::exception&) {
        raise(Errc::parse_error, "cost exponent in \"" + text + "\" is not a number");
      }
    } else {
      require(text == "euclidean", Errc::parse_error, "unknown cost \"" + text + "\"");
    }
    return CostSpec::euclidean(p);
  }
  // Anything else is a path to a JSON cost spec.
  return cost_from_json(load_json_file(text), text);
}

AnyPlan plan_from_json(const Json& j, const std::string& where) {
  require(j.is_object() && j.contains("source"), Errc::parse_error,
          where + ".source is required");
  if (mode_from_json(j["source"], where + ".source") == Mode::floating)
    return plan_from_json_typed<double>(j, where);
  return plan_from_json_typed<Rat>(j, where);
}

Json plan_to_json(const AnyPlan& p) {
  return std::visit([](const auto& v) { return plan_to_json(v); }, p);
}

AnyMeta meta_from_json(const Json& j, const std::string& where) {
  require(j.is_object() && j.contains("atoms") && j["atoms"].is_array() && !j["atoms"].empty(),
          Errc::parse_error, where + ".atoms must be a nonempty array");
  if (mode_from_json(j["atoms"][0], where + ".atoms[0]") == Mode::floating)
    return meta_from_json_typed<double>(j, where);
  return meta_from_json_typed<Rat>(j, where);
}

Json meta_to_json(const AnyMeta& n) {
  return std::visit([](const auto& v) { return meta_to_json(v); }, n);
}

std::string format_point(const Point& p) {
  std::string out = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_double(p[i]);
  }
  return out + ")";
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::parse_error, "cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    raise(Errc::parse_error, path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::invalid_argument, "cannot write file: " + path);
  out << content;
}

}  // namespace ot
