// otcli: command-line front end for the transport-class toolkit.
//
// Subcommands: solve, classify, class-solve, demo, check.
// Exit codes: 0 success, 1 property violation, 2 input error,
//             3 solver failure, 4 class-infeasibility.

#include <unistd.h>

#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "ot/demo_instance.hpp"
#include "ot/disintegration.hpp"
#include "ot/json_io.hpp"
#include "ot/suites.hpp"
#include "ot/transport_class.hpp"

namespace {

using namespace ot;

enum ExitCode {
  kOk = 0,
  kViolation = 1,
  kInputError = 2,
  kSolverFailure = 3,
  kClassInfeasible = 4,
};

struct OutputOptions {
  std::string format;  // "", "table", "json", "csv"
  std::string out_path;

  // Tables on a terminal, JSON when redirected.
  std::string effective_format() const {
    if (!format.empty()) return format;
    return isatty(fileno(stdout)) ? "table" : "json";
  }

  void emit(const std::string& text) const {
    if (out_path.empty())
      std::cout << text;
    else
      write_text_file(out_path, text);
  }
};

int exit_code_for(const OtError& e) {
  switch (e.code()) {
    case Errc::infeasible:
    case Errc::unbounded:
    case Errc::numerical_failure: return kSolverFailure;
    default: return kInputError;
  }
}

AnyMeasure load_measure(const std::string& path, const std::string& mode_flag) {
  AnyMeasure m = measure_from_json(load_json_file(path), path);
  if (!mode_flag.empty()) {
    const Mode want = mode_flag == "rational" ? Mode::rational : Mode::floating;
    require(mode_of(m) == want, Errc::mode_mismatch,
            path + " is in " + std::string(mode_name(mode_of(m))) + " mode, --mode asked for " +
                mode_flag);
  }
  return m;
}

// ---------------------------------------------------------------------------
// solve

template <class T>
int run_solve(const CostSpec& cost, const DiscreteMeasure<T>& mu, const DiscreteMeasure<T>& nu,
              const OutputOptions& out, const std::string& dot_path) {
  const MkSolution<T> sol = solve_mk(cost, mu, nu);
  T dual(0);
  for (size_t i = 0; i < mu.size(); ++i) dual += sol.source_potential.values[i] * mu.weight(i);
  for (size_t j = 0; j < nu.size(); ++j) dual += sol.target_potential.values[j] * nu.weight(j);
  const double gap = std::abs(scalar_traits<T>::to_double(sol.value - dual));

  if (!dot_path.empty()) write_text_file(dot_path, plan_to_dot(sol.plan, "plan"));

  const std::string format = out.effective_format();
  if (format == "csv") {
    out.emit(plan_to_csv(sol.plan, cost));
    return kOk;
  }
  if (format == "json") {
    Json j;
    j["value"] = weight_to_json(sol.value);
    j["gap"] = gap;
    j["iterations"] = sol.iterations;
    Json triples = Json::array();
    const Matrix<T> table = cost_table(cost, mu, nu);
    for (size_t i = 0; i < mu.size(); ++i)
      for (size_t jj = 0; jj < nu.size(); ++jj) {
        if (sol.plan.matrix()(i, jj) == T(0)) continue;
        triples.push_back({{"i", i},
                           {"j", jj},
                           {"mass", weight_to_json(sol.plan.matrix()(i, jj))},
                           {"cost", weight_to_json(table(i, jj))}});
      }
    j["plan"] = triples;
    j["dual_row"] = potential_to_json(sol.source_potential);
    j["dual_col"] = potential_to_json(sol.target_potential);
    out.emit(j.dump(2) + "\n");
    return kOk;
  }

  std::string text;
  text += "value:      " + scalar_traits<T>::to_string(sol.value) + "\n";
  text += "duality gap: " + format_double(gap) + "\n";
  text += "iterations: " + std::to_string(sol.iterations) + "\n";
  text += "plan (i -> j, mass):\n";
  for (size_t i = 0; i < mu.size(); ++i)
    for (size_t jj = 0; jj < nu.size(); ++jj) {
      if (sol.plan.matrix()(i, jj) == T(0)) continue;
      text += "  " + std::to_string(i) + " -> " + std::to_string(jj) + "  " +
              scalar_traits<T>::to_string(sol.plan.matrix()(i, jj)) + "\n";
    }
  text += "dual row:  ";
  for (const T& v : sol.source_potential.values) text += scalar_traits<T>::to_string(v) + " ";
  text += "\ndual col:  ";
  for (const T& v : sol.target_potential.values) text += scalar_traits<T>::to_string(v) + " ";
  text += "\n";
  out.emit(text);
  return kOk;
}

// ---------------------------------------------------------------------------
// classify

template <class T>
int run_classify(const std::vector<TransportPlan<T>>& plans, const OutputOptions& out) {
  for (size_t i = 1; i < plans.size(); ++i)
    require(plans[i].source() == plans[0].source(), Errc::source_mismatch,
            "plans must share the same source measure");

  std::vector<MetaMeasure<T>> metas;
  metas.reserve(plans.size());
  for (const auto& p : plans) metas.push_back(pushforward_meta(disintegrate(p)));

  const size_t n = plans.size();
  Matrix<double> dist(n, n, 0.0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const double d = metas[i] == metas[j]
                           ? 0.0
                           : scalar_traits<T>::to_double(meta_wasserstein(metas[i], metas[j]));
      dist(i, j) = dist(j, i) = d;
    }

  const double eps = scalar_traits<T>::exact ? 0.0 : tol::meta;
  std::vector<long> cls(n, -1);
  long next = 0;
  for (size_t i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = next++;
    for (size_t j = i + 1; j < n; ++j)
      if (cls[j] < 0 && dist(i, j) <= eps) cls[j] = cls[i];
  }
  std::vector<std::vector<size_t>> classes(static_cast<size_t>(next));
  for (size_t i = 0; i < n; ++i) classes[static_cast<size_t>(cls[i])].push_back(i);

  if (out.effective_format() == "json") {
    Json j;
    j["classes"] = classes;
    Json rows = Json::array();
    for (size_t i = 0; i < n; ++i) {
      Json row = Json::array();
      for (size_t jj = 0; jj < n; ++jj) row.push_back(dist(i, jj));
      rows.push_back(row);
    }
    j["meta_distance"] = rows;
    out.emit(j.dump(2) + "\n");
    return kOk;
  }
  std::string text = "transport classes:\n";
  for (size_t c = 0; c < classes.size(); ++c) {
    text += "  class " + std::to_string(c) + ": plans";
    for (size_t i : classes[c]) text += " " + std::to_string(i);
    text += "\n";
  }
  text += "pairwise meta-distance:\n";
  for (size_t i = 0; i < n; ++i) {
    text += " ";
    for (size_t jj = 0; jj < n; ++jj) text += " " + format_double(dist(i, jj));
    text += "\n";
  }
  out.emit(text);
  return kOk;
}

// ---------------------------------------------------------------------------
// class-solve

template <class T>
int run_class_solve(const CostSpec& cost, const DiscreteMeasure<T>& mu,
                    const MetaMeasure<T>& lambda, const OutputOptions& out) {
  const ClassProblemReport<T> report = solve_class_problem(cost, mu, lambda);
  if (out.effective_format() == "json") {
    Json j;
    j["relaxed_value"] = weight_to_json(report.relaxed_value);
    j["feasible_maps_exist"] = report.feasible_maps_exist;
    if (report.map_value) {
      j["map_value"] = weight_to_json(*report.map_value);
      j["map_value_via_plan"] = weight_to_json(*report.map_value_via_plan);
      j["gap"] = weight_to_json(*report.gap);
      j["assignment"] = *report.optimal_assignment;
    } else {
      j["map_value"] = "inf";
    }
    Json flags = Json::array();
    for (const auto& [a, b] : report.degeneracy_flags) flags.push_back({a, b});
    j["degeneracy_flags"] = flags;
    out.emit(j.dump(2) + "\n");
  } else {
    std::string text;
    text += "relaxed value:  " + scalar_traits<T>::to_string(report.relaxed_value) + "\n";
    if (report.map_value) {
      text += "map value:      " + scalar_traits<T>::to_string(*report.map_value) + "\n";
      text += "gap:            " + scalar_traits<T>::to_string(*report.gap) + "\n";
      text += "assignment:     ";
      for (size_t j : *report.optimal_assignment) text += std::to_string(j) + " ";
      text += "\n";
    } else {
      text += "map value:      inf (no feasible map)\n";
    }
    text += "degenerate meta-atom pairs:";
    if (report.degeneracy_flags.empty()) text += " none";
    for (const auto& [a, b] : report.degeneracy_flags)
      text += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
    text += "\n";
    out.emit(text);
  }
  return report.feasible_maps_exist ? kOk : kClassInfeasible;
}

// ---------------------------------------------------------------------------
// demo

std::string meta_to_text(const MetaQ& n) {
  std::string out;
  for (size_t i = 0; i < n.size(); ++i) {
    out += "    weight " + format_rational(n.weight(i)) + " at measure {";
    for (size_t j = 0; j < n.atom(i).size(); ++j) {
      if (j) out += ", ";
      out += format_rational(n.atom(i).weight(j)) + " at " + format_point(n.atom(i).atom(j));
    }
    out += "}\n";
  }
  return out;
}

int run_demo(const std::string& out_dir) {
  const demo::SplitClassDemo d = demo::make_split_class_demo();
  const std::vector<std::pair<std::string, const PlanQ*>> plans = {
      {"f", &d.one_split_first},
      {"g", &d.one_split_second},
      {"h", &d.two_splits_a},
      {"k", &d.two_splits_b},
  };
  std::string text;
  text += "source mu: uniform 1/3 on x = 0, 1, 2\n";
  text += "target nu: 1/6 at y = 0, 5/6 at y = 1\n\n";

  text += "conditional measures (disintegration):\n";
  for (const auto& [name, plan] : plans) {
    const DisintegrationMap<Rat> f = disintegrate(*plan);
    text += "  plan " + name + ":\n";
    for (size_t i = 0; i < f.size(); ++i) {
      text += "    at x" + std::to_string(i) + ": {";
      for (size_t j = 0; j < f.conditionals[i].size(); ++j) {
        if (j) text += ", ";
        text += format_rational(f.conditionals[i].weight(j)) + " at " +
                format_point(f.conditionals[i].atom(j));
      }
      text += "}\n";
    }
  }

  text += "\npush-forward meta-measures:\n";
  std::vector<MetaQ> metas;
  for (const auto& [name, plan] : plans) {
    metas.push_back(pushforward_meta(disintegrate(*plan)));
    text += "  plan " + name + ":\n" + meta_to_text(metas.back());
  }

  text += "\nclass partition:\n";
  text += std::string("  f ~ g: ") +
          (classes_equal(d.one_split_first, d.one_split_second) ? "equal" : "different") + "\n";
  text += std::string("  f ~ h: ") +
          (classes_equal(d.one_split_first, d.two_splits_a) ? "equal" : "different") + "\n";
  text += std::string("  h ~ k: ") +
          (classes_equal(d.two_splits_a, d.two_splits_b) ? "equal" : "different") + "\n";
  text += std::string("  f ~ k: ") +
          (classes_equal(d.one_split_first, d.two_splits_b) ? "equal" : "different") + "\n";
  text += "  classes: {f, g}, {h}, {k}\n";

  text += "\nsecond marginals (all must equal nu):\n";
  for (const auto& [name, plan] : plans) {
    text += "  plan " + name + ": " +
            (second_marginal(*plan) == d.nu ? "equals nu" : "DIFFERS") + "\n";
  }

  const CostSpec cost = CostSpec::euclidean(1.0);
  const MkSolution<Rat> mk = solve_mk(cost, d.mu, d.nu);
  text += "\ntransport values under |x - y|:\n";
  text += "  unconstrained optimum: " + format_rational(mk.value) + "\n";
  const Matrix<Rat> table = cost_table(cost, d.mu, d.nu);
  for (const auto& [name, plan] : plans) {
    Rat v(0);
    for (size_t i = 0; i < d.mu.size(); ++i)
      for (size_t j = 0; j < d.nu.size(); ++j) v += plan->matrix()(i, j) * table(i, j);
    text += "  plan " + name + ": " + format_rational(v) + "\n";
  }

  // The Dirac-profile meta-measure shares the barycenter with the class of f
  // but differs from it as a measure on measure space.
  const MetaQ dirac_profile = MetaQ::make(
      {MeasureQ::dirac({0.0}), MeasureQ::dirac({1.0})}, {Rat(1, 6), Rat(5, 6)});
  text += "\nDirac-profile meta-measure with the same barycenter:\n" + meta_to_text(dirac_profile);
  text += "  barycenter equals nu: " +
          std::string(check_class_constraint(dirac_profile, d.nu) ? "yes" : "no") + "\n";
  text += "  nested distance to class of f: " +
          format_rational(meta_wasserstein(metas[0], dirac_profile)) + " (distinct meta-measures)\n";

  const std::string dir = out_dir.empty() ? "." : out_dir;
  write_text_file(dir + "/demo_one_split.dot",
                  plan_to_dot(d.one_split_first, "one_split_first") +
                      plan_to_dot(d.one_split_second, "one_split_second"));
  write_text_file(dir + "/demo_two_splits.dot",
                  plan_to_dot(d.two_splits_a, "two_splits_a") +
                      plan_to_dot(d.two_splits_b, "two_splits_b"));
  text += "\nwrote " + dir + "/demo_one_split.dot and " + dir + "/demo_two_splits.dot\n";

  std::cout << text;
  return kOk;
}

// ---------------------------------------------------------------------------
// check

int run_check(const std::string& suite, uint64_t seed, long trials, const std::string& cost_spec) {
  suites::SuiteResult result;
  if (suite == "duality")
    result = suites::duality_suite(seed, trials);
  else if (suite == "monotonicity")
    result = suites::monotonicity_suite(seed, trials);
  else if (suite == "barycenter-lipschitz")
    result = suites::barycenter_lipschitz_suite(seed, trials);
  else if (suite == "twist")
    result = suites::twist_suite(seed, trials,
                                 cost_from_cli_spec(cost_spec.empty() ? "sqeuclidean" : cost_spec));
  else if (suite == "push-lemma")
    result = suites::push_lemma_suite(seed, trials);
  else
    raise(Errc::invalid_argument,
          "unknown suite \"" + suite +
              "\" (expected duality|monotonicity|barycenter-lipschitz|twist|push-lemma)");

  std::cout << "suite " << result.name << ": trials=" << result.trials
            << " max_violation=" << format_double(result.max_violation) << " "
            << (result.pass ? "PASS" : "FAIL") << "\n";
  if (!result.pass && result.witness) std::cout << result.witness->dump(2) << "\n";
  return result.pass ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete optimal transport with transport classes"};
  app.require_subcommand(1);

  std::string cost_spec, mu_path, nu_path, lambda_path, mode_flag, dot_path, out_dir, suite;
  std::vector<std::string> plan_paths;
  OutputOptions out;
  uint64_t seed = 0;
  long trials = 100;

  CLI::App* solve = app.add_subcommand("solve", "solve the transport problem between two measures");
  solve->add_option("--cost", cost_spec, "cost: euclidean[:p] | sqeuclidean | inner | <file.json>")
      ->required();
  solve->add_option("--mu", mu_path, "source measure JSON")->required();
  solve->add_option("--nu", nu_path, "target measure JSON")->required();
  solve->add_option("--mode", mode_flag, "expected numeric mode: float | rational");
  solve->add_option("--format", out.format, "output format: table | json | csv");
  solve->add_option("--out", out.out_path, "write output to a file");
  solve->add_option("--dot", dot_path, "write the plan as a DOT graph");

  CLI::App* classify = app.add_subcommand("classify", "partition plans into transport classes");
  classify->add_option("--plan", plan_paths, "plan JSON files")->required()->expected(-1);
  classify->add_option("--format", out.format, "output format: table | json");
  classify->add_option("--out", out.out_path, "write output to a file");

  CLI::App* class_solve =
      app.add_subcommand("class-solve", "solve the class-constrained transport problem");
  class_solve->add_option("--cost", cost_spec, "cost spec")->required();
  class_solve->add_option("--mu", mu_path, "source measure JSON")->required();
  class_solve->add_option("--lambda", lambda_path, "meta-measure JSON")->required();
  class_solve->add_option("--format", out.format, "output format: table | json");
  class_solve->add_option("--out", out.out_path, "write output to a file");

  CLI::App* demo_cmd = app.add_subcommand("demo", "run the built-in splitting-classes walkthrough");
  demo_cmd->add_option("--out-dir", out_dir, "directory for the DOT files (default .)");

  CLI::App* check = app.add_subcommand("check", "run a randomized invariant suite");
  check->add_option("suite", suite,
                    "duality | monotonicity | barycenter-lipschitz | twist | push-lemma")
      ->required();
  check->add_option("--trials", trials, "number of trials (default 100)");
  check->add_option("--seed", seed, "PRNG seed (default 0)");
  check->add_option("--cost", cost_spec, "cost spec for the twist suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const CostSpec cost = cost_from_cli_spec(cost_spec);
      AnyMeasure mu = load_measure(mu_path, mode_flag);
      AnyMeasure nu = load_measure(nu_path, mode_flag);
      require(mode_of(mu) == mode_of(nu), Errc::mode_mismatch,
              "mu and nu are in different numeric modes");
      if (std::holds_alternative<MeasureF>(mu))
        return run_solve(cost, std::get<MeasureF>(mu), std::get<MeasureF>(nu), out, dot_path);
      return run_solve(cost, std::get<MeasureQ>(mu), std::get<MeasureQ>(nu), out, dot_path);
    }
    if (classify->parsed()) {
      require(!plan_paths.empty(), Errc::invalid_argument, "need at least one plan");
      std::vector<AnyPlan> plans;
      for (const std::string& p : plan_paths) plans.push_back(plan_from_json(load_json_file(p), p));
      for (size_t i = 1; i < plans.size(); ++i)
        require(plans[i].index() == plans[0].index(), Errc::mode_mismatch,
                "plans are in different numeric modes");
      if (std::holds_alternative<PlanF>(plans[0])) {
        std::vector<PlanF> typed;
        for (auto& p : plans) typed.push_back(std::get<PlanF>(std::move(p)));
        return run_classify(typed, out);
      }
      std::vector<PlanQ> typed;
      for (auto& p : plans) typed.push_back(std::get<PlanQ>(std::move(p)));
      return run_classify(typed, out);
    }
    if (class_solve->parsed()) {
      const CostSpec cost = cost_from_cli_spec(cost_spec);
      AnyMeasure mu = load_measure(mu_path, mode_flag);
      AnyMeta lambda = meta_from_json(load_json_file(lambda_path), lambda_path);
      require((std::holds_alternative<MeasureF>(mu) && std::holds_alternative<MetaF>(lambda)) ||
                  (std::holds_alternative<MeasureQ>(mu) && std::holds_alternative<MetaQ>(lambda)),
              Errc::mode_mismatch, "mu and lambda are in different numeric modes");
      if (std::holds_alternative<MeasureF>(mu))
        return run_class_solve(cost, std::get<MeasureF>(mu), std::get<MetaF>(lambda), out);
      return run_class_solve(cost, std::get<MeasureQ>(mu), std::get<MetaQ>(lambda), out);
    }
    if (demo_cmd->parsed()) return run_demo(out_dir);
    if (check->parsed()) {
      require(trials >= 1, Errc::invalid_argument, "trials must be at least 1");
      return run_check(suite, seed, trials, cost_spec);
    }
  } catch (const OtError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
