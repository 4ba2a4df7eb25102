#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "ot/cost.hpp"

namespace ot::suites {

struct SuiteResult {
  std::string name;
  long trials = 0;
  double max_violation = 0.0;  // worst observed slack; <= 0 means clean
  bool pass = false;
  std::optional<nlohmann::json> witness;  // populated on failure
};

// Strong duality of the transport solver on random float instances:
// |primal - dual| <= tol::dual * (m + n).
SuiteResult duality_suite(uint64_t seed, long trials);

// Supports of optimal plans are cyclically monotone (k <= 3).
SuiteResult monotonicity_suite(uint64_t seed, long trials);

// The generalized barycenter is 1-Lipschitz for the nested W1 distance.
SuiteResult barycenter_lipschitz_suite(uint64_t seed, long trials);

// No vanishing gradients of x -> c(x,y1) - c(x,y2) on random grids.
SuiteResult twist_suite(uint64_t seed, long trials, const CostSpec& cost);

// Equal classes force equal second marginals; the stored counterexample
// certifies that the converse fails.
SuiteResult push_lemma_suite(uint64_t seed, long trials);

}  // namespace ot::suites
