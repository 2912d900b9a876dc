#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shadowlab/deciders/engine.hpp"
#include "shadowlab/deciders/visited_sets.hpp"
#include "shadowlab/errors.hpp"
#include "shadowlab/pwl/shadow_run.hpp"
#include "shadowlab/rational.hpp"

namespace shadowlab::cli {

inline constexpr char kToolVersion[] = "shadowlab 1.0.0";

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,        // malformed JSON, bad flags, bad parameters
  kExitBudget = 3,       // a size cap or search budget was exceeded
  kExitCertificate = 4,  // a certificate or table cell failed re-validation
  kExitInvalid = 5,      // input parses but breaks the metric or factor-map axioms
};

/// Input that parsed but failed validation; `listing` has one line per problem.
class InvalidInput : public std::runtime_error {
 public:
  InvalidInput(const std::string& what, std::vector<std::string> listing)
      : std::runtime_error(what), listing(std::move(listing)) {}
  std::vector<std::string> listing;
};

struct RunConfig {
  std::string command;
  /// Property, lift variant, example id or induced-system kind.
  std::string target;
  std::vector<std::string> inputs;

  std::optional<Rational> eps;
  std::optional<Rational> delta;
  std::optional<Rational> closeness;
  std::optional<Rational> up;
  std::optional<Rational> down;
  std::optional<Rational> resolution;
  std::optional<std::size_t> horizon;

  std::optional<std::string> output;
  std::optional<std::string> plot_data;

  std::uint64_t seed = 0;
  bool verify_certificates = false;
  bool timing = true;

  std::size_t hyperspace_cap = 10;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t state_budget = kDefaultStateBudget;
  std::size_t pattern_budget = kPatternBudget;
  std::size_t point_cap = 4096;

  /// induce / experiment
  std::size_t order = 2;
  std::size_t levels = 2;
  std::size_t warmup = 100;
  std::size_t window = 100;
  std::size_t windows = 100;

  /// table
  std::size_t random_systems = 0;
  std::size_t random_max_points = 4;

  void validate() const {
    for (std::size_t v : {hyperspace_cap, enumeration_cap, state_budget, pattern_budget, point_cap})
      if (v == 0) throw InputError("caps and budgets must be positive");
    for (const auto* r : {&eps, &delta, &closeness, &up, &down, &resolution})
      if (*r && **r <= 0) throw InputError("thresholds and resolutions must be positive");
    if (random_max_points == 0) throw InputError("--max-points must be positive");
  }
};

}  // namespace shadowlab::cli
