#pragma once

// Seeded property suites. Every invariant is a kernel that draws one random
// case from its own RNG stream and returns a nonnegative residual; a case
// fails when the residual exceeds the tolerance, is not finite, or the kernel
// throws.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace affmech {

struct Invariant {
  std::string suite;
  std::string name;
  double tolerance = 0.0;
  std::function<double(std::mt19937_64&)> kernel;
};

/// All invariants, in report order.
const std::vector<Invariant>& invariant_registry();
/// special_affine, calculus, canonical, dynamics.
std::vector<std::string> suite_names();

/// Independent stream for case `index` of invariant `name`.
std::mt19937_64 case_rng(std::uint64_t seed, const std::string& name, std::size_t index);

struct CaseFailure {
  std::size_t index = 0;
  std::string message;
};

struct InvariantReport {
  std::string name;
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst_residual = 0.0;  // over cases that returned a finite residual
  std::optional<CaseFailure> first_failure;
};

struct VerifyConfig {
  std::string suite = "all";
  std::size_t cases = 100;
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerances;  // overrides by invariant name
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<InvariantReport> invariants;
  double wall_time = 0.0;
};

InvariantReport run_invariant_serial(const Invariant& inv, std::size_t cases, std::uint64_t seed, double tolerance);
/// OpenMP over cases; per-case results are reduced in case order, so the
/// report equals the serial one.
InvariantReport run_invariant_parallel(const Invariant& inv, std::size_t cases, std::uint64_t seed, double tolerance);

/// Throws std::invalid_argument on an unknown suite or tolerance name.
VerifyReport run_verify(const VerifyConfig& config, bool parallel = true);

nlohmann::json report_to_json(const VerifyReport& report);
VerifyReport report_from_json(const nlohmann::json& j);

}  // namespace affmech
