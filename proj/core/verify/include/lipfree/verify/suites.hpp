#pragma once

// Property suites run by `lipfree verify`. Each suite draws its own
// instances from the seed and reports its worst observed case.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lipfree/geometry.hpp"

namespace lipfree::verify {

inline constexpr std::uint64_t kDefaultSeed = 424242;

using WeightFunction = std::function<std::vector<double>(const Hypercube&, std::span<const double>)>;

struct VerifyOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Replaces interpolation_weights in the weight-simplex suite. Only
  /// meant for fault-injection tests.
  WeightFunction weight_function;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  double worst_case = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool pass() const;
};

struct Suite {
  std::string name;
  std::function<SuiteResult(const VerifyOptions&)> run;
};

/// Registered suites in execution order.
const std::vector<Suite>& all_suites();

VerifyReport run_all(const VerifyOptions& options);

}  // namespace lipfree::verify
