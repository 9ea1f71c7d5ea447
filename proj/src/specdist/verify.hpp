#pragma once

// Acceptance suites: each numbered criterion runs a batch of seeded checks
// against closed forms or independent computations.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specdist/engine.hpp"

namespace specdist {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed error (or the checked quantity)
  double threshold = 0.0;  // pass bound on `measured`
  int samples = 0;
  double seconds = 0.0;
  std::string detail;
};

struct VerifyConfig {
  Options opts;
  bool quick = false;     // reduced sample counts
  int berezin_nodes = 800;
};

using CheckCallback = std::function<void(const CheckResult&)>;

inline constexpr int kCriteriaCount = 10;

/// Runs the checks of one criterion (1..10). Throws InvalidArgument otherwise.
std::vector<CheckResult> run_criterion(int criterion, const VerifyConfig& cfg, const CheckCallback& cb = {});

/// Suites: "oracles" (1, 6, 8), "transport" (2, 10), "pythagoras" (3, 4, 5, 7),
/// "berezin" (9), "all". Throws InvalidArgument for an unknown name.
std::vector<int> suite_criteria(const std::string& suite);
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg, const CheckCallback& cb = {});

const char* criterion_title(int criterion);

}  // namespace specdist
