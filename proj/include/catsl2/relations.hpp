#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "catsl2/twomorphism.hpp"

namespace catsl2 {

struct MapEquation {
  std::string label;
  BimMap lhs, rhs;
};

struct ElementEquation {
  std::string label;
  BimElement lhs, rhs;
};

/// What a check produces for one (N, k). Equations are compared exactly by the runner;
/// failures holds the outcome of checks that are not equalities (ranks, nonvanishing, ...).
struct CheckBody {
  std::vector<MapEquation> maps;
  std::vector<ElementEquation> elements;
  std::vector<std::string> failures;
  std::optional<std::string> counterexample;
  std::string note;
};

struct SuiteOptions {
  unsigned threads = 0;          // 0: hardware concurrency
  int decorated_samples = 2;     // bimodule-law samples per map equation
  int law_samples = 50;          // samples per generator in the bimodule_law suite
  std::uint64_t seed = 1;
  int max_N = 4;
};

struct CheckSpec {
  std::string name;   // "<suite>.<check>"
  std::string suite;
  /// Contexts k at which the check is meaningful; k is the rightmost region unless the README says otherwise.
  std::function<std::vector<int>(int N)> contexts;
  /// Reason for reporting a single skipped entry when contexts(N) is empty.
  std::function<std::optional<std::string>(int N)> skip_reason;
  std::function<CheckBody(int N, int k, const SuiteOptions&)> build;
};

enum class Status { Pass, Fail, Skipped };
std::string status_name(Status s);

struct CheckResult {
  std::string check;
  int N = 1;
  std::optional<int> k;
  Status status = Status::Pass;
  std::string reason;
  std::optional<std::string> counterexample;
  long millis = 0;
};

struct VerifyReport {
  int N = 1;
  std::vector<std::string> suites;
  std::vector<CheckResult> entries;  // sorted by check name, then k

  bool ok() const;
  int count(Status s) const;
  nlohmann::json to_json(bool with_timing = true) const;
  std::string to_text() const;
};

/// Suite names in inventory order.
const std::vector<std::string>& suite_names();
const std::vector<CheckSpec>& check_registry();

/// One line per relation display the verifier is responsible for, with the check that covers it.
struct CoverageItem {
  std::string relation;
  std::string check;
};
const std::vector<CoverageItem>& coverage_manifest();

/// Runs one check at one context: map equations on the basis plus decorated samples, element equations exactly.
/// Exceptions from the check body become failures.
CheckResult run_check(const CheckSpec& spec, int N, int k, const SuiteOptions& options = {});

/// Throws std::invalid_argument on N outside [1, options.max_N] or an unknown suite name.
/// An empty suite set selects everything.
VerifyReport run_suite(int N, const std::set<std::string>& suites, const SuiteOptions& options = {});

/// Graded rank difference EF1_n - FE1_n under a shift convention.
Laurent k0_difference(int N, int n, ShiftConvention convention);

}  // namespace catsl2
