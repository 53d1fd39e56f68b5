#pragma once

// Test execution against the simulator: settings reset, event replay,
// restart check, crash oracle, and suite-level aggregation.

#include <optional>
#include <string>
#include <vector>

#include "greybox/app_model.hpp"
#include "greybox/seqgen.hpp"
#include "greybox/simulator.hpp"

namespace greybox {

struct TestCase {
  std::string id;
  /// Parts run back to back; each later part starts with a restart that
  /// keeps the settings. Usually a single part.
  std::vector<ExecutableSequence> parts;

  /// All events of all parts, in execution order.
  std::vector<EventId> events() const;
};

enum class VerdictKind { Passed, Failed, Broken };

std::string toString(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Passed;
  std::optional<CrashRecord> crash;      ///< Failed
  std::optional<std::size_t> brokenAt;   ///< Broken: position of the unavailable event

  friend bool operator==(const Verdict &, const Verdict &) = default;
};

struct CaseRun {
  Verdict verdict;
  Coverage coverage;
  std::size_t eventsFired = 0;
};

/// Clears the settings, launches, fires every event in order, then restarts
/// once. Positions count across parts. Broken sequences keep the coverage of
/// their executed prefix. Throws Error for events the model does not know.
CaseRun runTestCase(const AppModel &m, const TestCase &tc);

struct TestResult {
  std::string id;
  std::vector<EventId> events;
  Verdict verdict;
  std::size_t eventsFired = 0;
  double seconds = 0;
};

struct TestReport {
  std::string application;
  std::vector<TestResult> results;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t broken = 0;
  std::size_t statements = 0, statementsCovered = 0;
  std::size_t branches = 0, branchesCovered = 0;
  std::size_t handlers = 0, handlersCovered = 0;
  /// Rounded to 4 decimals.
  double statementCoverage = 0, branchCoverage = 0, handlerCoverage = 0;
  double seconds = 0; ///< wall time of the whole suite

  std::size_t total() const { return results.size(); }
};

/// Runs every test case on its own simulator, `parallelism` at a time.
/// Results keep the input order and do not depend on `parallelism`.
TestReport runSuite(const AppModel &m, const std::vector<TestCase> &tcs,
                    unsigned parallelism = 1);

/// One test case per record, except that split parts (linked by splitOf)
/// are joined into the test case of their first part.
std::vector<TestCase> testCasesFromRecords(const std::vector<SequenceRecord> &records);

/// Plain-text summary table. Times are printed only when given.
std::string formatTable(const TestReport &r, std::optional<double> genSeconds,
                        std::optional<double> execSeconds);

} // namespace greybox
