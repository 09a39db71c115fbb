#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expcomm/generators.hpp"
#include "expcomm/json_io.hpp"
#include "expcomm/theorems.hpp"
#include "expcomm/tolerance.hpp"

namespace expcomm {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// Suites that `verify` knows, in the order `all` runs them.
const std::vector<std::string>& suite_names();

struct VerdictCounts {
  std::size_t confirmed = 0;
  std::size_t vacuous = 0;
  std::size_t violated = 0;
  std::size_t total() const { return confirmed + vacuous + violated; }
  void add(Verdict v);
  VerdictCounts& operator+=(const VerdictCounts& o);
};

/// A property invariant that failed on one trial.
struct PropertyFailure {
  std::string property;
  std::size_t trial = 0;
  double value = 0.0;
  double threshold = 0.0;
};

struct SuiteReport {
  std::string suite;
  GenSpec base;  // trial t uses seed base.seed + t
  std::size_t trials = 0;
  VerdictCounts counts;
  std::map<std::string, double> statistics;  // maxima over trials
  std::vector<PropertyFailure> property_failures;
  std::size_t counterexamples_found = 0;
  std::vector<CounterexampleRecord> counterexamples;  // first few only
};

struct RunReport {
  std::string command;
  std::string suite;
  ToleranceConfig tol;
  std::vector<SuiteReport> suites;
  Json extra = Json::object();  // command-specific fields (search region, ...)
  double wall_time = 0.0;

  VerdictCounts counts() const;
  std::size_t property_failure_count() const;
  bool passed() const;
};

struct VerifyOptions {
  std::string suite = "all";
  std::size_t dim = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  ToleranceConfig tol;
  unsigned jobs = 1;
};

/// Counterexample records kept per suite in a report.
inline constexpr std::size_t kMaxRecordedCounterexamples = 5;

SuiteReport run_suite(const std::string& suite, std::size_t dim, std::size_t trials,
                      std::uint64_t seed, const ToleranceConfig& tol, unsigned jobs = 1);

/// Throws PreconditionError for an unknown suite, dim outside [1, 16] or zero trials.
RunReport run_verify(const VerifyOptions& options);

struct SearchRunOptions {
  std::size_t dim = 4;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  ToleranceConfig tol;
  SearchOptions search;
};

RunReport run_search(const SearchRunOptions& options);

/// Demo cases: "2pi", "noncramped-berberian", "block-exponential".
const std::vector<std::string>& demo_names();
Json run_demo(const std::string& name, const ToleranceConfig& tol = {});
/// Human-readable narrative of a demo result.
std::string render_demo_text(const Json& demo);

Json to_json(const RunReport& report);
/// Same JSON with wall_time removed, for replay comparisons.
Json without_wall_time(Json report);
/// One "path = value" line per leaf of the JSON report; numbers are printed
/// exactly as in the JSON form.
std::string render_text(const Json& report);

/// 0 when nothing is violated and every property holds; 1 otherwise.
int exit_code(const RunReport& report);

}  // namespace expcomm
