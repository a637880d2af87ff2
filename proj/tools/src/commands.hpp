#pragma once

#include "cache.hpp"
#include "config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace htype::cli {

/// Exit statuses of the tool.
enum ExitCode : int { kSuccess = 0, kVerifyFailure = 1, kConfigError = 2, kNumericalFailure = 3 };

/// Commands whose results are content-addressed in the cache.
const std::vector<std::string>& cached_commands();

/// Cache-key inputs of a command: the config subset it reads.
json command_inputs(const std::string& command, const RunConfig& cfg);

/// Fresh computation of a cached command's result document.
json compute(const std::string& command, const RunConfig& cfg);

struct CachedResult {
    std::string key;
    std::string bytes;  // canonical JSON, identical on every hit
    bool hit = false;
};
/// Cache lookup with transparent recomputation on a miss.
CachedResult fetch(const std::string& command, const RunConfig& cfg, ResultCache& cache);

/// Writes <out>/<command>.json (and .csv where the command has a table); returns the exit code the
/// result implies (e.g. isospec mismatches map to kVerifyFailure).
int emit(const std::string& command, const CachedResult& result, const RunConfig& cfg, std::ostream& log);

/// Runs the selected verification suites; writes <out>/verify.json.
int run_verify(const RunConfig& cfg, std::ostream& log);

/// Digest over the configured commands: <out>/report.md and <out>/report.json.
int run_report(const RunConfig& cfg, ResultCache& cache, std::ostream& log);

/// CSV rendering of a result document; empty when the command has no table.
std::string result_csv(const std::string& command, const json& result);

/// Markdown section for one result document.
std::string result_markdown(const std::string& command, const json& result);

}  // namespace htype::cli
