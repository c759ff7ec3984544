#pragma once

// Built-in verification manifest and its runner.
//
// A target names a recipe, its parameters and the expected values, all as
// JSON objects.  A run matches iff every expected key equals the computed
// value exactly.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polarkit {

enum class Budget { Fast, Slow };

struct VerificationTarget {
    std::string id;
    Budget budget = Budget::Fast;
    std::string recipe;
    std::string params;    // JSON object
    std::string expected;  // JSON object
};

struct RunReport {
    std::string id;
    std::string computed;  // JSON object; {"error": ...} on failure
    std::string expected;
    bool match = false;
    std::optional<double> wall_time;  // seconds, only when timing was requested
};

/// The compiled-in manifest, in a fixed order.
const std::vector<VerificationTarget>& builtin_manifest();
/// Same format as the built-in manifest: a JSON list of {id, budget, recipe, params, expected}.
std::vector<VerificationTarget> parse_manifest(std::string_view text);

/// "fast", "slow", "all" or a target id.  Throws InvalidArgument for an unknown id.
std::vector<VerificationTarget> select_targets(const std::vector<VerificationTarget>& manifest,
                                               std::string_view selector);

struct RunOptions {
    unsigned threads = 0;   // per-target worker threads; 0 uses the hardware concurrency
    bool parallel = false;  // run targets concurrently
    bool timing = false;
};

RunReport run_target(const VerificationTarget& target, const RunOptions& opts = {});
/// Reports come back in the order of the targets.
std::vector<RunReport> run_targets(const std::vector<VerificationTarget>& targets, const RunOptions& opts = {});

/// One JSON object per line.
std::string reports_jsonl(const std::vector<RunReport>& reports);
/// Aligned text table with a summary line.
std::string reports_table(const std::vector<RunReport>& reports);

}  // namespace polarkit
