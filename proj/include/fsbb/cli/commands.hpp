#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fsbb/instance.hpp"
#include "fsbb/search/config.hpp"

namespace fsbb::cli {

/// Exit statuses shared by every subcommand that solves.
inline constexpr int kExitProven = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUnproven = 2;

/// Solver flags common to solve / verify / sweep / bench. The `*_set`
/// members record whether a flag was given explicitly, so flags that do not
/// apply to the chosen skeleton can be reported.
struct SolverFlags {
    std::string skeleton = "budget";
    std::size_t workers = 0;  // 0 = hardware parallelism
    std::size_t cutoff_depth = kDefaultCutoffDepth;
    bool cutoff_depth_set = false;
    std::uint64_t backtrack_budget = kDefaultBacktrackBudget;
    bool backtrack_budget_set = false;
    std::uint64_t seed = 0;
    std::optional<double> time_limit;
};

/// Builds the engine configuration; warnings for ignored flags go to `err`.
/// Throws std::invalid_argument for an unknown skeleton.
SkeletonConfig make_config(const SolverFlags& flags, std::ostream& err);

struct SolveOptions {
    std::string instance;
    SolverFlags solver;
    std::string output = "text";  // text | json
};

struct VerifyOptions {
    std::string manifest;
    SolverFlags solver;
};

struct OracleOptions {
    std::size_t count = 50;
    std::string jobs = "5-9";
    std::string machines = "3-6";
    Duration max_time = 20;
    std::uint64_t seed = 1;
    std::string out_dir;
};

struct SweepOptions {
    std::string instance;
    SolverFlags solver;
    std::string values;  // comma-separated
    std::size_t repeats = 3;
    std::string out;     // CSV path; empty = stdout
};

struct BenchOptions {
    std::string manifest;
    std::string skeletons = "seq,depthbounded,budget,stackstealing";
    std::string workers = "1";
    std::size_t repeats = 3;
    std::size_t baseline_workers = 1;
    SolverFlags solver;  // skeleton and workers are taken from the lists above
    std::string out;     // CSV path; empty = none
    std::string summary_json;
};

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err);
int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err);
int run_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err);
int run_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int run_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);

/// "5-9" -> {5, 9}; "7" -> {7, 7}.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text);

/// Splits a comma-separated list, dropping empty items.
std::vector<std::string> split_list(const std::string& text);

}  // namespace fsbb::cli
