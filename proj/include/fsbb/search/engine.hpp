#pragma once

#include "fsbb/instance.hpp"
#include "fsbb/kernel.hpp"
#include "fsbb/search/config.hpp"
#include "fsbb/search/incumbent.hpp"
#include "fsbb/search/metrics.hpp"

namespace fsbb {

struct SearchResult {
    Schedule schedule;
    /// True iff the search reached quiescence before any time limit.
    bool proven_optimal = false;
    SearchMetrics metrics;
    SkeletonConfig config_echo;

    /// Task-counter totals at exit; equal when the run completed.
    std::uint64_t task_increments = 0;
    std::uint64_t task_decrements = 0;
};

/// Exact branch-and-bound: seeds the incumbent with NEH, then runs the
/// configured coordination. Throws std::invalid_argument for a bad config and
/// std::runtime_error when the watchdog detects a stall.
SearchResult search(const Instance& inst, const SkeletonConfig& config);

/// Depth-first exploration of the subtree rooted at `node`, children in
/// ascending job order, pruning on `lower_bound >= incumbent`.
void sequential_dfs(const Kernel& kernel, const SearchNode& node, IncumbentRegistry& incumbent,
                    SearchMetrics& metrics);

}  // namespace fsbb
