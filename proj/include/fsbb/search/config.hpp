#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace fsbb {

class SearchNode;

enum class Coordination { Sequential, DepthBounded, Budget, StackStealing };

std::string_view to_string(Coordination c) noexcept;

/// Accepts the CLI spellings: seq|sequential, depthbounded, budget, stackstealing.
std::optional<Coordination> parse_coordination(std::string_view text) noexcept;

inline constexpr std::size_t kDefaultCutoffDepth = 5;
inline constexpr std::uint64_t kDefaultBacktrackBudget = 50'000;

/// One record of the optional engine trace.
struct TraceEvent {
    enum class Kind { TaskStart, Spawn, Spill, Steal, IncumbentUpdate };
    Kind kind;
    std::size_t worker;
    /// Steal: victim index. Spill: number of tasks created. IncumbentUpdate:
    /// the new makespan. Otherwise 0.
    std::uint64_t value = 0;
    /// TaskStart / Spawn: the task root. Only valid during the callback.
    const SearchNode* node = nullptr;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct SkeletonConfig {
    Coordination coordination = Coordination::Sequential;
    std::size_t workers = 1;
    std::optional<std::size_t> cutoff_depth;        // DepthBounded only
    std::optional<std::uint64_t> backtrack_budget;  // Budget only
    std::uint64_t rng_seed = 0;
    std::optional<std::chrono::duration<double>> time_limit;

    /// When false every worker keeps a private incumbent; the result is the
    /// best of them. Only the node counts change.
    bool share_incumbent = true;

    /// Parallel modes abort with a per-worker dump when neither the task
    /// counter nor any node-visit counter moves for this long.
    std::chrono::duration<double> watchdog_interval{120.0};

    /// Serialised by the engine; disabled when empty.
    TraceSink trace;

    static SkeletonConfig sequential();
    static SkeletonConfig depth_bounded(std::size_t cutoff, std::size_t workers);
    static SkeletonConfig budget(std::uint64_t backtracks, std::size_t workers);
    static SkeletonConfig stack_stealing(std::size_t workers);
};

/// Throws std::invalid_argument on inconsistent settings. Returns a copy with
/// Sequential normalised to one worker.
SkeletonConfig validated(const SkeletonConfig& config);

}  // namespace fsbb
