#pragma once

#include <chrono>
#include <cstdint>

namespace fsbb {

struct SearchMetrics {
    std::uint64_t nodes_visited = 0;
    std::uint64_t nodes_pruned = 0;
    std::uint64_t tasks_spawned = 0;
    std::uint64_t steals_attempted = 0;
    std::uint64_t steals_succeeded = 0;
    std::uint64_t backtracks = 0;
    std::uint64_t incumbent_updates = 0;
    std::chrono::duration<double> wall_time{0.0};

    SearchMetrics& operator+=(const SearchMetrics& other) noexcept {
        nodes_visited += other.nodes_visited;
        nodes_pruned += other.nodes_pruned;
        tasks_spawned += other.tasks_spawned;
        steals_attempted += other.steals_attempted;
        steals_succeeded += other.steals_succeeded;
        backtracks += other.backtracks;
        incumbent_updates += other.incumbent_updates;
        return *this;
    }

    /// Counters only; wall time is excluded.
    bool same_counters(const SearchMetrics& o) const noexcept {
        return nodes_visited == o.nodes_visited && nodes_pruned == o.nodes_pruned &&
               tasks_spawned == o.tasks_spawned && steals_attempted == o.steals_attempted &&
               steals_succeeded == o.steals_succeeded && backtracks == o.backtracks &&
               incumbent_updates == o.incumbent_updates;
    }
};

}  // namespace fsbb
