#include "fsbb/search/incumbent.hpp"

namespace fsbb {

IncumbentRegistry::IncumbentRegistry(Schedule initial)
    : best_(initial.makespan), schedule_(std::move(initial)) {}

Schedule IncumbentRegistry::best_schedule() const {
    std::lock_guard lock(mutex_);
    return schedule_;
}

bool IncumbentRegistry::offer(const Schedule& schedule) {
    return offer(schedule.makespan, schedule.permutation);
}

bool IncumbentRegistry::offer(Time makespan, std::span<const JobId> permutation) {
    if (makespan >= best_.load(std::memory_order_relaxed)) return false;
    std::lock_guard lock(mutex_);
    if (makespan >= best_.load(std::memory_order_relaxed)) return false;
    schedule_.permutation.assign(permutation.begin(), permutation.end());
    schedule_.makespan = makespan;
    best_.store(makespan, std::memory_order_release);
    return true;
}

}  // namespace fsbb
