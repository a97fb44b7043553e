#pragma once

#include <atomic>
#include <mutex>

#include "fsbb/kernel.hpp"

namespace fsbb {

/// Shared best-known solution. The makespan only ever decreases; the stored
/// schedule always matches it.
///
/// Reads of the bound are a single relaxed atomic load so workers can poll it
/// on every expansion. Offers that cannot improve return without locking.
class IncumbentRegistry {
public:
    explicit IncumbentRegistry(Schedule initial);

    IncumbentRegistry(const IncumbentRegistry&) = delete;
    IncumbentRegistry& operator=(const IncumbentRegistry&) = delete;

    Time best_makespan() const noexcept { return best_.load(std::memory_order_relaxed); }

    Schedule best_schedule() const;

    /// Installs `schedule` iff its makespan is strictly below the current one.
    bool offer(const Schedule& schedule);

    /// Same, building the schedule only when it will be accepted.
    bool offer(Time makespan, std::span<const JobId> permutation);

private:
    std::atomic<Time> best_;
    mutable std::mutex mutex_;
    Schedule schedule_;
};

}  // namespace fsbb
