#pragma once

#include <atomic>
#include <cstdint>

namespace fsbb {

/// Outstanding-task counter used for quiescence detection.
///
/// Every task is registered before it becomes visible to another worker and
/// completed after its subtree (minus anything it handed off) is done, so the
/// count can only reach zero once no worker holds or can obtain work.
class TaskCounter {
public:
    void spawned(std::uint64_t n = 1) noexcept {
        increments_.fetch_add(n, std::memory_order_relaxed);
        outstanding_.fetch_add(static_cast<std::int64_t>(n), std::memory_order_acq_rel);
    }

    void completed() noexcept {
        decrements_.fetch_add(1, std::memory_order_relaxed);
        outstanding_.fetch_sub(1, std::memory_order_acq_rel);
    }

    bool quiescent() const noexcept { return outstanding_.load(std::memory_order_acquire) == 0; }
    std::int64_t outstanding() const noexcept { return outstanding_.load(std::memory_order_acquire); }

    std::uint64_t increments() const noexcept { return increments_.load(std::memory_order_relaxed); }
    std::uint64_t decrements() const noexcept { return decrements_.load(std::memory_order_relaxed); }

    /// Monotone activity measure for the watchdog.
    std::uint64_t movement() const noexcept { return increments() + decrements(); }

private:
    std::atomic<std::int64_t> outstanding_{0};
    std::atomic<std::uint64_t> increments_{0};
    std::atomic<std::uint64_t> decrements_{0};
};

}  // namespace fsbb
