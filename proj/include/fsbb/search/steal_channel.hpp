#pragma once

#include <atomic>
#include <cstddef>
#include <limits>

#include "fsbb/kernel.hpp"

namespace fsbb {

/// Where a thief waits for the answer to its steal request.
struct StealMailbox {
    enum State : int { Waiting, NoWork, Work };

    std::atomic<int> state{NoWork};
    SearchNode node;  // valid once state == Work

    void arm() noexcept { state.store(Waiting, std::memory_order_relaxed); }
    State poll() const noexcept { return static_cast<State>(state.load(std::memory_order_acquire)); }

    void deliver(SearchNode&& stolen) {
        node = std::move(stolen);
        state.store(Work, std::memory_order_release);
    }
    void refuse() noexcept { state.store(NoWork, std::memory_order_release); }
};

/// Single-slot request port owned by a potential victim. At most one thief
/// may have a request outstanding; the victim checks the port with one
/// relaxed load at each node-expansion boundary.
class StealPort {
public:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    /// False when another request is already pending.
    bool post(std::size_t thief) noexcept {
        std::size_t expected = kNone;
        return slot_.compare_exchange_strong(expected, thief, std::memory_order_acq_rel);
    }

    bool pending() const noexcept { return slot_.load(std::memory_order_relaxed) != kNone; }

    /// Returns the requesting thief (or kNone) and frees the slot.
    std::size_t take() noexcept { return slot_.exchange(kNone, std::memory_order_acq_rel); }

private:
    std::atomic<std::size_t> slot_{kNone};
};

}  // namespace fsbb
