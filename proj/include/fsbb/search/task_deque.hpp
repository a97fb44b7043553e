#pragma once

#include <deque>
#include <mutex>
#include <optional>

namespace fsbb {

/// Per-worker task deque. The owner pushes and pops at the back; thieves
/// take from the front, where the oldest (shallowest) tasks sit. Every task
/// pushed is handed out exactly once.
template <typename T>
class TaskDeque {
public:
    void push(T task) {
        std::lock_guard lock(mutex_);
        items_.push_back(std::move(task));
    }

    std::optional<T> pop() {
        std::lock_guard lock(mutex_);
        if (items_.empty()) return std::nullopt;
        T task = std::move(items_.back());
        items_.pop_back();
        return task;
    }

    std::optional<T> steal() {
        std::lock_guard lock(mutex_);
        if (items_.empty()) return std::nullopt;
        T task = std::move(items_.front());
        items_.pop_front();
        return task;
    }

    std::size_t size() const {
        std::lock_guard lock(mutex_);
        return items_.size();
    }

private:
    mutable std::mutex mutex_;
    std::deque<T> items_;
};

}  // namespace fsbb
