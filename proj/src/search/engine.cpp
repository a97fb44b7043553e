#include "fsbb/search/engine.hpp"

#include <algorithm>
#include <condition_variable>
#include <limits>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "fsbb/search/steal_channel.hpp"
#include "fsbb/search/task_deque.hpp"
#include "fsbb/search/termination.hpp"

namespace fsbb {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kCheckMask = 1023;  // stop/deadline poll period, in visits

enum class Phase : int { Idle, Working, Stealing, Done };

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Idle: return "idle";
        case Phase::Working: return "working";
        case Phase::Stealing: return "stealing";
        case Phase::Done: return "done";
    }
    return "?";
}

/// Exponential idle backoff: yields first, then sleeps up to 1 ms so idle
/// workers do not starve busy ones on oversubscribed cores.
class Backoff {
public:
    void reset() noexcept { rounds_ = 0; }
    void pause() {
        if (rounds_ < 8) {
            std::this_thread::yield();
        } else {
            const auto shift = std::min<unsigned>(rounds_ - 8, 7);
            std::this_thread::sleep_for(std::chrono::microseconds(8u << shift));
        }
        ++rounds_;
    }

private:
    unsigned rounds_ = 0;
};

struct Worker {
    std::size_t index = 0;
    IncumbentRegistry* incumbent = nullptr;
    TaskDeque<SearchNode> deque;
    StealPort port;
    StealMailbox mailbox;
    SearchMetrics metrics;
    std::mt19937_64 rng;
    std::atomic<std::uint64_t> heartbeat{0};
    std::atomic<Phase> phase{Phase::Idle};
};

struct Shared {
    Shared(const Kernel& k, const SkeletonConfig& c) : kernel(k), config(c) {
        if (config.time_limit) {
            deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(*config.time_limit);
        }
    }

    const Kernel& kernel;
    const SkeletonConfig& config;
    TaskCounter tasks;
    std::atomic<bool> stop{false};
    std::optional<Clock::time_point> deadline;
    std::vector<std::unique_ptr<Worker>> workers;
    std::mutex trace_mutex;

    void trace(const TraceEvent& event) {
        if (!config.trace) return;
        std::lock_guard lock(trace_mutex);
        config.trace(event);
    }

    bool stopping() const noexcept { return stop.load(std::memory_order_relaxed); }
};

/// Depth-first explorer over an explicit frame stack. One per worker; frames
/// are allocated once and their nodes reused, so the hot loop does not touch
/// the heap once buffers have grown.
class Explorer {
public:
    enum class Visit { Leaf, Pruned, Expand };

    Explorer(Shared& shared, Worker& self)
        : shared_(shared), kernel_(shared.kernel), self_(self), metrics_(self.metrics),
          frames_(kernel_.num_jobs() + 1),
          serve_steals_(shared.config.coordination == Coordination::StackStealing) {}

    Visit visit(const SearchNode& node) {
        ++metrics_.nodes_visited;
        if ((metrics_.nodes_visited & kCheckMask) == 0) checkpoint();
        if (node.is_complete()) {
            offer(node);
            return Visit::Leaf;
        }
        if (node.lower_bound() >= self_.incumbent->best_makespan()) {
            ++metrics_.nodes_pruned;
            return Visit::Pruned;
        }
        return Visit::Expand;
    }

    /// Explores the subtree under `root`. With a finite budget, spills the
    /// remaining stack to the worker's deque after that many backtracks.
    /// Returns false when interrupted by the stop flag.
    bool explore(const SearchNode& root, std::uint64_t budget) {
        if (shared_.stopping()) return false;
        if (visit(root) != Visit::Expand) return true;

        frames_[0].node = root;
        frames_[0].children.reset(kernel_, frames_[0].node);
        std::size_t top = 1;
        std::uint64_t task_backtracks = 0;

        while (top > 0) {
            if (shared_.stopping()) return false;
            if (serve_steals_ && self_.port.pending()) serve_steal(top);

            Frame& frame = frames_[top - 1];
            if (frame.children.has_next()) {
                // Same decisions as visit(), taken on the child's bound before
                // the child is built; only survivors are materialised.
                const Time bound = frame.children.peek_bound();
                ++metrics_.nodes_visited;
                if ((metrics_.nodes_visited & kCheckMask) == 0) checkpoint();
                const Time best = self_.incumbent->best_makespan();
                if (frame.node.depth() + 1 == kernel_.num_jobs()) {
                    if (bound < best) {
                        Frame& child = frames_[top];
                        frame.children.next(child.node);
                        offer(child.node);
                    } else {
                        frame.children.skip();
                    }
                } else if (bound >= best) {
                    ++metrics_.nodes_pruned;
                    frame.children.skip();
                } else {
                    Frame& child = frames_[top];
                    frame.children.next(child.node);
                    child.children.reset(kernel_, child.node);
                    ++top;
                }
            } else {
                --top;
                ++metrics_.backtracks;
                if (++task_backtracks >= budget && top > 0) {
                    spill(top);
                    return true;
                }
            }
        }
        return true;
    }

    /// Answers a pending steal request with the shallowest unexplored
    /// alternative on the stack, or no-work.
    void serve_steal(std::size_t top) {
        const std::size_t thief = self_.port.take();
        if (thief == StealPort::kNone) return;
        Worker& to = *shared_.workers[thief];
        for (std::size_t i = 0; i < top; ++i) {
            if (frames_[i].children.has_next()) {
                SearchNode stolen;
                frames_[i].children.next(stolen);
                shared_.tasks.spawned();
                ++metrics_.tasks_spawned;
                shared_.trace({TraceEvent::Kind::Spawn, self_.index, 0, &stolen});
                to.mailbox.deliver(std::move(stolen));
                return;
            }
        }
        to.mailbox.refuse();
    }

private:
    struct Frame {
        SearchNode node;
        ChildGenerator children;
    };

    void offer(const SearchNode& leaf) {
        if (self_.incumbent->offer(leaf.lower_bound(), leaf.jobs())) {
            ++metrics_.incumbent_updates;
            shared_.trace({TraceEvent::Kind::IncumbentUpdate, self_.index, leaf.lower_bound()});
        }
    }

    void checkpoint() {
        self_.heartbeat.store(metrics_.nodes_visited, std::memory_order_relaxed);
        if (shared_.deadline && Clock::now() >= *shared_.deadline) {
            shared_.stop.store(true, std::memory_order_relaxed);
        }
    }

    // Frames are pushed shallowest first and, within a frame, in reverse
    // child order: the owner's LIFO pops then replay the sequential order
    // while thieves take the shallowest work from the front.
    void spill(std::size_t top) {
        std::vector<SearchNode> batch;
        std::uint64_t spilled = 0;
        for (std::size_t i = 0; i < top; ++i) {
            batch.clear();
            while (frames_[i].children.has_next()) batch.push_back(frames_[i].children.next());
            if (batch.empty()) continue;
            shared_.tasks.spawned(batch.size());
            spilled += batch.size();
            for (auto it = batch.rbegin(); it != batch.rend(); ++it) self_.deque.push(std::move(*it));
        }
        metrics_.tasks_spawned += spilled;
        shared_.trace({TraceEvent::Kind::Spill, self_.index, spilled});
    }

    Shared& shared_;
    const Kernel& kernel_;
    Worker& self_;
    SearchMetrics& metrics_;
    std::vector<Frame> frames_;
    bool serve_steals_;
};

std::size_t pick_victim(Worker& self, std::size_t num_workers) {
    std::size_t victim = self.rng() % (num_workers - 1);
    if (victim >= self.index) ++victim;
    return victim;
}

// DepthBounded and Budget: tasks live in per-worker deques; idle workers
// steal from uniformly random victims.
class DequeCoordinator {
public:
    DequeCoordinator(Shared& shared, Worker& self) : shared_(shared), self_(self), explorer_(shared, self) {}

    void run() {
        const std::size_t num_workers = shared_.workers.size();
        Backoff backoff;
        while (!shared_.stopping()) {
            if (auto task = self_.deque.pop()) {
                run_task(*task);
                backoff.reset();
                continue;
            }
            if (shared_.tasks.quiescent()) break;
            if (num_workers > 1) {
                self_.phase.store(Phase::Stealing, std::memory_order_relaxed);
                const std::size_t victim = pick_victim(self_, num_workers);
                ++self_.metrics.steals_attempted;
                if (auto task = shared_.workers[victim]->deque.steal()) {
                    ++self_.metrics.steals_succeeded;
                    shared_.trace({TraceEvent::Kind::Steal, self_.index, victim});
                    run_task(*task);
                    backoff.reset();
                    continue;
                }
            }
            self_.phase.store(Phase::Idle, std::memory_order_relaxed);
            backoff.pause();
        }
    }

private:
    void run_task(const SearchNode& node) {
        self_.phase.store(Phase::Working, std::memory_order_relaxed);
        self_.heartbeat.store(self_.metrics.nodes_visited, std::memory_order_relaxed);
        shared_.trace({TraceEvent::Kind::TaskStart, self_.index, 0, &node});
        const auto& config = shared_.config;
        bool finished = true;
        if (config.coordination == Coordination::DepthBounded && node.depth() < *config.cutoff_depth) {
            if (shared_.stopping()) {
                finished = false;
            } else if (explorer_.visit(node) == Explorer::Visit::Expand) {
                spawn_children(node);
            }
        } else {
            const std::uint64_t budget = config.coordination == Coordination::Budget
                                             ? *config.backtrack_budget
                                             : kUnlimited;
            finished = explorer_.explore(node, budget);
        }
        if (finished) shared_.tasks.completed();
        self_.phase.store(Phase::Idle, std::memory_order_relaxed);
    }

    // Children that are already prunable are counted as visited here and
    // never become tasks.
    void spawn_children(const SearchNode& node) {
        auto& metrics = self_.metrics;
        std::vector<SearchNode> spawned;
        auto children = ChildGenerator(shared_.kernel, node);
        while (children.has_next()) {
            SearchNode child = children.next();
            if (!child.is_complete() && child.lower_bound() >= self_.incumbent->best_makespan()) {
                ++metrics.nodes_visited;
                ++metrics.nodes_pruned;
                continue;
            }
            spawned.push_back(std::move(child));
        }
        ++metrics.backtracks;
        if (spawned.empty()) return;
        shared_.tasks.spawned(spawned.size());
        metrics.tasks_spawned += spawned.size();
        for (auto it = spawned.rbegin(); it != spawned.rend(); ++it) {
            shared_.trace({TraceEvent::Kind::Spawn, self_.index, 0, &*it});
            self_.deque.push(std::move(*it));
        }
    }

    Shared& shared_;
    Worker& self_;
    Explorer explorer_;
};

// StackStealing: each worker runs one task at a time on its explicit stack;
// idle workers post a request to a random victim and wait for the reply.
class StackStealingCoordinator {
public:
    StackStealingCoordinator(Shared& shared, Worker& self)
        : shared_(shared), self_(self), explorer_(shared, self) {}

    void run(std::optional<SearchNode> task) {
        const std::size_t num_workers = shared_.workers.size();
        Backoff backoff;
        while (!shared_.stopping()) {
            if (task) {
                self_.phase.store(Phase::Working, std::memory_order_relaxed);
                shared_.trace({TraceEvent::Kind::TaskStart, self_.index, 0, &*task});
                const bool finished = explorer_.explore(*task, kUnlimited);
                task.reset();
                if (finished) shared_.tasks.completed();
                self_.phase.store(Phase::Idle, std::memory_order_relaxed);
                backoff.reset();
                continue;
            }
            refuse_pending();
            if (shared_.tasks.quiescent() || num_workers == 1) break;

            self_.phase.store(Phase::Stealing, std::memory_order_relaxed);
            const std::size_t victim = pick_victim(self_, num_workers);
            ++self_.metrics.steals_attempted;
            self_.mailbox.arm();
            if (shared_.workers[victim]->port.post(self_.index)) {
                const auto reply = await_reply();
                if (reply == StealMailbox::Work) {
                    ++self_.metrics.steals_succeeded;
                    shared_.trace({TraceEvent::Kind::Steal, self_.index, victim});
                    task = std::move(self_.mailbox.node);
                    continue;
                }
            }
            self_.phase.store(Phase::Idle, std::memory_order_relaxed);
            backoff.pause();
        }
        refuse_pending();
    }

private:
    void refuse_pending() {
        const std::size_t thief = self_.port.take();
        if (thief != StealPort::kNone) shared_.workers[thief]->mailbox.refuse();
    }

    StealMailbox::State await_reply() {
        unsigned spins = 0;
        while (true) {
            const auto state = self_.mailbox.poll();
            if (state != StealMailbox::Waiting) return state;
            refuse_pending();
            if (shared_.tasks.quiescent() || shared_.stopping()) return StealMailbox::NoWork;
            if (++spins < 64) {
                std::this_thread::yield();
            } else {
                std::this_thread::sleep_for(std::chrono::microseconds(20));
            }
        }
    }

    Shared& shared_;
    Worker& self_;
    Explorer explorer_;
};

std::string diagnostic_dump(const Shared& shared) {
    std::ostringstream out;
    out << "search watchdog: no progress for " << shared.config.watchdog_interval.count()
        << " s; outstanding tasks " << shared.tasks.outstanding() << " (+" << shared.tasks.increments()
        << "/-" << shared.tasks.decrements() << ")\n";
    for (const auto& w : shared.workers) {
        out << "  worker " << w->index << ": " << phase_name(w->phase.load())
            << ", heartbeat " << w->heartbeat.load() << ", deque " << w->deque.size()
            << ", request " << (w->port.pending() ? "pending" : "none") << '\n';
    }
    return out.str();
}

void run_parallel(Shared& shared, const SearchNode& root) {
    const std::size_t num_workers = shared.workers.size();
    const bool stack_stealing = shared.config.coordination == Coordination::StackStealing;

    shared.tasks.spawned();
    if (!stack_stealing) shared.workers[0]->deque.push(root);

    std::mutex done_mutex;
    std::condition_variable done_cv;
    std::size_t finished = 0;
    std::exception_ptr failure;

    std::vector<std::thread> threads;
    threads.reserve(num_workers);
    for (std::size_t i = 0; i < num_workers; ++i) {
        threads.emplace_back([&, i] {
            Worker& self = *shared.workers[i];
            try {
                if (stack_stealing) {
                    StackStealingCoordinator(shared, self).run(i == 0 ? std::optional(root) : std::nullopt);
                } else {
                    DequeCoordinator(shared, self).run();
                }
            } catch (...) {
                std::lock_guard lock(done_mutex);
                if (!failure) failure = std::current_exception();
                shared.stop.store(true);
            }
            self.phase.store(Phase::Done, std::memory_order_relaxed);
            std::lock_guard lock(done_mutex);
            ++finished;
            done_cv.notify_one();
        });
    }

    auto progress = [&] {
        std::uint64_t p = shared.tasks.movement();
        for (const auto& w : shared.workers) p += w->heartbeat.load(std::memory_order_relaxed);
        return p;
    };

    std::string stall;
    std::uint64_t last_progress = progress();
    auto last_change = Clock::now();
    {
        std::unique_lock lock(done_mutex);
        while (finished < num_workers) {
            done_cv.wait_for(lock, std::chrono::milliseconds(10));
            const auto now = Clock::now();
            if (shared.deadline && now >= *shared.deadline) shared.stop.store(true);
            const auto p = progress();
            if (p != last_progress) {
                last_progress = p;
                last_change = now;
            } else if (stall.empty() && !shared.stopping() && now - last_change > shared.config.watchdog_interval) {
                stall = diagnostic_dump(shared);
                shared.stop.store(true);
            }
        }
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    if (!stall.empty()) throw std::runtime_error(stall);
}

}  // namespace

void sequential_dfs(const Kernel& kernel, const SearchNode& node, IncumbentRegistry& incumbent,
                    SearchMetrics& metrics) {
    const auto config = SkeletonConfig::sequential();
    Shared shared(kernel, config);
    Worker self;
    self.incumbent = &incumbent;
    Explorer(shared, self).explore(node, kUnlimited);
    metrics += self.metrics;
}

SearchResult search(const Instance& inst, const SkeletonConfig& requested) {
    const SkeletonConfig config = validated(requested);
    const auto start = Clock::now();

    const Kernel kernel(inst);
    const Schedule initial = neh_upper_bound(inst);
    const SearchNode root = kernel.root();

    Shared shared(kernel, config);
    const std::size_t num_workers = config.workers;
    const std::size_t num_registries = config.share_incumbent ? 1 : num_workers;
    std::vector<std::unique_ptr<IncumbentRegistry>> registries;
    for (std::size_t i = 0; i < num_registries; ++i) {
        registries.push_back(std::make_unique<IncumbentRegistry>(initial));
    }
    for (std::size_t i = 0; i < num_workers; ++i) {
        auto w = std::make_unique<Worker>();
        w->index = i;
        w->incumbent = registries[config.share_incumbent ? 0 : i].get();
        w->rng.seed(config.rng_seed + i);
        shared.workers.push_back(std::move(w));
    }

    if (config.coordination == Coordination::Sequential) {
        Worker& self = *shared.workers[0];
        shared.tasks.spawned();
        shared.trace({TraceEvent::Kind::TaskStart, 0, 0, &root});
        if (Explorer(shared, self).explore(root, kUnlimited)) shared.tasks.completed();
    } else {
        run_parallel(shared, root);
    }

    SearchResult result;
    result.schedule = registries.front()->best_schedule();
    for (const auto& r : registries) {
        if (r->best_makespan() < result.schedule.makespan) result.schedule = r->best_schedule();
    }
    result.proven_optimal = shared.tasks.quiescent();
    for (const auto& w : shared.workers) result.metrics += w->metrics;
    result.metrics.wall_time = Clock::now() - start;
    result.config_echo = config;
    result.task_increments = shared.tasks.increments();
    result.task_decrements = shared.tasks.decrements();
    return result;
}

}  // namespace fsbb
