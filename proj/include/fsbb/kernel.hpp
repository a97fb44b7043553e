#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "fsbb/instance.hpp"

namespace fsbb {

struct Schedule {
    std::vector<JobId> permutation;
    Time makespan = 0;

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

/// Makespan of a complete job order. Throws std::invalid_argument unless
/// `permutation` is a permutation of {0..n-1}.
Time evaluate_makespan(const Instance& inst, std::span<const JobId> permutation);

/// Per-machine completion times of a scheduled prefix. All zeros when empty.
std::vector<Time> forward_completion(const Instance& inst, std::span<const JobId> prefix);

/// Per-machine tail times of a scheduled suffix given in reverse execution
/// order (`suffix_rev[0]` runs last): b_k is the time from machine k becoming
/// free for the first suffix job until the suffix completes on the last
/// machine. All zeros when empty.
std::vector<Time> backward_tail(const Instance& inst, std::span<const JobId> suffix_rev);

class Kernel;

/// Per-machine minimum and runner-up of the tail sums over a node's
/// unscheduled jobs. Lets a child's bound be evaluated in O(m): removing one
/// job only matters on machines where it is the unique minimum holder.
struct TailMinima {
    std::vector<Time> first;
    std::vector<Time> second;
    std::vector<JobId> argmin;
};

/// Two-sided partial schedule: a prefix that runs first, a suffix that runs
/// last, and the unscheduled jobs between them.
///
/// Storage is one job array laid out as [prefix | unscheduled ascending |
/// suffix in execution order] plus the cached per-machine front, back and
/// remaining-work sums. Nodes are plain values; copying into an existing node
/// reuses its buffers.
class SearchNode {
public:
    SearchNode() = default;

    std::span<const JobId> sigma1() const noexcept { return {jobs_.data(), prefix_len_}; }

    /// Suffix in execution order.
    std::span<const JobId> sigma2() const noexcept {
        return {jobs_.data() + jobs_.size() - suffix_len_, suffix_len_};
    }

    /// Suffix in discovery order: element 0 is the job that executes last.
    std::vector<JobId> sigma2_rev() const;

    /// Unscheduled jobs, ascending.
    std::span<const JobId> unscheduled() const noexcept {
        return {jobs_.data() + prefix_len_, jobs_.size() - prefix_len_ - suffix_len_};
    }

    std::size_t depth() const noexcept { return prefix_len_ + suffix_len_; }
    std::size_t num_jobs() const noexcept { return jobs_.size(); }
    bool is_complete() const noexcept { return depth() == jobs_.size(); }

    std::span<const Time> front() const noexcept { return {times_.data(), num_machines()}; }
    std::span<const Time> back() const noexcept {
        return {times_.data() + num_machines(), num_machines()};
    }
    /// Per-machine sum of processing times over the unscheduled jobs.
    std::span<const Time> remaining_work() const noexcept {
        return {times_.data() + 2 * num_machines(), num_machines()};
    }

    Time lower_bound() const noexcept { return lower_bound_; }

    /// Full job order (prefix then suffix). Only meaningful when complete.
    std::span<const JobId> jobs() const noexcept { return jobs_; }

    friend bool operator==(const SearchNode&, const SearchNode&) = default;

private:
    friend class Kernel;

    std::size_t num_machines() const noexcept { return times_.size() / 3; }

    std::vector<JobId> jobs_;
    std::vector<Time> times_;
    std::size_t prefix_len_ = 0;
    std::size_t suffix_len_ = 0;
    Time lower_bound_ = 0;
};

std::ostream& operator<<(std::ostream& out, const SearchNode& node);
std::ostream& operator<<(std::ostream& out, const Schedule& schedule);

/// One-machine lower bound evaluated from the node's front/back times and
/// unscheduled set, straight from the instance data:
///
///   max_k  f_k + sum_{j in U} p[j][k] + max(min_{j in U} sum_{l>k} p[j][l], b_k)
///
/// With U empty this is max_k (f_k + b_k), the exact makespan.
Time one_machine_bound(const Instance& inst, const SearchNode& node);

/// Per-instance tables and node construction for the branch-and-bound tree.
///
/// Branching follows the alternate rule: the child at odd depth appends its
/// job to the prefix, the child at even depth prepends it to the suffix.
/// Children of a node are produced one at a time in ascending job order.
class Kernel {
public:
    explicit Kernel(const Instance& inst);
    Kernel(Instance&&) = delete;  // keeps a pointer to the instance

    const Instance& instance() const noexcept { return *inst_; }
    std::size_t num_jobs() const noexcept { return n_; }
    std::size_t num_machines() const noexcept { return m_; }

    SearchNode root() const;

    /// Builds a node from explicit prefix / reversed suffix. Throws
    /// std::invalid_argument on bad or duplicate job indices.
    SearchNode make_node(std::span<const JobId> sigma1, std::span<const JobId> sigma2_rev) const;

    /// Writes the child that schedules `parent.unscheduled()[index]` into
    /// `out`, reusing `out`'s storage.
    void make_child(const SearchNode& parent, std::size_t index, SearchNode& out) const;

    void compute_tail_minima(const SearchNode& parent, TailMinima& out) const;

    /// Bound of the child `index` of `parent` without building it. `scratch`
    /// needs num_machines() entries.
    Time child_bound(const SearchNode& parent, std::size_t index, const TailMinima& minima,
                     std::span<Time> scratch) const noexcept;

    /// make_child with the bound already known.
    void build_child(const SearchNode& parent, std::size_t index, Time bound, SearchNode& out) const;

    /// Bound from the node's cached sums, using the precomputed tail table.
    Time bound(const SearchNode& node) const noexcept;

    /// sum_{l > k} p[job][l]
    Time tail(JobId job, std::size_t machine) const noexcept { return tails_[job * m_ + machine]; }

    /// Permutation and makespan of a complete node.
    Schedule schedule_of(const SearchNode& node) const;

private:
    Time compute_bound(std::span<const Time> front, std::span<const Time> back,
                       std::span<const Time> remaining, std::span<const JobId> unscheduled) const noexcept;

    const Instance* inst_;
    std::size_t n_;
    std::size_t m_;
    std::vector<Time> tails_;
};

/// Lazy child producer for one node. Holds pointers to the kernel and the
/// parent, both of which must outlive it. `reset` rebinds a generator while
/// keeping its buffers.
class ChildGenerator {
public:
    ChildGenerator() = default;
    ChildGenerator(const Kernel& kernel, const SearchNode& parent) { reset(kernel, parent); }
    ChildGenerator(const Kernel&, SearchNode&&) = delete;

    void reset(const Kernel& kernel, const SearchNode& parent);

    bool has_next() const noexcept { return parent_ != nullptr && next_ < parent_->unscheduled().size(); }
    std::size_t remaining() const noexcept {
        return parent_ == nullptr ? 0 : parent_->unscheduled().size() - next_;
    }

    /// Job the next child will schedule. Precondition: has_next().
    JobId peek_job() const noexcept { return parent_->unscheduled()[next_]; }

    /// Bound of the next child, computed without building it.
    Time peek_bound();

    /// Produces the next child into `out`. Precondition: has_next().
    void next(SearchNode& out);

    SearchNode next() {
        SearchNode child;
        next(child);
        return child;
    }

    /// Drops the next child without building it.
    void skip() noexcept { ++next_; }

private:
    void ensure_minima();

    const Kernel* kernel_ = nullptr;
    const SearchNode* parent_ = nullptr;
    std::size_t next_ = 0;
    bool have_minima_ = false;
    std::size_t peeked_index_ = static_cast<std::size_t>(-1);
    Time peeked_bound_ = 0;
    TailMinima minima_;
    std::vector<Time> scratch_;
};

/// Children of `node` in branching order. Throws std::logic_error when the
/// node is complete.
ChildGenerator branch(const Kernel& kernel, const SearchNode& node);
ChildGenerator branch(const Kernel&, SearchNode&&) = delete;

/// NEH constructive heuristic. Jobs are taken by decreasing total processing
/// time (ties: lower index first) and each is inserted at the position giving
/// the smallest partial makespan (ties: earliest position).
Schedule neh_upper_bound(const Instance& inst);

inline constexpr std::size_t kExhaustiveMaxJobs = 10;

/// Enumerates all n! orders; returns the lexicographically smallest optimal
/// permutation. Throws std::invalid_argument when n > kExhaustiveMaxJobs.
Schedule exhaustive_search(const Instance& inst);

}  // namespace fsbb
