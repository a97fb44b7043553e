#include "fsbb/kernel.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fsbb {

namespace {

void check_job_list(const Instance& inst, std::span<const JobId> jobs, std::vector<char>& seen,
                    const char* what) {
    for (JobId j : jobs) {
        if (j >= inst.num_jobs()) {
            throw std::invalid_argument(std::string(what) + ": job index " + std::to_string(j) +
                                        " out of range");
        }
        if (seen[j]) {
            throw std::invalid_argument(std::string(what) + ": duplicate job " + std::to_string(j));
        }
        seen[j] = 1;
    }
}

// Makespan recurrence on an arbitrary duplicate-free job list.
Time partial_makespan(const Instance& inst, std::span<const JobId> seq, std::vector<Time>& completion) {
    const std::size_t m = inst.num_machines();
    completion.assign(m, 0);
    for (JobId j : seq) {
        const auto row = inst.job_row(j);
        Time prev = 0;
        for (std::size_t k = 0; k < m; ++k) {
            prev = std::max(prev, completion[k]) + row[k];
            completion[k] = prev;
        }
    }
    return completion.back();
}

}  // namespace

Time evaluate_makespan(const Instance& inst, std::span<const JobId> permutation) {
    if (permutation.size() != inst.num_jobs()) {
        throw std::invalid_argument("permutation has " + std::to_string(permutation.size()) +
                                    " jobs, expected " + std::to_string(inst.num_jobs()));
    }
    std::vector<char> seen(inst.num_jobs(), 0);
    check_job_list(inst, permutation, seen, "permutation");
    std::vector<Time> completion;
    return partial_makespan(inst, permutation, completion);
}

std::vector<Time> forward_completion(const Instance& inst, std::span<const JobId> prefix) {
    std::vector<char> seen(inst.num_jobs(), 0);
    check_job_list(inst, prefix, seen, "prefix");
    std::vector<Time> completion;
    partial_makespan(inst, prefix, completion);
    return completion;
}

std::vector<Time> backward_tail(const Instance& inst, std::span<const JobId> suffix_rev) {
    std::vector<char> seen(inst.num_jobs(), 0);
    check_job_list(inst, suffix_rev, seen, "suffix");
    const std::size_t m = inst.num_machines();
    std::vector<Time> tail(m, 0);
    // Mirror recurrence: last job first, last machine first.
    for (JobId j : suffix_rev) {
        const auto row = inst.job_row(j);
        Time next = 0;
        for (std::size_t k = m; k-- > 0;) {
            next = std::max(next, tail[k]) + row[k];
            tail[k] = next;
        }
    }
    return tail;
}

std::vector<JobId> SearchNode::sigma2_rev() const {
    const auto s = sigma2();
    return {s.rbegin(), s.rend()};
}

std::ostream& operator<<(std::ostream& out, const SearchNode& node) {
    auto print = [&out](std::span<const JobId> jobs) {
        out << '[';
        for (std::size_t i = 0; i < jobs.size(); ++i) out << (i ? " " : "") << jobs[i];
        out << ']';
    };
    out << "node{depth=" << node.depth() << " sigma1=";
    print(node.sigma1());
    out << " unscheduled=";
    print(node.unscheduled());
    out << " sigma2=";
    print(node.sigma2());
    out << " lb=" << node.lower_bound() << '}';
    return out;
}

std::ostream& operator<<(std::ostream& out, const Schedule& schedule) {
    out << "makespan " << schedule.makespan << " [";
    for (std::size_t i = 0; i < schedule.permutation.size(); ++i) {
        out << (i ? " " : "") << schedule.permutation[i];
    }
    return out << ']';
}

Time one_machine_bound(const Instance& inst, const SearchNode& node) {
    const std::size_t m = inst.num_machines();
    const auto unscheduled = node.unscheduled();
    const auto front = node.front();
    const auto back = node.back();
    Time bound = 0;
    for (std::size_t k = 0; k < m; ++k) {
        Time work = 0;
        Time min_tail = unscheduled.empty() ? 0 : std::numeric_limits<Time>::max();
        for (JobId j : unscheduled) {
            work += inst.proc(j, k);
            Time tail = 0;
            for (std::size_t l = k + 1; l < m; ++l) tail += inst.proc(j, l);
            min_tail = std::min(min_tail, tail);
        }
        bound = std::max(bound, front[k] + work + std::max(min_tail, back[k]));
    }
    return bound;
}

Kernel::Kernel(const Instance& inst)
    : inst_(&inst), n_(inst.num_jobs()), m_(inst.num_machines()), tails_(n_ * m_, 0) {
    for (JobId j = 0; j < n_; ++j) {
        Time acc = 0;
        for (std::size_t k = m_; k-- > 0;) {
            tails_[j * m_ + k] = acc;
            acc += inst.proc(j, k);
        }
    }
}

SearchNode Kernel::root() const {
    SearchNode node;
    node.jobs_.resize(n_);
    std::iota(node.jobs_.begin(), node.jobs_.end(), JobId{0});
    node.times_.assign(3 * m_, 0);
    Time* remaining = node.times_.data() + 2 * m_;
    for (JobId j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < m_; ++k) remaining[k] += inst_->proc(j, k);
    }
    node.lower_bound_ = bound(node);
    return node;
}

SearchNode Kernel::make_node(std::span<const JobId> sigma1, std::span<const JobId> sigma2_rev) const {
    std::vector<char> seen(n_, 0);
    check_job_list(*inst_, sigma1, seen, "sigma1");
    check_job_list(*inst_, sigma2_rev, seen, "sigma2");

    SearchNode node;
    node.jobs_.reserve(n_);
    node.jobs_.assign(sigma1.begin(), sigma1.end());
    for (JobId j = 0; j < n_; ++j) {
        if (!seen[j]) node.jobs_.push_back(j);
    }
    node.jobs_.insert(node.jobs_.end(), sigma2_rev.rbegin(), sigma2_rev.rend());
    node.prefix_len_ = sigma1.size();
    node.suffix_len_ = sigma2_rev.size();

    const auto front = forward_completion(*inst_, sigma1);
    const auto back = backward_tail(*inst_, sigma2_rev);
    node.times_.assign(3 * m_, 0);
    std::copy(front.begin(), front.end(), node.times_.begin());
    std::copy(back.begin(), back.end(), node.times_.begin() + m_);
    for (JobId j : node.unscheduled()) {
        for (std::size_t k = 0; k < m_; ++k) node.times_[2 * m_ + k] += inst_->proc(j, k);
    }
    node.lower_bound_ = bound(node);
    return node;
}

void Kernel::make_child(const SearchNode& parent, std::size_t index, SearchNode& out) const {
    build_child(parent, index, 0, out);
    out.lower_bound_ = bound(out);
}

void Kernel::build_child(const SearchNode& parent, std::size_t index, Time bound,
                         SearchNode& out) const {
    out.jobs_ = parent.jobs_;
    out.times_ = parent.times_;
    out.prefix_len_ = parent.prefix_len_;
    out.suffix_len_ = parent.suffix_len_;
    out.lower_bound_ = bound;

    const std::size_t pos = parent.prefix_len_ + index;
    const JobId job = out.jobs_[pos];
    const Duration* row = inst_->job_row(job).data();
    Time* front = out.times_.data();
    Time* back = front + m_;
    Time* remaining = back + m_;

    const bool to_prefix = (parent.depth() + 1) % 2 == 1;
    if (to_prefix) {
        // Shift the unscheduled jobs before `job` right by one; order is kept.
        std::rotate(out.jobs_.begin() + parent.prefix_len_, out.jobs_.begin() + pos,
                    out.jobs_.begin() + pos + 1);
        ++out.prefix_len_;
        Time prev = 0;
        for (std::size_t k = 0; k < m_; ++k) {
            prev = std::max(prev, front[k]) + row[k];
            front[k] = prev;
        }
    } else {
        const std::size_t gap_end = n_ - parent.suffix_len_;
        std::rotate(out.jobs_.begin() + pos, out.jobs_.begin() + pos + 1,
                    out.jobs_.begin() + gap_end);
        ++out.suffix_len_;
        Time next = 0;
        for (std::size_t k = m_; k-- > 0;) {
            next = std::max(next, back[k]) + row[k];
            back[k] = next;
        }
    }
    for (std::size_t k = 0; k < m_; ++k) remaining[k] -= row[k];
}

void Kernel::compute_tail_minima(const SearchNode& parent, TailMinima& out) const {
    constexpr Time kInf = std::numeric_limits<Time>::max();
    out.first.assign(m_, kInf);
    out.second.assign(m_, kInf);
    out.argmin.assign(m_, 0);
    for (JobId j : parent.unscheduled()) {
        const Time* tails = tails_.data() + j * m_;
        for (std::size_t k = 0; k < m_; ++k) {
            const Time t = tails[k];
            if (t < out.first[k]) {
                out.second[k] = out.first[k];
                out.first[k] = t;
                out.argmin[k] = j;
            } else if (t < out.second[k]) {
                out.second[k] = t;
            }
        }
    }
}

Time Kernel::child_bound(const SearchNode& parent, std::size_t index, const TailMinima& minima,
                         std::span<Time> scratch) const noexcept {
    const JobId job = parent.unscheduled()[index];
    const Duration* row = inst_->job_row(job).data();
    const Time* front = parent.times_.data();
    const Time* back = front + m_;
    const Time* remaining = back + m_;
    Time* updated = scratch.data();
    Time bound = 0;

    const bool to_prefix = (parent.depth() + 1) % 2 == 1;
    if (to_prefix) {
        Time prev = 0;
        for (std::size_t k = 0; k < m_; ++k) {
            prev = std::max(prev, front[k]) + row[k];
            updated[k] = prev;
        }
        front = updated;
    } else {
        Time next = 0;
        for (std::size_t k = m_; k-- > 0;) {
            next = std::max(next, back[k]) + row[k];
            updated[k] = next;
        }
        back = updated;
    }

    if (parent.unscheduled().size() == 1) {
        for (std::size_t k = 0; k < m_; ++k) bound = std::max(bound, front[k] + back[k]);
        return bound;
    }
    for (std::size_t k = 0; k < m_; ++k) {
        const Time min_tail = minima.argmin[k] == job ? minima.second[k] : minima.first[k];
        const Time exit = std::max(min_tail, back[k]);
        bound = std::max(bound, front[k] + (remaining[k] - row[k]) + exit);
    }
    return bound;
}

Time Kernel::bound(const SearchNode& node) const noexcept {
    return compute_bound(node.front(), node.back(), node.remaining_work(), node.unscheduled());
}

Time Kernel::compute_bound(std::span<const Time> front, std::span<const Time> back,
                           std::span<const Time> remaining,
                           std::span<const JobId> unscheduled) const noexcept {
    Time bound = 0;
    if (unscheduled.empty()) {
        for (std::size_t k = 0; k < m_; ++k) bound = std::max(bound, front[k] + back[k]);
        return bound;
    }
    for (std::size_t k = 0; k < m_; ++k) {
        Time min_tail = std::numeric_limits<Time>::max();
        for (JobId j : unscheduled) min_tail = std::min(min_tail, tails_[j * m_ + k]);
        bound = std::max(bound, front[k] + remaining[k] + std::max(min_tail, back[k]));
    }
    return bound;
}

Schedule Kernel::schedule_of(const SearchNode& node) const {
    if (!node.is_complete()) throw std::logic_error("schedule_of: node is not complete");
    return {std::vector<JobId>(node.jobs().begin(), node.jobs().end()), node.lower_bound()};
}

void ChildGenerator::reset(const Kernel& kernel, const SearchNode& parent) {
    kernel_ = &kernel;
    parent_ = &parent;
    next_ = 0;
    have_minima_ = false;
    peeked_index_ = static_cast<std::size_t>(-1);
}

void ChildGenerator::ensure_minima() {
    if (have_minima_) return;
    kernel_->compute_tail_minima(*parent_, minima_);
    scratch_.resize(kernel_->num_machines());
    have_minima_ = true;
}

Time ChildGenerator::peek_bound() {
    if (peeked_index_ != next_) {
        ensure_minima();
        peeked_bound_ = kernel_->child_bound(*parent_, next_, minima_, scratch_);
        peeked_index_ = next_;
    }
    return peeked_bound_;
}

void ChildGenerator::next(SearchNode& out) {
    const Time bound = peek_bound();
    kernel_->build_child(*parent_, next_++, bound, out);
}

ChildGenerator branch(const Kernel& kernel, const SearchNode& node) {
    if (node.is_complete()) throw std::logic_error("branch: node is complete");
    return ChildGenerator(kernel, node);
}

Schedule neh_upper_bound(const Instance& inst) {
    const std::size_t n = inst.num_jobs();
    std::vector<JobId> order(n);
    std::iota(order.begin(), order.end(), JobId{0});
    std::vector<Time> totals(n);
    for (JobId j = 0; j < n; ++j) totals[j] = inst.total_time(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](JobId a, JobId b) { return totals[a] > totals[b]; });

    std::vector<JobId> seq;
    seq.reserve(n);
    std::vector<JobId> trial;
    trial.reserve(n);
    std::vector<Time> scratch;
    Time best = 0;
    for (JobId job : order) {
        std::size_t best_pos = 0;
        best = std::numeric_limits<Time>::max();
        for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
            trial.assign(seq.begin(), seq.end());
            trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), job);
            const Time ms = partial_makespan(inst, trial, scratch);
            if (ms < best) {
                best = ms;
                best_pos = pos;
            }
        }
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(best_pos), job);
    }
    return {std::move(seq), best};
}

Schedule exhaustive_search(const Instance& inst) {
    const std::size_t n = inst.num_jobs();
    if (n > kExhaustiveMaxJobs) {
        throw std::invalid_argument("exhaustive search refused: " + std::to_string(n) +
                                    " jobs exceeds the limit of " +
                                    std::to_string(kExhaustiveMaxJobs));
    }
    std::vector<JobId> perm(n);
    std::iota(perm.begin(), perm.end(), JobId{0});
    std::vector<Time> scratch;
    Schedule best{perm, std::numeric_limits<Time>::max()};
    do {
        const Time ms = partial_makespan(inst, perm, scratch);
        if (ms < best.makespan) best = {perm, ms};
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace fsbb
