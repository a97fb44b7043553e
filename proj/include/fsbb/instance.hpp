#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fsbb {

using JobId = std::uint32_t;
using Duration = std::uint32_t;
using Time = std::uint64_t;

/// Permutation flowshop problem: num_jobs x num_machines processing times.
///
/// Immutable after construction; the constructor enforces every invariant
/// (non-empty dimensions, rectangular matrix, no makespan overflow), so any
/// Instance value that exists is valid and may be shared between threads.
class Instance {
public:
    /// `proc_time[j][k]` is the duration of job j on machine k.
    Instance(std::string name, std::vector<std::vector<Duration>> proc_time);

    /// Row-major flat layout, `flat[j * num_machines + k]`.
    Instance(std::string name, std::size_t num_jobs, std::size_t num_machines,
             std::vector<Duration> flat);

    const std::string& name() const noexcept { return name_; }
    std::size_t num_jobs() const noexcept { return num_jobs_; }
    std::size_t num_machines() const noexcept { return num_machines_; }

    Duration proc(JobId job, std::size_t machine) const noexcept {
        return times_[job * num_machines_ + machine];
    }

    /// Processing times of one job across all machines.
    std::span<const Duration> job_row(JobId job) const noexcept {
        return {times_.data() + job * num_machines_, num_machines_};
    }

    std::span<const Duration> flat() const noexcept { return times_; }

    /// Sum of the job's processing times over all machines.
    Time total_time(JobId job) const noexcept;

    /// Dimensions and processing times only; the name is not part of the
    /// on-disk format and is ignored.
    friend bool operator==(const Instance& a, const Instance& b) noexcept {
        return a.num_jobs_ == b.num_jobs_ && a.num_machines_ == b.num_machines_ &&
               a.times_ == b.times_;
    }

private:
    void validate() const;

    std::string name_;
    std::size_t num_jobs_ = 0;
    std::size_t num_machines_ = 0;
    std::vector<Duration> times_;
};

/// Diagnostic raised by the instance parser. `line` and `column` are 1-based
/// positions in the input text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

    /// Message without the position prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// Reads the canonical job-major text format:
///
///     <num_jobs> <num_machines>
///     <m integers>      one line per job, machine order
///
/// Lines whose first non-blank character is '#' are comments; blank lines
/// are skipped. Throws ParseError on any violation.
Instance parse_instance(std::istream& in, std::string name = {});
Instance parse_instance(std::string_view text, std::string name = {});

/// Loads a file; the instance name defaults to the file stem.
Instance load_instance(const std::string& path);

void write_instance(std::ostream& out, const Instance& inst);
std::string write_instance(const Instance& inst);

/// Entries drawn uniformly from [1, max_time]. Portable and bit-reproducible:
/// the same arguments produce the same matrix on every platform.
Instance generate_random_instance(std::size_t num_jobs, std::size_t num_machines,
                                  Duration max_time, std::uint64_t seed);

}  // namespace fsbb
