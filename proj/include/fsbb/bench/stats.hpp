#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsbb/bench/run_record.hpp"

namespace fsbb::bench {

struct TimeSummary {
    double min = 0.0;
    double median = 0.0;
    double max = 0.0;
};

/// Min / median / max. The median of an even count is the mean of the two
/// middle values. Throws std::invalid_argument on an empty sample.
TimeSummary summarize(std::span<const double> samples);

/// k-th root of the product, computed as exp(mean(log x)). Throws
/// std::invalid_argument when empty or when any value is not positive.
double geometric_mean(std::span<const double> values);

/// Everything that identifies a configuration except the repeat and seed.
struct ConfigKey {
    Coordination coordination = Coordination::Sequential;
    std::size_t workers = 1;
    std::optional<std::size_t> cutoff_depth;
    std::optional<std::uint64_t> backtrack_budget;

    static ConfigKey of(const RunRecord& r);
    std::string label() const;

    /// Same skeleton and parameters, ignoring the worker count.
    bool same_skeleton(const ConfigKey& o) const noexcept {
        return coordination == o.coordination && cutoff_depth == o.cutoff_depth &&
               backtrack_budget == o.backtrack_budget;
    }

    friend bool operator==(const ConfigKey&, const ConfigKey&) = default;
};

struct CellSummary {
    std::string instance;
    ConfigKey config;
    std::size_t repeats = 0;
    TimeSummary time;
    /// Median baseline time over this cell's median time.
    double speedup = 0.0;
    /// Label of the cell the speedup is relative to.
    std::string baseline;
};

struct ConfigSpeedup {
    ConfigKey config;
    std::size_t instances = 0;
    double geometric_mean_speedup = 0.0;
};

struct BenchSummary {
    std::vector<CellSummary> cells;
    std::vector<ConfigSpeedup> speedups;
};

/// Groups records by (instance, config) in first-appearance order. Each
/// cell's baseline is the same skeleton at `baseline_workers`, falling back
/// to the Sequential run of the instance. Throws std::invalid_argument on an
/// empty input or when a cell has no baseline.
BenchSummary compute_stats(std::span<const RunRecord> records, std::size_t baseline_workers = 1);

}  // namespace fsbb::bench
