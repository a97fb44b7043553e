#include "fsbb/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsbb::bench {

TimeSummary summarize(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
    return {sorted.front(), median, sorted.back()};
}

double geometric_mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("geometric_mean: empty input");
    double log_sum = 0.0;
    for (double v : values) {
        if (!(v > 0.0)) throw std::invalid_argument("geometric_mean: values must be positive");
        log_sum += std::log(v);
    }
    return std::exp(log_sum / static_cast<double>(values.size()));
}

ConfigKey ConfigKey::of(const RunRecord& r) {
    return {r.coordination, r.workers, r.cutoff_depth, r.backtrack_budget};
}

std::string ConfigKey::label() const {
    std::string out(to_string(coordination));
    if (cutoff_depth) out += " d=" + std::to_string(*cutoff_depth);
    if (backtrack_budget) out += " b=" + std::to_string(*backtrack_budget);
    out += " w=" + std::to_string(workers);
    return out;
}

BenchSummary compute_stats(std::span<const RunRecord> records, std::size_t baseline_workers) {
    if (records.empty()) throw std::invalid_argument("compute_stats: no records");

    struct Group {
        std::string instance;
        ConfigKey config;
        std::vector<double> times;
    };
    std::vector<Group> groups;
    for (const auto& r : records) {
        const auto key = ConfigKey::of(r);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.instance == r.instance_name && g.config == key;
        });
        if (it == groups.end()) {
            groups.push_back({r.instance_name, key, {}});
            it = std::prev(groups.end());
        }
        it->times.push_back(r.wall_time_seconds);
    }

    BenchSummary summary;
    for (const auto& g : groups) {
        CellSummary cell{g.instance, g.config, g.times.size(), summarize(g.times), 0.0, {}};
        summary.cells.push_back(std::move(cell));
    }

    for (auto& cell : summary.cells) {
        const CellSummary* base = nullptr;
        for (const auto& other : summary.cells) {
            if (other.instance == cell.instance && other.config.same_skeleton(cell.config) &&
                other.config.workers == baseline_workers) {
                base = &other;
                break;
            }
        }
        if (base == nullptr) {
            for (const auto& other : summary.cells) {
                if (other.instance == cell.instance &&
                    other.config.coordination == Coordination::Sequential) {
                    base = &other;
                    break;
                }
            }
        }
        if (base == nullptr) {
            throw std::invalid_argument("compute_stats: no baseline run for " + cell.instance + " / " +
                                        cell.config.label());
        }
        cell.speedup = base->time.median / cell.time.median;
        cell.baseline = base->config.label();
    }

    std::vector<std::vector<double>> per_config;
    for (const auto& cell : summary.cells) {
        auto it = std::find_if(summary.speedups.begin(), summary.speedups.end(),
                               [&](const ConfigSpeedup& s) { return s.config == cell.config; });
        if (it == summary.speedups.end()) {
            summary.speedups.push_back({cell.config, 0, 0.0});
            per_config.emplace_back();
            it = std::prev(summary.speedups.end());
        }
        per_config[static_cast<std::size_t>(it - summary.speedups.begin())].push_back(cell.speedup);
    }
    for (std::size_t i = 0; i < summary.speedups.size(); ++i) {
        summary.speedups[i].instances = per_config[i].size();
        summary.speedups[i].geometric_mean_speedup = geometric_mean(per_config[i]);
    }
    return summary;
}

}  // namespace fsbb::bench
