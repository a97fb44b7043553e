#include "fsbb/search/config.hpp"

#include <stdexcept>

namespace fsbb {

std::string_view to_string(Coordination c) noexcept {
    switch (c) {
        case Coordination::Sequential: return "seq";
        case Coordination::DepthBounded: return "depthbounded";
        case Coordination::Budget: return "budget";
        case Coordination::StackStealing: return "stackstealing";
    }
    return "unknown";
}

std::optional<Coordination> parse_coordination(std::string_view text) noexcept {
    if (text == "seq" || text == "sequential") return Coordination::Sequential;
    if (text == "depthbounded") return Coordination::DepthBounded;
    if (text == "budget") return Coordination::Budget;
    if (text == "stackstealing") return Coordination::StackStealing;
    return std::nullopt;
}

SkeletonConfig SkeletonConfig::sequential() { return {}; }

SkeletonConfig SkeletonConfig::depth_bounded(std::size_t cutoff, std::size_t workers) {
    SkeletonConfig c;
    c.coordination = Coordination::DepthBounded;
    c.cutoff_depth = cutoff;
    c.workers = workers;
    return c;
}

SkeletonConfig SkeletonConfig::budget(std::uint64_t backtracks, std::size_t workers) {
    SkeletonConfig c;
    c.coordination = Coordination::Budget;
    c.backtrack_budget = backtracks;
    c.workers = workers;
    return c;
}

SkeletonConfig SkeletonConfig::stack_stealing(std::size_t workers) {
    SkeletonConfig c;
    c.coordination = Coordination::StackStealing;
    c.workers = workers;
    return c;
}

SkeletonConfig validated(const SkeletonConfig& config) {
    SkeletonConfig c = config;
    if (c.workers == 0) throw std::invalid_argument("workers must be >= 1");
    if (c.coordination == Coordination::Sequential) c.workers = 1;

    const bool depth_bounded = c.coordination == Coordination::DepthBounded;
    if (depth_bounded && !c.cutoff_depth) {
        throw std::invalid_argument("depthbounded requires a cutoff depth");
    }
    if (!depth_bounded && c.cutoff_depth) {
        throw std::invalid_argument("cutoff depth only applies to depthbounded");
    }

    const bool budget = c.coordination == Coordination::Budget;
    if (budget && !c.backtrack_budget) {
        throw std::invalid_argument("budget requires a backtrack budget");
    }
    if (budget && *c.backtrack_budget == 0) {
        throw std::invalid_argument("backtrack budget must be positive");
    }
    if (!budget && c.backtrack_budget) {
        throw std::invalid_argument("backtrack budget only applies to budget");
    }

    if (c.time_limit && c.time_limit->count() <= 0.0) {
        throw std::invalid_argument("time limit must be positive");
    }
    if (c.watchdog_interval.count() <= 0.0) {
        throw std::invalid_argument("watchdog interval must be positive");
    }
    return c;
}

}  // namespace fsbb
