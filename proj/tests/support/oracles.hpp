#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: plain nested vectors, textbook recurrences, full enumeration.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<std::uint64_t>>;  // [job][machine]

/// Completion-time table C[i][k] for the i-th job of `order`.
inline std::uint64_t makespan(const Matrix& p, const std::vector<std::uint32_t>& order) {
    if (order.empty()) return 0;
    const std::size_t m = p[0].size();
    std::vector<std::vector<std::uint64_t>> c(order.size(), std::vector<std::uint64_t>(m, 0));
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            const std::uint64_t above = i > 0 ? c[i - 1][k] : 0;
            const std::uint64_t left = k > 0 ? c[i][k - 1] : 0;
            c[i][k] = std::max(above, left) + p[order[i]][k];
        }
    }
    return c.back().back();
}

struct Best {
    std::uint64_t makespan = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint32_t> order;
};

/// Minimum makespan over every order of `middle` placed between `prefix`
/// and `suffix` (suffix in execution order). Recursive enumeration.
inline Best best_completion(const Matrix& p, std::vector<std::uint32_t> prefix,
                            std::vector<std::uint32_t> middle, const std::vector<std::uint32_t>& suffix) {
    Best best;
    std::vector<bool> used(middle.size(), false);
    std::vector<std::uint32_t> current = prefix;
    auto rec = [&](auto&& self) -> void {
        if (current.size() == prefix.size() + middle.size()) {
            std::vector<std::uint32_t> full = current;
            full.insert(full.end(), suffix.begin(), suffix.end());
            const auto value = makespan(p, full);
            if (value < best.makespan) best = {value, full};
            return;
        }
        for (std::size_t i = 0; i < middle.size(); ++i) {
            if (used[i]) continue;
            used[i] = true;
            current.push_back(middle[i]);
            self(self);
            current.pop_back();
            used[i] = false;
        }
    };
    std::sort(middle.begin(), middle.end());
    rec(rec);
    return best;
}

inline Best brute_force(const Matrix& p) {
    std::vector<std::uint32_t> all(p.size());
    std::iota(all.begin(), all.end(), 0u);
    return best_completion(p, {}, all, {});
}

/// NEH written from its textbook description: decreasing total time (stable),
/// insert each job at the first position minimising the partial makespan.
inline Best neh(const Matrix& p) {
    std::vector<std::uint32_t> order(p.size());
    std::iota(order.begin(), order.end(), 0u);
    auto total = [&](std::uint32_t j) { return std::accumulate(p[j].begin(), p[j].end(), std::uint64_t{0}); };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return total(a) > total(b); });
    std::vector<std::uint32_t> seq;
    for (auto j : order) {
        std::vector<std::uint32_t> best_seq;
        std::uint64_t best_value = std::numeric_limits<std::uint64_t>::max();
        for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
            auto trial = seq;
            trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), j);
            const auto value = makespan(p, trial);
            if (value < best_value) {
                best_value = value;
                best_seq = trial;
            }
        }
        seq = best_seq;
    }
    return {makespan(p, seq), seq};
}

/// Reads the canonical text format independently of the library parser.
inline Matrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream body;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        body << line << '\n';
    }
    std::size_t n = 0, m = 0;
    body >> n >> m;
    Matrix p(n, std::vector<std::uint64_t>(m));
    for (auto& row : p)
        for (auto& v : row) body >> v;
    return p;
}

}  // namespace oracle
