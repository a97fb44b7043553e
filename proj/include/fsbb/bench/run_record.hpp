#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsbb/search/engine.hpp"

namespace fsbb::bench {

/// One solver run: configuration, outcome, counters and host metadata.
struct RunRecord {
    std::string instance_name;
    Coordination coordination = Coordination::Sequential;
    std::size_t workers = 1;
    std::optional<std::size_t> cutoff_depth;
    std::optional<std::uint64_t> backtrack_budget;
    std::uint64_t rng_seed = 0;
    std::size_t repeat_index = 0;
    Time makespan = 0;
    bool proven_optimal = false;
    double wall_time_seconds = 0.0;
    std::uint64_t nodes_visited = 0;
    std::uint64_t nodes_pruned = 0;
    std::uint64_t tasks_spawned = 0;
    std::uint64_t steals_attempted = 0;
    std::uint64_t steals_succeeded = 0;
    std::uint64_t backtracks = 0;
    std::uint64_t incumbent_updates = 0;
    std::vector<JobId> permutation;
    unsigned hw_threads = 0;
    double cpu_mhz = 0.0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

RunRecord make_run_record(const std::string& instance_name, const SearchResult& result,
                          std::size_t repeat_index);

/// Logical CPUs and nominal clock of this host (0 when not discoverable).
unsigned host_threads();
double host_cpu_mhz();

/// Column names in output order.
const std::vector<std::string>& csv_columns();

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const RunRecord& record);

/// Parses a header plus rows as written above. Throws std::runtime_error on
/// a header mismatch or malformed field.
std::vector<RunRecord> read_csv(std::istream& in);

nlohmann::ordered_json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& j);

}  // namespace fsbb::bench
