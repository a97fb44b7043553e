#include "fsbb/bench/run_record.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fsbb::bench {

namespace {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::runtime_error("cannot format double");
    return std::string(buf, ptr);
}

template <typename T>
T parse_number(const std::string& field, const char* column) {
    T value{};
    const auto* first = field.data();
    const auto* last = first + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw std::runtime_error(std::string("column ") + column + ": bad value '" + field + "'");
    }
    return value;
}

std::string join_permutation(const std::vector<JobId>& perm) {
    std::string out;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(perm[i]);
    }
    return out;
}

std::vector<JobId> split_permutation(const std::string& text) {
    std::vector<JobId> perm;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) perm.push_back(parse_number<JobId>(tok, "permutation"));
    return perm;
}

std::string quote_csv(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

Coordination coordination_from(const std::string& text) {
    auto c = parse_coordination(text);
    if (!c) throw std::runtime_error("unknown coordination '" + text + "'");
    return *c;
}

}  // namespace

unsigned host_threads() { return std::thread::hardware_concurrency(); }

double host_cpu_mhz() {
    std::ifstream in("/proc/cpuinfo");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("cpu MHz", 0) == 0) {
            const auto colon = line.find(':');
            if (colon == std::string::npos) break;
            try {
                return std::stod(line.substr(colon + 1));
            } catch (const std::exception&) {
                break;
            }
        }
    }
    return 0.0;
}

RunRecord make_run_record(const std::string& instance_name, const SearchResult& result,
                          std::size_t repeat_index) {
    RunRecord r;
    r.instance_name = instance_name;
    r.coordination = result.config_echo.coordination;
    r.workers = result.config_echo.workers;
    r.cutoff_depth = result.config_echo.cutoff_depth;
    r.backtrack_budget = result.config_echo.backtrack_budget;
    r.rng_seed = result.config_echo.rng_seed;
    r.repeat_index = repeat_index;
    r.makespan = result.schedule.makespan;
    r.proven_optimal = result.proven_optimal;
    r.wall_time_seconds = result.metrics.wall_time.count();
    r.nodes_visited = result.metrics.nodes_visited;
    r.nodes_pruned = result.metrics.nodes_pruned;
    r.tasks_spawned = result.metrics.tasks_spawned;
    r.steals_attempted = result.metrics.steals_attempted;
    r.steals_succeeded = result.metrics.steals_succeeded;
    r.backtracks = result.metrics.backtracks;
    r.incumbent_updates = result.metrics.incumbent_updates;
    r.permutation = result.schedule.permutation;
    r.hw_threads = host_threads();
    r.cpu_mhz = host_cpu_mhz();
    return r;
}

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> columns = {
        "instance_name",   "coordination",     "workers",          "cutoff_depth",
        "backtrack_budget", "rng_seed",        "repeat_index",     "makespan",
        "proven_optimal",  "wall_time_seconds", "nodes_visited",   "nodes_pruned",
        "tasks_spawned",   "steals_attempted", "steals_succeeded", "backtracks",
        "incumbent_updates", "permutation",    "hw_threads",       "cpu_mhz",
    };
    return columns;
}

void write_csv_header(std::ostream& out) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
}

void write_csv_row(std::ostream& out, const RunRecord& r) {
    out << quote_csv(r.instance_name) << ',' << to_string(r.coordination) << ',' << r.workers << ','
        << (r.cutoff_depth ? std::to_string(*r.cutoff_depth) : "") << ','
        << (r.backtrack_budget ? std::to_string(*r.backtrack_budget) : "") << ',' << r.rng_seed << ','
        << r.repeat_index << ',' << r.makespan << ',' << (r.proven_optimal ? "true" : "false") << ','
        << format_double(r.wall_time_seconds) << ',' << r.nodes_visited << ',' << r.nodes_pruned << ','
        << r.tasks_spawned << ',' << r.steals_attempted << ',' << r.steals_succeeded << ','
        << r.backtracks << ',' << r.incumbent_updates << ',' << join_permutation(r.permutation) << ','
        << r.hw_threads << ',' << format_double(r.cpu_mhz) << '\n';
}

std::vector<RunRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("run-record CSV: missing header");
    if (split_csv_line(line) != csv_columns()) {
        throw std::runtime_error("run-record CSV: unexpected header '" + line + "'");
    }
    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (f.size() != csv_columns().size()) {
            throw std::runtime_error("run-record CSV line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(csv_columns().size()) + " fields, found " +
                                     std::to_string(f.size()));
        }
        RunRecord r;
        try {
            r.instance_name = f[0];
            r.coordination = coordination_from(f[1]);
            r.workers = parse_number<std::size_t>(f[2], "workers");
            if (!f[3].empty()) r.cutoff_depth = parse_number<std::size_t>(f[3], "cutoff_depth");
            if (!f[4].empty()) r.backtrack_budget = parse_number<std::uint64_t>(f[4], "backtrack_budget");
            r.rng_seed = parse_number<std::uint64_t>(f[5], "rng_seed");
            r.repeat_index = parse_number<std::size_t>(f[6], "repeat_index");
            r.makespan = parse_number<Time>(f[7], "makespan");
            if (f[8] != "true" && f[8] != "false") {
                throw std::runtime_error("column proven_optimal: bad value '" + f[8] + "'");
            }
            r.proven_optimal = f[8] == "true";
            r.wall_time_seconds = parse_number<double>(f[9], "wall_time_seconds");
            r.nodes_visited = parse_number<std::uint64_t>(f[10], "nodes_visited");
            r.nodes_pruned = parse_number<std::uint64_t>(f[11], "nodes_pruned");
            r.tasks_spawned = parse_number<std::uint64_t>(f[12], "tasks_spawned");
            r.steals_attempted = parse_number<std::uint64_t>(f[13], "steals_attempted");
            r.steals_succeeded = parse_number<std::uint64_t>(f[14], "steals_succeeded");
            r.backtracks = parse_number<std::uint64_t>(f[15], "backtracks");
            r.incumbent_updates = parse_number<std::uint64_t>(f[16], "incumbent_updates");
            r.permutation = split_permutation(f[17]);
            r.hw_threads = parse_number<unsigned>(f[18], "hw_threads");
            r.cpu_mhz = parse_number<double>(f[19], "cpu_mhz");
        } catch (const std::runtime_error& e) {
            throw std::runtime_error("run-record CSV line " + std::to_string(line_no) + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return records;
}

nlohmann::ordered_json to_json(const RunRecord& r) {
    nlohmann::ordered_json j;
    j["instance_name"] = r.instance_name;
    j["coordination"] = std::string(to_string(r.coordination));
    j["workers"] = r.workers;
    j["cutoff_depth"] = r.cutoff_depth ? nlohmann::ordered_json(*r.cutoff_depth) : nullptr;
    j["backtrack_budget"] = r.backtrack_budget ? nlohmann::ordered_json(*r.backtrack_budget) : nullptr;
    j["rng_seed"] = r.rng_seed;
    j["repeat_index"] = r.repeat_index;
    j["makespan"] = r.makespan;
    j["proven_optimal"] = r.proven_optimal;
    j["wall_time_seconds"] = r.wall_time_seconds;
    j["nodes_visited"] = r.nodes_visited;
    j["nodes_pruned"] = r.nodes_pruned;
    j["tasks_spawned"] = r.tasks_spawned;
    j["steals_attempted"] = r.steals_attempted;
    j["steals_succeeded"] = r.steals_succeeded;
    j["backtracks"] = r.backtracks;
    j["incumbent_updates"] = r.incumbent_updates;
    j["permutation"] = r.permutation;
    j["hw_threads"] = r.hw_threads;
    j["cpu_mhz"] = r.cpu_mhz;
    return j;
}

RunRecord run_record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.instance_name = j.at("instance_name").get<std::string>();
    r.coordination = coordination_from(j.at("coordination").get<std::string>());
    r.workers = j.at("workers").get<std::size_t>();
    if (!j.at("cutoff_depth").is_null()) r.cutoff_depth = j["cutoff_depth"].get<std::size_t>();
    if (!j.at("backtrack_budget").is_null()) r.backtrack_budget = j["backtrack_budget"].get<std::uint64_t>();
    r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    r.repeat_index = j.at("repeat_index").get<std::size_t>();
    r.makespan = j.at("makespan").get<Time>();
    r.proven_optimal = j.at("proven_optimal").get<bool>();
    r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    r.nodes_visited = j.at("nodes_visited").get<std::uint64_t>();
    r.nodes_pruned = j.at("nodes_pruned").get<std::uint64_t>();
    r.tasks_spawned = j.at("tasks_spawned").get<std::uint64_t>();
    r.steals_attempted = j.at("steals_attempted").get<std::uint64_t>();
    r.steals_succeeded = j.at("steals_succeeded").get<std::uint64_t>();
    r.backtracks = j.at("backtracks").get<std::uint64_t>();
    r.incumbent_updates = j.at("incumbent_updates").get<std::uint64_t>();
    r.permutation = j.at("permutation").get<std::vector<JobId>>();
    r.hw_threads = j.at("hw_threads").get<unsigned>();
    r.cpu_mhz = j.at("cpu_mhz").get<double>();
    return r;
}

}  // namespace fsbb::bench
