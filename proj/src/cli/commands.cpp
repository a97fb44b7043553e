#include "fsbb/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <random>
#include <thread>

#include "fsbb/bench/manifest.hpp"
#include "fsbb/bench/run_record.hpp"
#include "fsbb/bench/stats.hpp"
#include "fsbb/search/engine.hpp"

namespace fsbb::cli {

namespace {

std::uint64_t parse_u64(const std::string& text, const char* what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string(what) + ": '" + text + "' is not a non-negative integer");
    }
    return value;
}

// Unbiased draw from [0, range) with a fully specified reduction.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t range) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t r = rng();
    while (r >= limit) r = rng();
    return r % range;
}

std::string permutation_text(const std::vector<JobId>& perm) {
    std::string s;
    for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? " " : "") + std::to_string(perm[i]);
    return s;
}

void print_report(std::ostream& out, const Instance& inst, const SearchResult& r) {
    const auto& m = r.metrics;
    const auto& c = r.config_echo;
    out << std::left;
    auto row = [&out](const char* key, const auto& value) {
        out << std::setw(19) << key << value << '\n';
    };
    row("instance", inst.name());
    row("skeleton", to_string(c.coordination));
    row("workers", c.workers);
    if (c.cutoff_depth) row("cutoff_depth", *c.cutoff_depth);
    if (c.backtrack_budget) row("backtrack_budget", *c.backtrack_budget);
    row("makespan", r.schedule.makespan);
    row("permutation", permutation_text(r.schedule.permutation));
    row("proven_optimal", r.proven_optimal ? "true" : "false");
    row("wall_time_seconds", m.wall_time.count());
    row("nodes_visited", m.nodes_visited);
    row("nodes_pruned", m.nodes_pruned);
    row("tasks_spawned", m.tasks_spawned);
    row("steals_attempted", m.steals_attempted);
    row("steals_succeeded", m.steals_succeeded);
    row("backtracks", m.backtracks);
    row("incumbent_updates", m.incumbent_updates);
}

void write_records_csv(const std::string& path, const std::vector<bench::RunRecord>& records,
                       std::ostream& fallback) {
    std::ofstream file;
    std::ostream* out = &fallback;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw std::runtime_error("cannot write '" + path + "'");
        out = &file;
    }
    bench::write_csv_header(*out);
    for (const auto& r : records) bench::write_csv_row(*out, r);
}

}  // namespace

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dash = text.find('-');
    if (dash == std::string::npos) {
        const auto v = parse_u64(text, "range");
        return {v, v};
    }
    const auto lo = parse_u64(text.substr(0, dash), "range");
    const auto hi = parse_u64(text.substr(dash + 1), "range");
    if (lo > hi) throw std::invalid_argument("range '" + text + "' is empty");
    return {lo, hi};
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        auto item = text.substr(start, comma - start);
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) items.push_back(std::move(item));
        start = comma + 1;
    }
    return items;
}

SkeletonConfig make_config(const SolverFlags& flags, std::ostream& err) {
    const auto coordination = parse_coordination(flags.skeleton);
    if (!coordination) throw std::invalid_argument("unknown skeleton '" + flags.skeleton + "'");

    SkeletonConfig config;
    config.coordination = *coordination;
    config.workers = flags.workers != 0 ? flags.workers
                                        : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    config.rng_seed = flags.seed;
    if (flags.time_limit) config.time_limit = std::chrono::duration<double>(*flags.time_limit);

    if (config.coordination == Coordination::DepthBounded) {
        config.cutoff_depth = flags.cutoff_depth;
    } else if (flags.cutoff_depth_set) {
        err << "warning: --cutoff-depth ignored for skeleton " << to_string(config.coordination) << '\n';
    }
    if (config.coordination == Coordination::Budget) {
        config.backtrack_budget = flags.backtrack_budget;
    } else if (flags.backtrack_budget_set) {
        err << "warning: --backtrack-budget ignored for skeleton " << to_string(config.coordination) << '\n';
    }
    return validated(config);
}

int run_solve(const SolveOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        if (opts.output != "text" && opts.output != "json") {
            throw std::invalid_argument("--output must be text or json");
        }
        const auto config = make_config(opts.solver, err);
        const Instance inst = load_instance(opts.instance);
        const SearchResult result = search(inst, config);
        if (opts.output == "json") {
            out << bench::to_json(bench::make_run_record(inst.name(), result, 0)).dump() << '\n';
        } else {
            print_report(out, inst, result);
        }
        return result.proven_optimal ? kExitProven : kExitUnproven;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
    std::vector<bench::ManifestEntry> entries;
    SkeletonConfig config;
    try {
        config = make_config(opts.solver, err);
        entries = bench::read_manifest(opts.manifest);
        for (const auto& e : entries) {
            if (!std::filesystem::exists(e.path)) {
                throw std::runtime_error("instance file not found: " + e.path);
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    std::size_t passed = 0, failed = 0, timeouts = 0;
    out << std::left << std::setw(24) << "instance" << std::right << std::setw(10) << "expected"
        << std::setw(10) << "found" << std::setw(10) << "status" << std::setw(12) << "time_s"
        << std::setw(16) << "nodes" << '\n';
    for (const auto& e : entries) {
        std::string status;
        Time found = 0;
        double seconds = 0.0;
        std::uint64_t nodes = 0;
        try {
            const Instance inst = load_instance(e.path);
            const SearchResult r = search(inst, config);
            found = r.schedule.makespan;
            seconds = r.metrics.wall_time.count();
            nodes = r.metrics.nodes_visited;
            if (r.proven_optimal) {
                status = found == e.expected_makespan ? "PASS" : "FAIL";
            } else {
                // An unproven incumbent below the expected optimum still refutes it.
                status = found < e.expected_makespan ? "FAIL" : "TIMEOUT";
            }
        } catch (const std::exception& ex) {
            err << "error: " << e.instance << ": " << ex.what() << '\n';
            status = "FAIL";
        }
        if (status == "PASS") ++passed;
        else if (status == "FAIL") ++failed;
        else ++timeouts;
        out << std::left << std::setw(24) << e.instance << std::right << std::setw(10)
            << e.expected_makespan << std::setw(10) << found << std::setw(10) << status
            << std::setw(12) << std::fixed << std::setprecision(3) << seconds << std::setw(16) << nodes
            << '\n'
            << std::defaultfloat;
    }
    out << passed << " PASS, " << failed << " FAIL, " << timeouts << " TIMEOUT\n";
    if (failed > 0) return kExitError;
    return timeouts > 0 ? kExitUnproven : kExitProven;
}

int run_oracle(const OracleOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const auto [jobs_lo, jobs_hi] = parse_range(opts.jobs);
        const auto [mach_lo, mach_hi] = parse_range(opts.machines);
        if (jobs_hi > kExhaustiveMaxJobs) {
            throw std::invalid_argument("--jobs upper bound " + std::to_string(jobs_hi) +
                                        " exceeds the exhaustive-search limit of " +
                                        std::to_string(kExhaustiveMaxJobs));
        }
        if (jobs_lo == 0 || mach_lo == 0) throw std::invalid_argument("--jobs and --machines must be >= 1");
        if (opts.max_time == 0) throw std::invalid_argument("--max-time must be >= 1");
        if (opts.count == 0) throw std::invalid_argument("--count must be >= 1");
        if (opts.out_dir.empty()) throw std::invalid_argument("--out is required");

        std::filesystem::create_directories(opts.out_dir);
        std::mt19937_64 rng(opts.seed);
        std::vector<bench::ManifestEntry> manifest;
        for (std::size_t i = 0; i < opts.count; ++i) {
            const std::size_t n = jobs_lo + draw(rng, jobs_hi - jobs_lo + 1);
            const std::size_t m = mach_lo + draw(rng, mach_hi - mach_lo + 1);
            const std::uint64_t instance_seed = rng();
            const Instance inst = generate_random_instance(n, m, opts.max_time, instance_seed);
            const Schedule optimum = exhaustive_search(inst);

            char name[32];
            std::snprintf(name, sizeof name, "oracle_%03zu.fsp", i);
            std::ofstream file(std::filesystem::path(opts.out_dir) / name);
            if (!file) throw std::runtime_error(std::string("cannot write ") + name);
            file << "# random instance " << i << ": " << n << " jobs x " << m << " machines, p in [1,"
                 << opts.max_time << "], seed " << instance_seed << '\n'
                 << "# exhaustive optimum " << optimum.makespan << '\n';
            write_instance(file, inst);
            manifest.push_back({name, name, optimum.makespan});
        }
        const auto manifest_path = std::filesystem::path(opts.out_dir) / "manifest.csv";
        std::ofstream mf(manifest_path);
        if (!mf) throw std::runtime_error("cannot write " + manifest_path.string());
        bench::write_manifest(mf, manifest);
        out << "wrote " << manifest.size() << " instances and " << manifest_path.string() << '\n';
        return kExitProven;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int run_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const auto coordination = parse_coordination(opts.solver.skeleton);
        if (coordination != Coordination::DepthBounded && coordination != Coordination::Budget) {
            throw std::invalid_argument("sweep needs a parameterised skeleton (depthbounded or budget), got '" +
                                        opts.solver.skeleton + "'");
        }
        const auto items = split_list(opts.values);
        if (items.empty()) throw std::invalid_argument("--values is empty");
        if (opts.repeats == 0) throw std::invalid_argument("--repeats must be >= 1");
        std::vector<std::uint64_t> values;
        for (const auto& item : items) values.push_back(parse_u64(item, "--values"));

        const Instance inst = load_instance(opts.instance);
        std::vector<bench::RunRecord> records;
        bool all_proven = true;
        for (const auto value : values) {
            for (std::size_t rep = 0; rep < opts.repeats; ++rep) {
                SolverFlags flags = opts.solver;
                if (coordination == Coordination::DepthBounded) {
                    flags.cutoff_depth = static_cast<std::size_t>(value);
                } else {
                    flags.backtrack_budget = value;
                }
                flags.seed = opts.solver.seed + rep;
                const auto result = search(inst, make_config(flags, err));
                all_proven = all_proven && result.proven_optimal;
                err << "sweep " << to_string(*coordination) << '=' << value << " repeat " << rep << ": "
                    << result.schedule.makespan << " in " << result.metrics.wall_time.count() << " s\n";
                records.push_back(bench::make_run_record(inst.name(), result, rep));
            }
        }
        write_records_csv(opts.out, records, out);
        return all_proven ? kExitProven : kExitUnproven;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int run_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        std::vector<Coordination> skeletons;
        for (const auto& s : split_list(opts.skeletons)) {
            const auto c = parse_coordination(s);
            if (!c) throw std::invalid_argument("unknown skeleton '" + s + "'");
            skeletons.push_back(*c);
        }
        std::vector<std::size_t> worker_counts;
        for (const auto& w : split_list(opts.workers)) {
            const auto v = parse_u64(w, "--workers");
            if (v == 0) throw std::invalid_argument("--workers entries must be >= 1");
            worker_counts.push_back(static_cast<std::size_t>(v));
        }
        if (skeletons.empty() || worker_counts.empty()) {
            throw std::invalid_argument("--skeletons and --workers must be non-empty");
        }
        if (opts.repeats == 0) throw std::invalid_argument("--repeats must be >= 1");
        const bool has_seq = std::find(skeletons.begin(), skeletons.end(), Coordination::Sequential) != skeletons.end();
        const bool has_baseline_workers = std::find(worker_counts.begin(), worker_counts.end(),
                                                    opts.baseline_workers) != worker_counts.end();
        if (!has_seq && !has_baseline_workers) {
            throw std::invalid_argument("missing baseline runs: add " + std::to_string(opts.baseline_workers) +
                                        " to --workers or include seq in --skeletons");
        }

        const auto entries = bench::read_manifest(opts.manifest);
        std::vector<Instance> instances;
        for (const auto& e : entries) instances.push_back(load_instance(e.path));

        struct Run {
            const Instance* inst;
            SolverFlags flags;
            std::size_t repeat;
        };
        std::vector<Run> plan;
        for (const auto& inst : instances) {
            for (auto c : skeletons) {
                std::vector<std::size_t> counts = worker_counts;
                if (c == Coordination::Sequential) counts = {1};
                for (auto w : counts) {
                    for (std::size_t rep = 0; rep < opts.repeats; ++rep) {
                        SolverFlags flags = opts.solver;
                        flags.skeleton = std::string(to_string(c));
                        flags.workers = w;
                        flags.seed = opts.solver.seed + rep;
                        flags.cutoff_depth_set = false;
                        flags.backtrack_budget_set = false;
                        plan.push_back({&inst, flags, rep});
                    }
                }
            }
        }

        // Strictly one search at a time so timings do not interfere.
        std::vector<bench::RunRecord> records;
        bool all_proven = true;
        for (std::size_t i = 0; i < plan.size(); ++i) {
            const auto& run = plan[i];
            const auto result = search(*run.inst, make_config(run.flags, err));
            all_proven = all_proven && result.proven_optimal;
            err << '[' << i + 1 << '/' << plan.size() << "] " << run.inst->name() << ' ' << run.flags.skeleton
                << " w=" << result.config_echo.workers << " r=" << run.repeat << ": "
                << result.schedule.makespan << " in " << result.metrics.wall_time.count() << " s\n";
            records.push_back(bench::make_run_record(run.inst->name(), result, run.repeat));
        }
        if (!opts.out.empty()) write_records_csv(opts.out, records, out);

        const auto summary = bench::compute_stats(records, opts.baseline_workers);
        out << std::left << std::setw(20) << "instance" << std::setw(30) << "config" << std::right
            << std::setw(12) << "min_s" << std::setw(12) << "median_s" << std::setw(12) << "max_s"
            << std::setw(10) << "speedup" << '\n';
        for (const auto& cell : summary.cells) {
            out << std::left << std::setw(20) << cell.instance << std::setw(30) << cell.config.label()
                << std::right << std::fixed << std::setprecision(4) << std::setw(12) << cell.time.min
                << std::setw(12) << cell.time.median << std::setw(12) << cell.time.max
                << std::setprecision(2) << std::setw(10) << cell.speedup << '\n'
                << std::defaultfloat;
        }
        out << "geometric-mean speedup per configuration:\n";
        for (const auto& s : summary.speedups) {
            out << "  " << std::left << std::setw(30) << s.config.label() << std::right << std::fixed
                << std::setprecision(2) << s.geometric_mean_speedup << " over " << s.instances
                << " instance(s)\n"
                << std::defaultfloat;
        }

        if (!opts.summary_json.empty()) {
            nlohmann::ordered_json j;
            j["cells"] = nlohmann::ordered_json::array();
            for (const auto& cell : summary.cells) {
                j["cells"].push_back({{"instance", cell.instance},
                                      {"config", cell.config.label()},
                                      {"repeats", cell.repeats},
                                      {"min_seconds", cell.time.min},
                                      {"median_seconds", cell.time.median},
                                      {"max_seconds", cell.time.max},
                                      {"speedup", cell.speedup},
                                      {"baseline", cell.baseline}});
            }
            j["geometric_mean_speedup"] = nlohmann::ordered_json::array();
            for (const auto& s : summary.speedups) {
                j["geometric_mean_speedup"].push_back({{"config", s.config.label()},
                                                       {"instances", s.instances},
                                                       {"speedup", s.geometric_mean_speedup}});
            }
            std::ofstream f(opts.summary_json);
            if (!f) throw std::runtime_error("cannot write '" + opts.summary_json + "'");
            f << j.dump(2) << '\n';
        }
        return all_proven ? kExitProven : kExitUnproven;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

}  // namespace fsbb::cli
