// Command-line front end: solve, verify, oracle, sweep, bench.

#include <iostream>

#include <CLI11.hpp>

#include "fsbb/cli/commands.hpp"

namespace {

void add_solver_flags(CLI::App* cmd, fsbb::cli::SolverFlags& flags, bool with_skeleton = true) {
    if (with_skeleton) {
        cmd->add_option("--skeleton", flags.skeleton, "seq | depthbounded | budget | stackstealing")
            ->capture_default_str();
        cmd->add_option("--workers", flags.workers, "worker threads (0 = hardware parallelism)")
            ->capture_default_str();
    }
    cmd->add_option_function<std::size_t>(
        "--cutoff-depth",
        [&flags](std::size_t d) {
            flags.cutoff_depth = d;
            flags.cutoff_depth_set = true;
        },
        "DepthBounded spawn depth (default 5)");
    cmd->add_option_function<std::uint64_t>(
        "--backtrack-budget",
        [&flags](std::uint64_t b) {
            flags.backtrack_budget = b;
            flags.backtrack_budget_set = true;
        },
        "Budget backtracks before spilling (default 50000)");
    cmd->add_option("--seed", flags.seed, "victim-selection seed")->capture_default_str();
    cmd->add_option_function<double>(
        "--time-limit", [&flags](double s) { flags.time_limit = s; }, "wall-clock limit in seconds");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace fsbb::cli;

    CLI::App app{"Exact parallel branch-and-bound for the permutation flowshop"};
    app.require_subcommand(1);

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
    solve_cmd->add_option("--instance", solve.instance, "instance file (.fsp)")->required();
    add_solver_flags(solve_cmd, solve.solver);
    solve_cmd->add_option("--output", solve.output, "text | json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "check proven makespans against a manifest");
    verify_cmd->add_option("--manifest", verify.manifest, "CSV: instance,expected_makespan")->required();
    add_solver_flags(verify_cmd, verify.solver);

    OracleOptions oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "generate random instances with exhaustive optima");
    oracle_cmd->add_option("--count", oracle.count)->capture_default_str();
    oracle_cmd->add_option("--jobs", oracle.jobs, "range lo-hi")->capture_default_str();
    oracle_cmd->add_option("--machines", oracle.machines, "range lo-hi")->capture_default_str();
    oracle_cmd->add_option("--max-time", oracle.max_time)->capture_default_str();
    oracle_cmd->add_option("--seed", oracle.seed)->capture_default_str();
    oracle_cmd->add_option("--out", oracle.out_dir, "output directory")->required();

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "runtime versus cutoff depth or backtrack budget");
    sweep_cmd->add_option("--instance", sweep.instance)->required();
    sweep_cmd->add_option("--values", sweep.values, "comma-separated parameter values")->required();
    sweep_cmd->add_option("--repeats", sweep.repeats)->capture_default_str();
    sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");
    add_solver_flags(sweep_cmd, sweep.solver);

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "benchmark skeletons and worker counts");
    bench_cmd->add_option("--manifest", bench.manifest)->required();
    bench_cmd->add_option("--skeletons", bench.skeletons, "comma-separated")->capture_default_str();
    bench_cmd->add_option("--workers", bench.workers, "comma-separated worker counts")->capture_default_str();
    bench_cmd->add_option("--repeats", bench.repeats)->capture_default_str();
    bench_cmd->add_option("--baseline-workers", bench.baseline_workers)->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "RunRecord CSV path");
    bench_cmd->add_option("--summary-json", bench.summary_json, "summary JSON path");
    add_solver_flags(bench_cmd, bench.solver, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    if (*solve_cmd) return run_solve(solve, std::cout, std::cerr);
    if (*verify_cmd) return run_verify(verify, std::cout, std::cerr);
    if (*oracle_cmd) return run_oracle(oracle, std::cout, std::cerr);
    if (*sweep_cmd) return run_sweep(sweep, std::cout, std::cerr);
    return run_bench(bench, std::cout, std::cerr);
}
