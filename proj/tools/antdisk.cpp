// antdisk: real-time disk scheduling testbed CLI.
//
// Subcommands:
//   gen     generate a seeded workload file (JSON Lines)
//   run     run one scheduler over a workload, emit per-run CSV
//   bench   run a scheduler suite, emit raw + aggregate CSVs and SVG charts
//   oracle  compare ACO results against exhaustive search on small problems
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "antdisk/bench.hpp"
#include "antdisk/oracle.hpp"

namespace fs = std::filesystem;
using namespace antdisk;

namespace {

struct CommonOpts {
    std::string geometry_path;
    std::string rotation_mode;

    DiskGeometry geometry() const {
        DiskGeometry g;
        if (!geometry_path.empty()) {
            std::ifstream in(geometry_path);
            if (!in) throw std::runtime_error("cannot open geometry file: " + geometry_path);
            nlohmann::json j;
            in >> j;
            g = geometry_from_json(j);
        }
        if (!rotation_mode.empty()) g.rotation_mode = rotation_mode_from_string(rotation_mode);
        return g;
    }
};

void add_common_opts(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--geometry", opts.geometry_path, "Disk geometry JSON file");
    cmd->add_option("--rotation-mode", opts.rotation_mode, "angular|fixed-half")
        ->check(CLI::IsMember({"angular", "fixed-half", "fixed_half"}));
}

void add_aco_opts(CLI::App* cmd, AcoParams& p) {
    cmd->add_option("--alpha", p.alpha, "Pheromone exponent");
    cmd->add_option("--beta", p.beta, "Heuristic exponent");
    cmd->add_option("--rho", p.rho, "Pheromone retention factor");
    cmd->add_option("--gamma", p.gamma, "Seek/slack mix in the heuristic");
    cmd->add_option("--tau-min", p.tau_min, "Pheromone lower bound");
    cmd->add_option("--tau-max", p.tau_max, "Pheromone upper bound");
    cmd->add_option("--patience", p.convergence_patience, "Convergence patience (iterations)");
}

std::string default_out_dir() {
    if (const char* env = std::getenv("ANTDISK_OUT_DIR")) return env;
    return "antdisk-out";
}

WorkloadSpec spec_from_flags(const std::string& testset, int n_tasks, double ready_max,
                             int problems, double period_min, double period_max,
                             std::uint64_t size, std::uint64_t seed) {
    WorkloadSpec spec;
    if (!testset.empty()) spec = builtin_spec(testset);
    if (n_tasks > 0) spec.n_tasks = n_tasks;
    if (ready_max >= 0.0) spec.ready_max_ms = ready_max;
    if (problems > 0) spec.n_problems = problems;
    spec.period_min_ms = period_min;
    spec.period_max_ms = period_max;
    spec.size_bytes = size;
    spec.seed = seed;
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"antdisk: real-time disk scheduling testbed"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen_cmd = app.add_subcommand("gen", "Generate a workload file");
    std::string gen_testset, gen_out = "workload.jsonl";
    int gen_tasks = 0, gen_problems = 0;
    double gen_ready_max = -1.0, gen_period_min = 100.0, gen_period_max = 300.0;
    std::uint64_t gen_size = 36 * kKiB, gen_seed = 0;
    CommonOpts gen_common;
    gen_cmd->add_option("--testset", gen_testset, "Built-in test set: tc1|tc2|tc3")
        ->check(CLI::IsMember({"tc1", "tc2", "tc3"}));
    gen_cmd->add_option("--tasks", gen_tasks, "Tasks per problem (overrides testset)");
    gen_cmd->add_option("--ready-max", gen_ready_max, "Ready-time upper bound (ms)");
    gen_cmd->add_option("--problems", gen_problems, "Number of problems (overrides testset)");
    gen_cmd->add_option("--period-min", gen_period_min, "Period lower bound (ms)");
    gen_cmd->add_option("--period-max", gen_period_max, "Period upper bound (ms)");
    gen_cmd->add_option("--size", gen_size, "Request size in bytes");
    gen_cmd->add_option("--seed", gen_seed, "RNG seed");
    gen_cmd->add_option("--out", gen_out, "Output JSONL path");
    add_common_opts(gen_cmd, gen_common);

    // --- run ---
    auto* run_cmd = app.add_subcommand("run", "Run one scheduler over a workload");
    std::string run_workload, run_scheduler, run_out;
    int run_repeats = 100;
    unsigned run_threads = 0;
    std::uint64_t run_seed = 0;
    AcoParams run_aco;
    CommonOpts run_common;
    run_cmd->add_option("--workload", run_workload, "Workload JSONL file")->required();
    run_cmd->add_option("--scheduler", run_scheduler, "fifo|edf|sstf|scan|cscan|look|clook|scanedf|aco")
        ->required();
    run_cmd->add_option("--repeats", run_repeats, "Repeats per problem (stochastic schedulers)");
    run_cmd->add_option("--seed", run_seed, "RNG seed");
    run_cmd->add_option("--threads", run_threads, "Worker threads (0 = hardware)");
    run_cmd->add_option("--out", run_out, "Output CSV path (default stdout)");
    add_aco_opts(run_cmd, run_aco);
    add_common_opts(run_cmd, run_common);

    // --- bench ---
    auto* bench_cmd = app.add_subcommand("bench", "Full benchmark: suite + aggregates + plots");
    std::string bench_testset = "tc1", bench_workload, bench_outdir = default_out_dir();
    std::vector<std::string> bench_schedulers = all_scheduler_names();
    int bench_problems = 100, bench_repeats = 100;
    bool bench_full = false, bench_skip_latency = false;
    unsigned bench_threads = 0;
    std::uint64_t bench_seed = 0;
    double bench_period_min = 100.0, bench_period_max = 300.0;
    AcoParams bench_aco;
    CommonOpts bench_common;
    bench_cmd->add_option("--testset", bench_testset, "Built-in test set: tc1|tc2|tc3")
        ->check(CLI::IsMember({"tc1", "tc2", "tc3"}));
    bench_cmd->add_option("--workload", bench_workload, "Use this workload file instead of --testset");
    bench_cmd->add_option("--schedulers", bench_schedulers, "Schedulers to run")->delimiter(',');
    bench_cmd->add_option("--problems", bench_problems, "Problems per test set (desk scale default 100)");
    bench_cmd->add_flag("--full", bench_full, "Use the full 1000 problems");
    bench_cmd->add_option("--repeats", bench_repeats, "Repeats per problem for stochastic schedulers");
    bench_cmd->add_option("--seed", bench_seed, "RNG seed");
    bench_cmd->add_option("--threads", bench_threads, "Worker threads (0 = hardware)");
    bench_cmd->add_option("--out-dir", bench_outdir, "Output directory (env ANTDISK_OUT_DIR)");
    bench_cmd->add_option("--period-min", bench_period_min, "Period lower bound (ms)");
    bench_cmd->add_option("--period-max", bench_period_max, "Period upper bound (ms)");
    bench_cmd->add_flag("--skip-latency-curve", bench_skip_latency,
                        "Skip the decision-time-vs-queue-size measurement");
    add_aco_opts(bench_cmd, bench_aco);
    add_common_opts(bench_cmd, bench_common);

    // --- oracle ---
    auto* oracle_cmd = app.add_subcommand("oracle", "Audit ACO against exhaustive search");
    std::string oracle_workload, oracle_out;
    bool oracle_truncate = false;
    std::uint64_t oracle_seed = 0;
    AcoParams oracle_aco;
    CommonOpts oracle_common;
    oracle_cmd->add_option("--workload", oracle_workload, "Workload JSONL file")->required();
    oracle_cmd->add_flag("--truncate", oracle_truncate, "Truncate each problem to its first 9 tasks");
    oracle_cmd->add_option("--seed", oracle_seed, "ACO seed");
    oracle_cmd->add_option("--out", oracle_out, "Output CSV path (default stdout)");
    add_aco_opts(oracle_cmd, oracle_aco);
    add_common_opts(oracle_cmd, oracle_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (gen_cmd->parsed()) {
            if (gen_testset.empty() && gen_tasks == 0) {
                std::cerr << "gen: need --testset or --tasks\n";
                return 1;
            }
            const DiskGeometry geometry = gen_common.geometry();
            WorkloadSpec spec = spec_from_flags(gen_testset, gen_tasks, gen_ready_max,
                                                gen_problems, gen_period_min, gen_period_max,
                                                gen_size, gen_seed);
            const auto problems = generate(spec, geometry);
            save(problems, gen_out);
            std::cout << "wrote " << problems.size() << " problems to " << gen_out << '\n';
        } else if (run_cmd->parsed()) {
            const DiskGeometry geometry = run_common.geometry();
            const auto problems = load(run_workload);
            const auto rows = run_suite(problems, run_scheduler, run_repeats, run_seed, run_aco,
                                        geometry, run_threads);
            if (run_out.empty()) {
                write_raw_csv(rows, std::cout, /*include_timing=*/true);
            } else {
                std::ofstream out(run_out);
                if (!out) throw std::runtime_error("cannot open output: " + run_out);
                write_raw_csv(rows, out, /*include_timing=*/true);
            }
        } else if (bench_cmd->parsed()) {
            const DiskGeometry geometry = bench_common.geometry();
            std::vector<Problem> problems;
            std::string testset_label;
            if (!bench_workload.empty()) {
                problems = load(bench_workload);
                testset_label = fs::path(bench_workload).stem().string();
            } else {
                WorkloadSpec spec = builtin_spec(bench_testset);
                spec.seed = bench_seed;
                spec.period_min_ms = bench_period_min;
                spec.period_max_ms = bench_period_max;
                if (!bench_full) spec.n_problems = bench_problems;
                problems = generate(spec, geometry);
                testset_label = bench_testset;
            }

            fs::create_directories(bench_outdir);
            std::vector<AggregateRow> aggregates;
            bool any_failed = false;
            for (const std::string& scheduler : bench_schedulers) {
                try {
                    const auto rows = run_suite(problems, scheduler, bench_repeats, bench_seed,
                                                bench_aco, geometry, bench_threads);
                    const fs::path raw_path =
                        fs::path(bench_outdir) / ("raw_" + scheduler + "_" + testset_label + ".csv");
                    std::ofstream raw(raw_path);
                    if (!raw) throw std::runtime_error("cannot open " + raw_path.string());
                    write_raw_csv(rows, raw, /*include_timing=*/false);
                    aggregates.push_back(aggregate(rows, scheduler, testset_label));
                    std::cout << scheduler << ": " << rows.size() << " runs, mean miss ratio "
                              << format_double(aggregates.back().mean_miss_ratio) << '\n';
                } catch (const std::exception& e) {
                    std::cerr << "bench: scheduler " << scheduler << " failed: " << e.what()
                              << " (partial results kept)\n";
                    any_failed = true;
                }
            }

            {
                std::ofstream agg(fs::path(bench_outdir) / ("aggregate_" + testset_label + ".csv"));
                write_aggregate_csv(aggregates, agg);
            }
            std::vector<std::string> labels;
            std::vector<double> miss, tput, dtime;
            for (const auto& a : aggregates) {
                labels.push_back(a.scheduler);
                miss.push_back(a.mean_miss_ratio);
                tput.push_back(a.mean_throughput_36kbps);
                dtime.push_back(a.mean_decision_ms);
            }
            write_bar_chart_svg((fs::path(bench_outdir) / ("miss_ratio_" + testset_label + ".svg")).string(),
                                "Average miss ratio (" + testset_label + ")", labels, miss);
            write_bar_chart_svg((fs::path(bench_outdir) / ("throughput_" + testset_label + ".svg")).string(),
                                "Average throughput, 36KB/s units (" + testset_label + ")", labels, tput);
            write_bar_chart_svg((fs::path(bench_outdir) / ("decision_time_" + testset_label + ".svg")).string(),
                                "Mean decision time, ms (" + testset_label + ")", labels, dtime);

            if (!bench_skip_latency) {
                const auto curve = measure_latency_curve({10, 20, 30, 40, 50}, geometry,
                                                         bench_aco, bench_seed);
                std::ofstream csv(fs::path(bench_outdir) / "latency_curve.csv");
                write_latency_csv(curve, csv);
                std::vector<double> xs, ys;
                for (const auto& p : curve) {
                    xs.push_back(p.queue_size);
                    ys.push_back(p.mean_decision_ms);
                }
                write_line_chart_svg((fs::path(bench_outdir) / "latency_curve.svg").string(),
                                     "ACO decision time vs queue size", xs, ys);
            }
            if (any_failed) return 2;
        } else if (oracle_cmd->parsed()) {
            const DiskGeometry geometry = oracle_common.geometry();
            auto problems = load(oracle_workload);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!oracle_out.empty()) {
                file.open(oracle_out);
                if (!file) throw std::runtime_error("cannot open output: " + oracle_out);
                out = &file;
            }
            *out << "problem_id,n_tasks,oracle_fitness,aco_fitness,ratio,oracle_miss,aco_miss\n";
            for (Problem& p : problems) {
                if (p.tasks.size() > 9) {
                    if (!oracle_truncate) {
                        throw std::runtime_error("problem " + std::to_string(p.id) +
                                                 " has more than 9 tasks; pass --truncate");
                    }
                    p.tasks.resize(9);
                }
                if (p.tasks.empty()) continue;
                const HeadState head;
                const OracleResult oracle = oracle_solve(p.tasks, head, geometry);
                AcoParams params = oracle_aco;
                params.seed = derive_seed(oracle_seed, static_cast<std::uint64_t>(p.id));
                const AntResult best = aco_best_order(p.tasks, head, geometry, params);
                const double ratio =
                    oracle.best_fitness > 0.0 ? best.fitness / oracle.best_fitness : 1.0;
                *out << p.id << ',' << p.tasks.size() << ',' << format_double(oracle.best_fitness)
                     << ',' << format_double(best.fitness) << ',' << format_double(ratio) << ','
                     << oracle.optimal_miss_count << ',' << best.miss_count << '\n';
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
