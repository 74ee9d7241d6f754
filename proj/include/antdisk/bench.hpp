#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "antdisk/aco.hpp"
#include "antdisk/baselines.hpp"
#include "antdisk/sim_engine.hpp"
#include "antdisk/workload.hpp"

namespace antdisk {

inline constexpr double kThroughputUnitBytes = 36.0 * 1024.0; // "36KB/s" reporting unit

inline const std::vector<std::string>& all_scheduler_names() {
    static const std::vector<std::string> names = {
        "fifo", "edf", "sstf", "scan", "cscan", "look", "clook", "scanedf", "aco"};
    return names;
}

inline bool is_stochastic_scheduler(const std::string& name) { return name == "aco"; }

inline std::unique_ptr<SchedulerPolicy> make_policy(const std::string& name,
                                                    const AcoParams& aco_params,
                                                    AcoStats* stats = nullptr) {
    if (name == "fifo") return std::make_unique<FifoPolicy>();
    if (name == "edf") return std::make_unique<EdfPolicy>();
    if (name == "sstf") return std::make_unique<SstfPolicy>();
    if (name == "scan") return std::make_unique<ScanPolicy>(ScanVariant::scan);
    if (name == "cscan") return std::make_unique<ScanPolicy>(ScanVariant::cscan);
    if (name == "look") return std::make_unique<ScanPolicy>(ScanVariant::look);
    if (name == "clook") return std::make_unique<ScanPolicy>(ScanVariant::clook);
    if (name == "scanedf") return std::make_unique<ScanEdfPolicy>();
    if (name == "aco") return std::make_unique<AcoPolicy>(aco_params, stats);
    std::string valid;
    for (const auto& n : all_scheduler_names()) valid += (valid.empty() ? "" : "|") + n;
    throw std::invalid_argument("unknown scheduler: " + name + " (valid: " + valid + ")");
}

// One simulated run of one problem under one scheduler.
struct RunRow {
    int problem_id = 0;
    std::string scheduler;
    int repeat = 0;
    std::size_t miss_count = 0;
    std::size_t total_tasks = 0;
    double miss_ratio = 0.0;
    std::uint64_t completed_bytes = 0;
    double makespan_ms = 0.0;
    double throughput_bps = 0.0;
    double mean_decision_ms = 0.0;
    std::size_t decisions = 0;
};

// Shortest round-trip decimal form; identical bytes for identical values.
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline RunRow run_one(const Problem& problem, const std::string& scheduler,
                      const AcoParams& aco_params, int repeat, const DiskGeometry& geometry,
                      bool measure_decisions = true, AcoStats* stats = nullptr) {
    auto policy = make_policy(scheduler, aco_params, stats);
    policy->reset();
    auto [records, metrics] = run(problem, *policy, geometry, measure_decisions);
    RunRow row;
    row.problem_id = problem.id;
    row.scheduler = scheduler;
    row.repeat = repeat;
    row.miss_count = metrics.miss_count;
    row.total_tasks = metrics.total_tasks;
    row.miss_ratio = metrics.total_tasks == 0
                         ? 0.0
                         : static_cast<double>(metrics.miss_count) /
                               static_cast<double>(metrics.total_tasks);
    row.completed_bytes = metrics.completed_bytes;
    row.makespan_ms = metrics.makespan_ms;
    row.throughput_bps = metrics.throughput_bps;
    row.decisions = metrics.decision_times_ms.size();
    if (!metrics.decision_times_ms.empty()) {
        double total = 0.0;
        for (double d : metrics.decision_times_ms) total += d;
        row.mean_decision_ms = total / static_cast<double>(metrics.decision_times_ms.size());
    }
    return row;
}

// Runs every (problem, repeat) pair for one scheduler, fanned out over
// worker threads. Rows land in preassigned slots so the output order and
// every simulated value are independent of the worker count; only the
// wall-clock decision timings vary between executions.
inline std::vector<RunRow> run_suite(const std::vector<Problem>& problems,
                                     const std::string& scheduler, int repeats,
                                     std::uint64_t seed, const AcoParams& aco_defaults,
                                     const DiskGeometry& geometry, unsigned threads = 0) {
    if (repeats < 1) throw std::invalid_argument("run_suite: repeats must be >= 1");
    const int effective_repeats = is_stochastic_scheduler(scheduler) ? repeats : 1;

    std::vector<RunRow> rows(problems.size() * static_cast<std::size_t>(effective_repeats));
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t job = next.fetch_add(1);
            if (job >= rows.size()) return;
            const std::size_t p = job / static_cast<std::size_t>(effective_repeats);
            const int r = static_cast<int>(job % static_cast<std::size_t>(effective_repeats));
            AcoParams params = aco_defaults;
            params.seed = derive_seed(seed, static_cast<std::uint64_t>(problems[p].id),
                                      static_cast<std::uint64_t>(r));
            rows[job] = run_one(problems[p], scheduler, params, r, geometry);
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

// Raw per-run CSV. Timing columns are opt-in: they are wall-clock
// measurements and would break byte-identical reproducibility.
inline void write_raw_csv(const std::vector<RunRow>& rows, std::ostream& out,
                          bool include_timing) {
    out << "problem_id,scheduler,repeat,miss_count,total_tasks,miss_ratio,completed_bytes,"
           "makespan_ms,throughput_bps";
    if (include_timing) out << ",mean_decision_ms";
    out << '\n';
    for (const RunRow& r : rows) {
        out << r.problem_id << ',' << r.scheduler << ',' << r.repeat << ',' << r.miss_count
            << ',' << r.total_tasks << ',' << format_double(r.miss_ratio) << ','
            << r.completed_bytes << ',' << format_double(r.makespan_ms) << ','
            << format_double(r.throughput_bps);
        if (include_timing) out << ',' << format_double(r.mean_decision_ms);
        out << '\n';
    }
}

struct AggregateRow {
    std::string scheduler;
    std::string testset;
    std::size_t runs = 0;
    double mean_miss_ratio = 0.0;
    double mean_throughput_bps = 0.0;
    double mean_throughput_36kbps = 0.0;
    double mean_makespan_ms = 0.0;
    double mean_decision_ms = 0.0;
    double median_decision_ms = 0.0;
};

inline AggregateRow aggregate(const std::vector<RunRow>& rows, const std::string& scheduler,
                              const std::string& testset) {
    AggregateRow agg;
    agg.scheduler = scheduler;
    agg.testset = testset;
    agg.runs = rows.size();
    if (rows.empty()) return agg;
    std::vector<double> decision_means;
    decision_means.reserve(rows.size());
    for (const RunRow& r : rows) {
        agg.mean_miss_ratio += r.miss_ratio;
        agg.mean_throughput_bps += r.throughput_bps;
        agg.mean_makespan_ms += r.makespan_ms;
        decision_means.push_back(r.mean_decision_ms);
    }
    const auto n = static_cast<double>(rows.size());
    agg.mean_miss_ratio /= n;
    agg.mean_throughput_bps /= n;
    agg.mean_throughput_36kbps = agg.mean_throughput_bps / kThroughputUnitBytes;
    agg.mean_makespan_ms /= n;
    for (double d : decision_means) agg.mean_decision_ms += d;
    agg.mean_decision_ms /= n;
    std::sort(decision_means.begin(), decision_means.end());
    agg.median_decision_ms = decision_means[decision_means.size() / 2];
    return agg;
}

inline void write_aggregate_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
    out << "scheduler,testset,runs,mean_miss_ratio,mean_throughput_bps,mean_throughput_36kbps,"
           "mean_makespan_ms,mean_decision_ms,median_decision_ms\n";
    for (const AggregateRow& r : rows) {
        out << r.scheduler << ',' << r.testset << ',' << r.runs << ','
            << format_double(r.mean_miss_ratio) << ',' << format_double(r.mean_throughput_bps)
            << ',' << format_double(r.mean_throughput_36kbps) << ','
            << format_double(r.mean_makespan_ms) << ',' << format_double(r.mean_decision_ms)
            << ',' << format_double(r.median_decision_ms) << '\n';
    }
}

// --- plotting -------------------------------------------------------------

// Minimal static SVG output; both charts are pure functions of the
// aggregate data and can be regenerated offline from the CSVs.

inline void write_bar_chart_svg(const std::string& path, const std::string& title,
                                const std::vector<std::string>& labels,
                                const std::vector<double>& values) {
    if (labels.size() != values.size()) {
        throw std::invalid_argument("bar chart: labels/values size mismatch");
    }
    const double width = 640, height = 400, margin = 60;
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plot: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    const double plot_w = width - 2 * margin;
    const double plot_h = height - 2 * margin;
    const double slot = labels.empty() ? plot_w : plot_w / static_cast<double>(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double h = values[i] / vmax * plot_h;
        const double x = margin + static_cast<double>(i) * slot + slot * 0.15;
        const double y = height - margin - h;
        out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << slot * 0.7
            << "\" height=\"" << h << "\" fill=\"#4a7dbd\"/>\n";
        out << "<text x=\"" << x + slot * 0.35 << "\" y=\"" << height - margin + 16
            << "\" text-anchor=\"middle\" font-size=\"11\">" << labels[i] << "</text>\n";
        out << "<text x=\"" << x + slot * 0.35 << "\" y=\"" << y - 4
            << "\" text-anchor=\"middle\" font-size=\"10\">" << format_double(values[i])
            << "</text>\n";
    }
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "</svg>\n";
}

inline void write_line_chart_svg(const std::string& path, const std::string& title,
                                 const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.empty()) {
        throw std::invalid_argument("line chart: bad series");
    }
    const double width = 640, height = 400, margin = 60;
    double xmax = xs.front(), ymax = 0.0;
    for (double x : xs) xmax = std::max(xmax, x);
    for (double y : ys) ymax = std::max(ymax, y);
    if (xmax <= 0.0) xmax = 1.0;
    if (ymax <= 0.0) ymax = 1.0;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plot: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#bd4a4a\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = margin + xs[i] / xmax * (width - 2 * margin);
        const double py = height - margin - ys[i] / ymax * (height - 2 * margin);
        out << px << ',' << py << ' ';
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = margin + xs[i] / xmax * (width - 2 * margin);
        out << "<text x=\"" << px << "\" y=\"" << height - margin + 16
            << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(xs[i])
            << "</text>\n";
    }
    out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
        << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    out << "</svg>\n";
}

// --- decision latency curve ------------------------------------------------

struct LatencyPoint {
    int queue_size = 0;
    double mean_decision_ms = 0.0;
};

// Mean wall time of one ACO pick over static queues of each size.
// Tasks are all ready at time 0 with the default period range, so every
// queue member is feasible at the first decision.
inline std::vector<LatencyPoint> measure_latency_curve(const std::vector<int>& sizes,
                                                       const DiskGeometry& geometry,
                                                       const AcoParams& aco_defaults,
                                                       std::uint64_t seed, int trials = 10) {
    std::vector<LatencyPoint> curve;
    curve.reserve(sizes.size());
    for (int n : sizes) {
        WorkloadSpec spec;
        spec.n_tasks = n;
        spec.ready_max_ms = 0.0;
        spec.seed = derive_seed(seed, static_cast<std::uint64_t>(n));
        spec.n_problems = trials;
        double total_ms = 0.0;
        for (const Problem& p : generate(spec, geometry)) {
            AcoParams params = aco_defaults;
            params.seed = derive_seed(seed, static_cast<std::uint64_t>(n),
                                      static_cast<std::uint64_t>(p.id));
            const auto t0 = std::chrono::steady_clock::now();
            (void)get_next_task(p.tasks, HeadState{}, geometry, params);
            const auto t1 = std::chrono::steady_clock::now();
            total_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
        curve.push_back({n, total_ms / static_cast<double>(trials)});
    }
    return curve;
}

inline void write_latency_csv(const std::vector<LatencyPoint>& curve, std::ostream& out) {
    out << "queue_size,mean_decision_ms\n";
    for (const LatencyPoint& p : curve) {
        out << p.queue_size << ',' << format_double(p.mean_decision_ms) << '\n';
    }
}

} // namespace antdisk
