#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "antdisk/disk_model.hpp"
#include "antdisk/rng.hpp"
#include "antdisk/task.hpp"

namespace antdisk {

// Parameters for one randomly generated test set. Deadlines are
// ready + period with period uniform in [period_min, period_max].
struct WorkloadSpec {
    int n_tasks = 20;
    double ready_max_ms = 160.0;
    double period_min_ms = 100.0;
    double period_max_ms = 300.0;
    std::uint64_t size_bytes = 36 * kKiB;
    std::uint64_t seed = 0;
    int n_problems = 1000;

    void validate() const {
        if (n_tasks <= 0) throw std::invalid_argument("workload: n_tasks must be positive");
        if (ready_max_ms < 0.0) throw std::invalid_argument("workload: ready_max must be >= 0");
        if (period_min_ms <= 0.0 || period_min_ms > period_max_ms) {
            throw std::invalid_argument("workload: need 0 < period_min <= period_max");
        }
        if (n_problems <= 0) throw std::invalid_argument("workload: n_problems must be positive");
        if (size_bytes == 0) throw std::invalid_argument("workload: size must be positive");
    }
};

struct Problem {
    int id = 0;
    std::vector<Task> tasks;

    bool operator==(const Problem&) const = default;
};

// Built-in test sets: 36 KiB requests, ready times uniform in the
// given range, 1000 problems each.
inline WorkloadSpec builtin_spec(const std::string& name) {
    WorkloadSpec spec;
    if (name == "tc1") {
        spec.n_tasks = 20;
        spec.ready_max_ms = 160.0;
    } else if (name == "tc2") {
        spec.n_tasks = 30;
        spec.ready_max_ms = 240.0;
    } else if (name == "tc3") {
        spec.n_tasks = 50;
        spec.ready_max_ms = 400.0;
    } else {
        throw std::invalid_argument("unknown test set: " + name + " (expected tc1|tc2|tc3)");
    }
    return spec;
}

// Each problem gets its own SplitMix64 stream derived from
// (seed, problem id), so any single problem is reproducible on its own.
inline Problem generate_problem(const WorkloadSpec& spec, const DiskGeometry& geometry,
                                int problem_id) {
    SplitMix64 rng(derive_seed(spec.seed, static_cast<std::uint64_t>(problem_id)));
    Problem problem;
    problem.id = problem_id;
    problem.tasks.reserve(static_cast<std::size_t>(spec.n_tasks));
    for (int i = 0; i < spec.n_tasks; ++i) {
        Task t;
        t.id = i;
        t.ready_ms = rng.uniform(0.0, spec.ready_max_ms);
        t.deadline_ms = t.ready_ms + rng.uniform(spec.period_min_ms, spec.period_max_ms);
        t.cylinder = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(geometry.cylinders)));
        t.sector = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(geometry.sectors_per_track)));
        t.size_bytes = spec.size_bytes;
        problem.tasks.push_back(t);
    }
    return problem;
}

inline std::vector<Problem> generate(const WorkloadSpec& spec, const DiskGeometry& geometry) {
    spec.validate();
    geometry.validate();
    std::vector<Problem> problems;
    problems.reserve(static_cast<std::size_t>(spec.n_problems));
    for (int p = 0; p < spec.n_problems; ++p) {
        problems.push_back(generate_problem(spec, geometry, p));
    }
    return problems;
}

// JSON Lines, one problem per line:
// {"id": int, "tasks": [{"id","ready_ms","deadline_ms","cylinder","sector","size_bytes"}]}
inline void save(const std::vector<Problem>& problems, std::ostream& out) {
    for (const Problem& p : problems) {
        nlohmann::json jtasks = nlohmann::json::array();
        for (const Task& t : p.tasks) {
            jtasks.push_back({{"id", t.id},
                              {"ready_ms", t.ready_ms},
                              {"deadline_ms", t.deadline_ms},
                              {"cylinder", t.cylinder},
                              {"sector", t.sector},
                              {"size_bytes", t.size_bytes}});
        }
        nlohmann::json j{{"id", p.id}, {"tasks", std::move(jtasks)}};
        out << j.dump() << '\n';
    }
}

inline void save(const std::vector<Problem>& problems, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save(problems, out);
}

inline std::vector<Problem> load(std::istream& in) {
    std::vector<Problem> problems;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            nlohmann::json j = nlohmann::json::parse(line);
            Problem p;
            p.id = j.at("id").get<int>();
            for (const auto& jt : j.at("tasks")) {
                Task t;
                t.id = jt.at("id").get<int>();
                t.ready_ms = jt.at("ready_ms").get<double>();
                t.deadline_ms = jt.at("deadline_ms").get<double>();
                t.cylinder = jt.at("cylinder").get<int>();
                t.sector = jt.at("sector").get<int>();
                t.size_bytes = jt.at("size_bytes").get<std::uint64_t>();
                p.tasks.push_back(t);
            }
            problems.push_back(std::move(p));
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("workload parse error at line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
    return problems;
}

inline std::vector<Problem> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open workload file: " + path);
    return load(in);
}

} // namespace antdisk
