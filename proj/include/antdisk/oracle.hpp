#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "antdisk/aco.hpp"
#include "antdisk/disk_model.hpp"
#include "antdisk/task.hpp"

namespace antdisk {

// Exhaustive reference optimizer for the static decision problem an ant
// faces: a fixed queue snapshot, no future arrivals. Ground truth for
// the ACO scheduler at small n; the general problem is NP-complete.

struct OracleResult {
    std::vector<std::size_t> best_sequence; // indices into the input task list
    double best_fitness = 0.0;
    int optimal_miss_count = 0;
    std::uint64_t enumerated = 0;
};

// Scores one full visiting order with the same virtual semantics an ant
// uses: a task infeasible at its turn is dropped and counted, a feasible
// one is served and advances the virtual clock and head.
inline AntResult simulate_order(const std::vector<Task>& tasks,
                                const std::vector<std::size_t>& order, const HeadState& head,
                                const DiskGeometry& geometry) {
    AntResult result;
    double time_ms = head.time_ms;
    int cylinder = head.cylinder;
    for (std::size_t idx : order) {
        const Task& t = tasks[idx];
        const double svc = service_time(geometry, HeadState{time_ms, cylinder}, t);
        if (time_ms + svc > t.deadline_ms) {
            ++result.miss_count;
        } else {
            time_ms += svc;
            cylinder = t.cylinder;
            result.sequence.push_back(idx);
        }
    }
    result.virtual_finish_ms = time_ms;
    result.makespan_ms = time_ms - head.time_ms;
    return result;
}

inline OracleResult oracle_solve(const std::vector<Task>& tasks, const HeadState& head,
                                 const DiskGeometry& geometry) {
    if (tasks.empty()) throw std::invalid_argument("oracle_solve: empty task list");
    if (tasks.size() > 9) {
        throw std::invalid_argument("oracle_solve: refusing n > 9 (factorial blowup)");
    }

    double worst_deadline = tasks.front().deadline_ms;
    for (const Task& t : tasks) worst_deadline = std::max(worst_deadline, t.deadline_ms);

    std::vector<std::size_t> order(tasks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    OracleResult result;
    result.best_fitness = std::numeric_limits<double>::infinity();

    // next_permutation walks orders lexicographically, so keeping the
    // first strict minimum breaks ties toward the smallest sequence.
    do {
        AntResult outcome = simulate_order(tasks, order, head, geometry);
        const double fit = aco_fitness(outcome, worst_deadline);
        ++result.enumerated;
        if (fit < result.best_fitness) {
            result.best_fitness = fit;
            result.best_sequence = order;
            result.optimal_miss_count = outcome.miss_count;
        }
    } while (std::next_permutation(order.begin(), order.end()));

    return result;
}

} // namespace antdisk
