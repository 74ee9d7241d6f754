#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "antdisk/disk_model.hpp"
#include "antdisk/workload.hpp"

namespace antdisk {

// A scheduling policy picks the next task id from the current queue
// snapshot. Policies may keep internal state (scan direction, decision
// counters); reset() is called before each run.
class SchedulerPolicy {
public:
    virtual ~SchedulerPolicy() = default;
    virtual int pick_next(const std::vector<Task>& queue, const HeadState& head,
                          const DiskGeometry& geometry) = 0;
    virtual void reset() {}
};

enum class Outcome { completed, dropped };

struct ExecutionRecord {
    int task_id = 0;
    double start_ms = 0.0;
    double finish_ms = 0.0;
    Outcome outcome = Outcome::completed;
};

struct RunMetrics {
    std::size_t total_tasks = 0;
    std::size_t miss_count = 0;
    std::uint64_t completed_bytes = 0;
    double makespan_ms = 0.0;     // finish of the last completed task
    double throughput_bps = 0.0;  // completed bytes / makespan
    std::vector<double> decision_times_ms; // wall clock per pick_next call
};

inline double throughput_bps(std::uint64_t completed_bytes, double makespan_ms) {
    if (makespan_ms <= 0.0) return 0.0;
    return static_cast<double>(completed_bytes) / (makespan_ms / 1000.0);
}

// The online service loop. Starting at time 0, cylinder 0: admit ready
// tasks, drop every queued task that would miss its deadline even if
// served immediately next, idle forward when the queue empties, and
// otherwise execute whatever the policy picks. Decision wall time is
// measured around pick_next only and never advances the simulated clock.
inline std::pair<std::vector<ExecutionRecord>, RunMetrics>
run(const Problem& problem, SchedulerPolicy& policy, const DiskGeometry& geometry,
    bool measure_decisions = true) {
    const std::size_t n = problem.tasks.size();

    // Pending tasks sorted by ready time; admitted ones move to the queue.
    std::vector<const Task*> pending;
    pending.reserve(n);
    for (const Task& t : problem.tasks) pending.push_back(&t);
    std::sort(pending.begin(), pending.end(), [](const Task* a, const Task* b) {
        if (a->ready_ms != b->ready_ms) return a->ready_ms < b->ready_ms;
        return a->id < b->id;
    });

    std::vector<Task> queue;
    std::vector<ExecutionRecord> records;
    records.reserve(n);
    RunMetrics metrics;
    metrics.total_tasks = n;

    HeadState head;
    std::size_t next_pending = 0;
    std::size_t delivered = 0;

    while (delivered < n) {
        // Admit everything that is ready.
        while (next_pending < pending.size() && pending[next_pending]->ready_ms <= head.time_ms) {
            queue.push_back(*pending[next_pending]);
            ++next_pending;
        }

        // Drop tasks that cannot meet their deadline even if served now.
        for (auto it = queue.begin(); it != queue.end();) {
            if (head.time_ms + service_time(geometry, head, *it) > it->deadline_ms) {
                records.push_back({it->id, head.time_ms, head.time_ms, Outcome::dropped});
                ++metrics.miss_count;
                ++delivered;
                it = queue.erase(it);
            } else {
                ++it;
            }
        }

        if (queue.empty()) {
            if (next_pending < pending.size()) {
                head.time_ms = std::max(head.time_ms, pending[next_pending]->ready_ms);
                continue;
            }
            break;
        }

        int picked_id;
        if (measure_decisions) {
            const auto t0 = std::chrono::steady_clock::now();
            picked_id = policy.pick_next(queue, head, geometry);
            const auto t1 = std::chrono::steady_clock::now();
            metrics.decision_times_ms.push_back(
                std::chrono::duration<double, std::milli>(t1 - t0).count());
        } else {
            picked_id = policy.pick_next(queue, head, geometry);
        }

        auto it = std::find_if(queue.begin(), queue.end(),
                               [picked_id](const Task& t) { return t.id == picked_id; });
        if (it == queue.end()) {
            throw std::logic_error("policy returned a task id not in the queue snapshot");
        }

        const Task task = *it;
        queue.erase(it);

        const double start = std::max(task.ready_ms, head.time_ms);
        const double svc = service_time(geometry, head, task);
        const double finish = start + svc;
        assert(finish <= task.deadline_ms && "drop rule must prevent late completions");

        records.push_back({task.id, start, finish, Outcome::completed});
        metrics.completed_bytes += task.size_bytes;
        metrics.makespan_ms = finish;
        ++delivered;

        head.time_ms = finish;
        head.cylinder = task.cylinder;
    }

    metrics.throughput_bps = throughput_bps(metrics.completed_bytes, metrics.makespan_ms);
    return {std::move(records), std::move(metrics)};
}

} // namespace antdisk
