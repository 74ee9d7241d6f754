#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "antdisk/sim_engine.hpp"

namespace antdisk {

// All tie-breaks in this file resolve to lower cylinder, then lower id,
// so independent reimplementations can match picks exactly.

namespace detail {

inline bool better_by_cylinder_then_id(const Task& a, const Task& b) {
    if (a.cylinder != b.cylinder) return a.cylinder < b.cylinder;
    return a.id < b.id;
}

} // namespace detail

inline int fifo_pick(const std::vector<Task>& queue) {
    if (queue.empty()) throw std::invalid_argument("fifo_pick: empty queue");
    const Task* best = &queue.front();
    for (const Task& t : queue) {
        if (t.ready_ms < best->ready_ms ||
            (t.ready_ms == best->ready_ms && t.id < best->id)) {
            best = &t;
        }
    }
    return best->id;
}

inline int edf_pick(const std::vector<Task>& queue) {
    if (queue.empty()) throw std::invalid_argument("edf_pick: empty queue");
    const Task* best = &queue.front();
    for (const Task& t : queue) {
        if (t.deadline_ms < best->deadline_ms ||
            (t.deadline_ms == best->deadline_ms && t.id < best->id)) {
            best = &t;
        }
    }
    return best->id;
}

inline int sstf_pick(const std::vector<Task>& queue, const HeadState& head) {
    if (queue.empty()) throw std::invalid_argument("sstf_pick: empty queue");
    const Task* best = nullptr;
    int best_dist = std::numeric_limits<int>::max();
    for (const Task& t : queue) {
        const int dist = std::abs(t.cylinder - head.cylinder);
        if (dist < best_dist ||
            (dist == best_dist && detail::better_by_cylinder_then_id(t, *best))) {
            best = &t;
            best_dist = dist;
        }
    }
    return best->id;
}

enum class ScanVariant { scan, cscan, look, clook };

struct ScanState {
    bool moving_up = true; // initial direction is up from cylinder 0
};

// Elevator family. SCAN/LOOK serve the nearest pending request in the
// current direction and reverse when none remain there; the circular
// variants always sweep upward and wrap to the lowest pending cylinder.
// With seek cost a function of |cylinder distance| only, SCAN's travel
// to the disk edge and C-SCAN's pass through cylinder 0 add no extra
// charge beyond the move to the picked task.
inline int scan_family_pick(const std::vector<Task>& queue, const HeadState& head,
                            ScanState& state, ScanVariant variant) {
    if (queue.empty()) throw std::invalid_argument("scan_family_pick: empty queue");

    auto pick_in_direction = [&](bool up) -> const Task* {
        const Task* best = nullptr;
        for (const Task& t : queue) {
            if (up ? t.cylinder < head.cylinder : t.cylinder > head.cylinder) continue;
            if (!best) {
                best = &t;
                continue;
            }
            const bool closer = up ? t.cylinder < best->cylinder : t.cylinder > best->cylinder;
            if (closer || (t.cylinder == best->cylinder && t.id < best->id)) best = &t;
        }
        return best;
    };

    auto pick_extreme = [&](bool lowest) -> const Task* {
        const Task* best = &queue.front();
        for (const Task& t : queue) {
            const bool better = lowest ? t.cylinder < best->cylinder : t.cylinder > best->cylinder;
            if (better || (t.cylinder == best->cylinder && t.id < best->id)) best = &t;
        }
        return best;
    };

    if (variant == ScanVariant::cscan || variant == ScanVariant::clook) {
        state.moving_up = true;
        if (const Task* t = pick_in_direction(true)) return t->id;
        return pick_extreme(true)->id; // wrap to the lowest pending cylinder
    }

    if (const Task* t = pick_in_direction(state.moving_up)) return t->id;
    state.moving_up = !state.moving_up; // reverse at the extreme
    return pick_in_direction(state.moving_up)->id;
}

// EDF with seek-order rescheduling among requests sharing the minimum
// deadline: within that group, sweep upward in cylinder order from the
// head, wrapping to the lowest group cylinder when none lie ahead.
inline int scan_edf_pick(const std::vector<Task>& queue, const HeadState& head) {
    if (queue.empty()) throw std::invalid_argument("scan_edf_pick: empty queue");
    double min_deadline = queue.front().deadline_ms;
    for (const Task& t : queue) min_deadline = std::min(min_deadline, t.deadline_ms);

    const Task* ahead = nullptr;
    const Task* lowest = nullptr;
    for (const Task& t : queue) {
        if (t.deadline_ms != min_deadline) continue;
        if (!lowest || detail::better_by_cylinder_then_id(t, *lowest)) lowest = &t;
        if (t.cylinder >= head.cylinder &&
            (!ahead || detail::better_by_cylinder_then_id(t, *ahead))) {
            ahead = &t;
        }
    }
    return (ahead ? ahead : lowest)->id;
}

class FifoPolicy final : public SchedulerPolicy {
public:
    int pick_next(const std::vector<Task>& queue, const HeadState&, const DiskGeometry&) override {
        return fifo_pick(queue);
    }
};

class EdfPolicy final : public SchedulerPolicy {
public:
    int pick_next(const std::vector<Task>& queue, const HeadState&, const DiskGeometry&) override {
        return edf_pick(queue);
    }
};

class SstfPolicy final : public SchedulerPolicy {
public:
    int pick_next(const std::vector<Task>& queue, const HeadState& head, const DiskGeometry&) override {
        return sstf_pick(queue, head);
    }
};

class ScanPolicy final : public SchedulerPolicy {
public:
    explicit ScanPolicy(ScanVariant variant) : variant_(variant) {}

    int pick_next(const std::vector<Task>& queue, const HeadState& head, const DiskGeometry&) override {
        return scan_family_pick(queue, head, state_, variant_);
    }

    void reset() override { state_ = ScanState{}; }

private:
    ScanVariant variant_;
    ScanState state_;
};

class ScanEdfPolicy final : public SchedulerPolicy {
public:
    int pick_next(const std::vector<Task>& queue, const HeadState& head, const DiskGeometry&) override {
        return scan_edf_pick(queue, head);
    }
};

} // namespace antdisk
