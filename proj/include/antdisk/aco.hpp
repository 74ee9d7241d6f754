#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "antdisk/disk_model.hpp"
#include "antdisk/rng.hpp"
#include "antdisk/sim_engine.hpp"

namespace antdisk {

// MAX-MIN Ant System scheduler. Per decision it builds candidate service
// orders with ants, scores them by makespan plus a worst-deadline penalty
// per virtual miss, reinforces the iteration-best order on a clamped
// pheromone matrix, and serves the first task of the best order found.

struct AcoParams {
    double alpha = 1.0;  // pheromone exponent
    double beta = 2.0;   // heuristic exponent
    double rho = 0.98;   // pheromone retention per iteration
    double gamma = 0.1;  // seek vs slack mix in the heuristic
    double tau_min = 10.0;
    double tau_max = 20.0;
    int convergence_patience = 5;
    std::uint64_t seed = 0;

    // Ant count and iteration cap both scale as ceil(N/2) for a queue
    // of N tasks. Small queues keep a floor of a few uniform first
    // picks so both orders of a 2-task queue are explored reliably.
    static int ants_per_iteration(std::size_t queue_size) {
        return std::max<int>(2, static_cast<int>((queue_size + 1) / 2));
    }
    static int max_iterations(std::size_t queue_size) {
        return std::max<int>(4, static_cast<int>((queue_size + 1) / 2));
    }

    void validate() const {
        if (tau_min <= 0.0 || tau_min > tau_max) throw std::invalid_argument("aco: need 0 < tau_min <= tau_max");
        if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("aco: gamma must be in [0,1]");
        if (rho <= 0.0 || rho >= 1.0) throw std::invalid_argument("aco: rho must be in (0,1)");
        if (alpha <= 0.0 || beta <= 0.0) throw std::invalid_argument("aco: alpha, beta must be positive");
        if (convergence_patience < 1) throw std::invalid_argument("aco: patience must be >= 1");
    }
};

// Trail strengths over local queue indices 0..n-1, plus a virtual start
// row (index n) so the edge into an ant's first task can be reinforced.
class PheromoneMatrix {
public:
    PheromoneMatrix(std::size_t n_tasks, double initial)
        : n_(n_tasks), tau_((n_tasks + 1) * (n_tasks + 1), initial) {}

    std::size_t start_index() const { return n_; }

    double at(std::size_t from, std::size_t to) const { return tau_[from * (n_ + 1) + to]; }
    double& at(std::size_t from, std::size_t to) { return tau_[from * (n_ + 1) + to]; }

    void evaporate_and_clamp(double rho, double tau_min, double tau_max) {
        for (double& t : tau_) t = std::clamp(rho * t, tau_min, tau_max);
    }

    double min_entry() const { return *std::min_element(tau_.begin(), tau_.end()); }
    double max_entry() const { return *std::max_element(tau_.begin(), tau_.end()); }

private:
    std::size_t n_;
    std::vector<double> tau_;
};

// One ant's constructed order. `sequence` holds indices into the queue
// snapshot it was built from; tasks dropped in the ant's virtual run are
// counted in miss_count.
struct AntResult {
    std::vector<std::size_t> sequence;
    double virtual_finish_ms = 0.0;
    double makespan_ms = 0.0;
    int miss_count = 0;
    double fitness = 0.0;
};

// Greedy desirability of serving `candidate` right after finishing at
// (last_finish, last_cylinder): inverse of a gamma-weighted mix of seek
// cost and deadline slack. The epsilon keeps the gamma=1, zero-seek
// corner finite; at the default gamma it is negligible.
inline double aco_heuristic(const DiskGeometry& geometry, double gamma, double last_finish_ms,
                            int last_cylinder, const Task& candidate) {
    const double seek = seek_time(geometry, std::abs(candidate.cylinder - last_cylinder));
    const double slack = candidate.deadline_ms - last_finish_ms;
    const double denom = gamma * seek + (1.0 - gamma) * slack + 1e-9;
    if (denom <= 0.0) {
        throw std::logic_error("aco_heuristic: non-positive denominator; feasibility filter failed");
    }
    return 1.0 / denom;
}

// Normalized selection distribution over candidate indices: weight of
// candidate j is tau(last, j)^alpha * eta(j)^beta.
inline std::vector<double> selection_probability(const PheromoneMatrix& pheromone,
                                                 const std::vector<double>& heuristics,
                                                 double alpha, double beta, std::size_t last,
                                                 const std::vector<std::size_t>& candidates) {
    assert(!candidates.empty() && candidates.size() == heuristics.size());
    std::vector<double> probs(candidates.size());
    double total = 0.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        probs[i] = std::pow(pheromone.at(last, candidates[i]), alpha) *
                   std::pow(heuristics[i], beta);
        total += probs[i];
    }
    assert(total > 0.0 && "weights cannot all vanish with positive tau and eta");
    for (double& p : probs) p /= total;
    return probs;
}

// Builds one ant's order over the queue snapshot. The first task is
// chosen uniformly at random; every later step first drops virtually
// infeasible tasks, then samples among the feasible remainder by
// pheromone and heuristic.
inline AntResult construct_ant(const std::vector<Task>& queue, const HeadState& head,
                               const AcoParams& params, const DiskGeometry& geometry,
                               const PheromoneMatrix& pheromone, SplitMix64& rng) {
    assert(!queue.empty());
    AntResult result;
    double time_ms = head.time_ms;
    int cylinder = head.cylinder;

    std::vector<std::size_t> alive(queue.size());
    for (std::size_t i = 0; i < queue.size(); ++i) alive[i] = i;

    auto serve = [&](std::size_t pos_in_alive) {
        const std::size_t idx = alive[pos_in_alive];
        time_ms += service_time(geometry, HeadState{time_ms, cylinder}, queue[idx]);
        cylinder = queue[idx].cylinder;
        result.sequence.push_back(idx);
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pos_in_alive));
    };

    serve(static_cast<std::size_t>(rng.uniform_int(alive.size())));

    std::vector<std::size_t> feasible;
    std::vector<double> heuristics;
    while (!alive.empty()) {
        // Virtually drop everything that can no longer make its deadline.
        feasible.clear();
        heuristics.clear();
        for (std::size_t idx : alive) {
            const double svc = service_time(geometry, HeadState{time_ms, cylinder}, queue[idx]);
            if (time_ms + svc > queue[idx].deadline_ms) {
                ++result.miss_count;
            } else {
                feasible.push_back(idx);
                heuristics.push_back(
                    aco_heuristic(geometry, params.gamma, time_ms, cylinder, queue[idx]));
            }
        }
        if (feasible.empty()) break;

        const std::size_t last = result.sequence.back();
        const std::vector<double> probs = selection_probability(
            pheromone, heuristics, params.alpha, params.beta, last, feasible);

        // Roulette wheel over exact cumulative sums.
        const double r = rng.next_double();
        double cumulative = 0.0;
        std::size_t chosen = feasible.size() - 1;
        for (std::size_t i = 0; i < probs.size(); ++i) {
            cumulative += probs[i];
            if (r < cumulative) {
                chosen = i;
                break;
            }
        }

        alive = feasible;
        serve(chosen);
    }

    result.virtual_finish_ms = time_ms;
    result.makespan_ms = time_ms - head.time_ms;
    return result;
}

// Fitness: virtual makespan plus one worst-deadline penalty per miss.
// Lower is better.
inline double aco_fitness(const AntResult& result, double worst_deadline_ms) {
    return result.makespan_ms + static_cast<double>(result.miss_count) * worst_deadline_ms;
}

// Iteration-best reinforcement: evaporate everything, deposit 1/fitness
// on the best ant's consecutive edges (including start -> first), clamp
// into [tau_min, tau_max].
inline void update_pheromone(PheromoneMatrix& pheromone, const AntResult& best_local,
                             double rho, double tau_min, double tau_max) {
    if (best_local.fitness <= 0.0) {
        throw std::logic_error("update_pheromone: best fitness must be positive");
    }
    pheromone.evaporate_and_clamp(rho, tau_min, tau_max);
    const double deposit = 1.0 / best_local.fitness;
    std::size_t from = pheromone.start_index();
    for (std::size_t to : best_local.sequence) {
        double& t = pheromone.at(from, to);
        t = std::clamp(t + deposit, tau_min, tau_max);
        from = to;
    }
}

// Optional per-decision diagnostics.
struct AcoStats {
    double min_tau = std::numeric_limits<double>::infinity();
    double max_tau = -std::numeric_limits<double>::infinity();
    std::size_t iterations = 0;
    std::size_t updates = 0;

    void observe(const PheromoneMatrix& pheromone) {
        min_tau = std::min(min_tau, pheromone.min_entry());
        max_tau = std::max(max_tau, pheromone.max_entry());
        ++updates;
    }
};

// Runs the full colony and returns the best order found over the queue
// snapshot. get_next_task serves its first element.
inline AntResult aco_best_order(const std::vector<Task>& queue, const HeadState& head,
                                const DiskGeometry& geometry, const AcoParams& params,
                                AcoStats* stats = nullptr) {
    if (queue.empty()) throw std::invalid_argument("aco_best_order: empty queue");
    params.validate();
    if (queue.size() == 1) {
        AntResult only;
        only.sequence = {0};
        const double svc = service_time(geometry, head, queue.front());
        only.virtual_finish_ms = head.time_ms + svc;
        only.makespan_ms = svc;
        only.fitness = svc;
        return only;
    }

    const int n_ants = AcoParams::ants_per_iteration(queue.size());
    const int n_iterations = AcoParams::max_iterations(queue.size());
    PheromoneMatrix pheromone(queue.size(), params.tau_max);

    double worst_deadline = queue.front().deadline_ms;
    for (const Task& t : queue) worst_deadline = std::max(worst_deadline, t.deadline_ms);

    AntResult best_global;
    bool have_global = false;
    double prev_best_local = std::numeric_limits<double>::quiet_NaN();
    int stall = 0;

    std::vector<AntResult> ants(static_cast<std::size_t>(n_ants));
    for (int iteration = 0; iteration < n_iterations; ++iteration) {
        for (int k = 0; k < n_ants; ++k) {
            SplitMix64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(iteration),
                                       static_cast<std::uint64_t>(k)));
            ants[static_cast<std::size_t>(k)] =
                construct_ant(queue, head, params, geometry, pheromone, rng);
            ants[static_cast<std::size_t>(k)].fitness =
                aco_fitness(ants[static_cast<std::size_t>(k)], worst_deadline);
        }

        const AntResult* best_local = &ants.front();
        for (const AntResult& a : ants) {
            if (a.fitness < best_local->fitness) best_local = &a;
        }

        update_pheromone(pheromone, *best_local, params.rho, params.tau_min, params.tau_max);
        if (stats) stats->observe(pheromone);

        if (!have_global || best_local->fitness < best_global.fitness) {
            best_global = *best_local;
            have_global = true;
        }

        if (stats) stats->iterations = static_cast<std::size_t>(iteration) + 1;

        // Convergence: iteration-best fitness flat for `patience`
        // consecutive iterations. A colony whose ants all agree repeats
        // the same fitness, so full agreement trips this too.
        if (iteration > 0 && std::abs(best_local->fitness - prev_best_local) <= 1e-9) {
            if (++stall >= params.convergence_patience) break;
        } else {
            stall = 0;
        }
        prev_best_local = best_local->fitness;
    }

    return best_global;
}

inline int get_next_task(const std::vector<Task>& queue, const HeadState& head,
                         const DiskGeometry& geometry, const AcoParams& params,
                         AcoStats* stats = nullptr) {
    const AntResult best = aco_best_order(queue, head, geometry, params, stats);
    return queue[best.sequence.front()].id;
}

// SchedulerPolicy adapter. Each decision draws its own seed from
// (seed, decision index) so a run stays deterministic while successive
// picks explore independently.
class AcoPolicy final : public SchedulerPolicy {
public:
    explicit AcoPolicy(AcoParams params, AcoStats* stats = nullptr)
        : params_(params), stats_(stats) {}

    int pick_next(const std::vector<Task>& queue, const HeadState& head,
                  const DiskGeometry& geometry) override {
        AcoParams decision = params_;
        decision.seed = derive_seed(params_.seed, decision_index_++);
        return get_next_task(queue, head, geometry, decision, stats_);
    }

    void reset() override { decision_index_ = 0; }

private:
    AcoParams params_;
    AcoStats* stats_;
    std::uint64_t decision_index_ = 0;
};

} // namespace antdisk
