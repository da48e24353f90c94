#include "kskm/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "kskm/coloring.hpp"
#include "kskm/kempe.hpp"
#include "kskm/kmeans.hpp"

namespace kskm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Repopulate empty clusters with the cheapest single-node move. A node may
// only leave a cluster that keeps at least one other node; the target is
// empty, so no cannot-link edge can be violated.
void repair_empty_clusters(const SuperNodeGraph& g, Assignment& u, const Centroids& mu) {
    std::vector<int> sizes = u.cluster_sizes();
    for (int c = 0; c < u.k; ++c) {
        if (sizes[c] > 0) continue;
        double best_delta = kInf;
        int best_v = -1;
        for (int v = 0; v < g.size(); ++v) {
            int from = u.cluster_of[v];
            if (sizes[from] < 2) continue;
            double delta = node_cluster_cost(g, v, mu, c) - node_cluster_cost(g, v, mu, from);
            if (delta < best_delta) {
                best_delta = delta;
                best_v = v;
            }
        }
        if (best_v < 0)
            throw Infeasible("cannot repopulate empty cluster " + std::to_string(c));
        --sizes[u.cluster_of[best_v]];
        u.cluster_of[best_v] = c;
        ++sizes[c];
    }
}

struct InnerLoopResult {
    Assignment u;
    Centroids mu;
    double objective = 0.0;
};

// Alternate centroid updates and converged Kempe-swap passes until the
// relative objective improvement falls below tol. In kskm_e mode a
// first-improving GCP solve fires at each such fixed point and the loop
// resumes on success.
InnerLoopResult inner_loop(const Problem& problem, const SolverConfig& config,
                           Assignment u, Centroids mu, int& iterations) {
    const SuperNodeGraph& g = problem.graph;
    auto log = [&](double val) {
        if (config.inner_trace) config.inner_trace->push_back(val);
    };
    log(std::numeric_limits<double>::quiet_NaN());  // segment marker

    double prev = kInf;
    for (;;) {
        mu = update_centroids_keep(g, u, mu);
        log(inertia(g, u, mu));
        u = ks_assignment_converged(g, u, mu, config.ks);
        double cur = inertia(g, u, mu);
        log(cur);
        ++iterations;
        if (prev - cur > config.convergence_tol * std::max(1.0, std::abs(prev))) {
            prev = cur;
            continue;
        }
        if (config.mode == SolveMode::kskm_e) {
            GcpInstance gi = make_gcp_instance(g, mu);
            gi.mode = GcpMode::first_improving;
            gi.incumbent_cost = cur;
            gi.budget = config.gcp_budget;
            GcpResult r = solve_gcp(gi);
            if (r.status == GcpStatus::Improved) {
                u = *r.assignment;
                log(r.cost);
                prev = r.cost;
                continue;
            }
        }
        return {std::move(u), std::move(mu), cur};
    }
}

}  // namespace

Problem make_problem(Matrix data, const ConstraintSet& constraints) {
    Problem p;
    p.graph = preprocess(constraints, data.rows);
    p.graph.attach_data(data);
    p.data = std::move(data);
    return p;
}

Centroids initial_centroids(const Problem& problem, const SolverConfig& config) {
    Rng rng = Rng(config.seed).fork(0);
    return config.init == InitStrategy::kmeanspp
               ? kmeanspp_init(problem.data, config.k, rng)
               : random_point_init(problem.data, config.k, rng);
}

Solution solve(const Problem& problem, const SolverConfig& config) {
    switch (config.mode) {
        case SolveMode::copkm:
            return solve_copkm(problem, config);
        case SolveMode::dsaturkm:
            return solve_dsaturkm(problem, config);
        default:
            return solve_kskm(problem, config);
    }
}

Solution solve_kskm(const Problem& problem, const SolverConfig& config) {
    auto t0 = Clock::now();
    const SuperNodeGraph& g = problem.graph;
    const int k = config.k;
    if (g.size() < k)
        throw Infeasible("only " + std::to_string(g.size()) + " super-nodes for k = " +
                         std::to_string(k));

    Rng master(config.seed);
    Centroids mu = initial_centroids(problem, config);

    Assignment u;
    try {
        u = dsatur_assignment(g, mu, k);
    } catch (const Infeasible&) {
        if (!config.gcp_fallback_init) throw;
        GcpInstance gi = make_gcp_instance(g, mu);
        gi.budget = config.gcp_budget;
        GcpResult r = solve_gcp(gi);
        if (!r.assignment)
            throw Infeasible("no feasible " + std::to_string(k) + "-coloring found");
        u = *r.assignment;
    }

    Solution best;
    best.inertia = kInf;
    int iterations = 0;
    int mutations = 0;
    int period = config.reposition_fraction > 0.0
                     ? std::max(1, static_cast<int>(std::lround(1.0 / config.reposition_fraction)))
                     : 0;

    for (int l = 1; l <= config.explorations; ++l) {
        InnerLoopResult res = inner_loop(problem, config, std::move(u), std::move(mu),
                                         iterations);
        if (config.enable_multi_kempe) {
            Assignment after = multi_kempe_assignment(g, res.u, res.mu);
            if (!(after.cluster_of == res.u.cluster_of)) {
                res = inner_loop(problem, config, std::move(after), std::move(res.mu),
                                 iterations);
            }
        }
        u = std::move(res.u);
        mu = std::move(res.mu);

        // Incumbent snapshot: reject empty clusters, repair, recompute.
        Assignment snapshot_u = u;
        repair_empty_clusters(g, snapshot_u, mu);
        Centroids snapshot_mu = update_centroids(g, snapshot_u);
        double snapshot_cost = inertia(g, snapshot_u, snapshot_mu);
        if (snapshot_cost < best.inertia) {
            best.assignment = std::move(snapshot_u);
            best.centroids = std::move(snapshot_mu);
            best.inertia = snapshot_cost;
        }
        if (config.incumbent_trace) config.incumbent_trace->push_back(best.inertia);

        if (l == config.explorations || mutations >= config.max_mutations ||
            seconds_since(t0) > config.time_limit_seconds)
            break;

        if (period > 0 && l % period == 0) {
            Centroids target = relocate_centroids(g, u, problem.data, mu,
                                                  config.relocation,
                                                  master.fork(2000 + l));
            bool match = config.relocation == RelocationStrategy::unconstrained_kmeans;
            MutationResult m =
                ks_shift(g, u, mu, target, config.shift_alpha, match, config.ks);
            u = std::move(m.assignment);
            mu = std::move(m.centroids);
        } else {
            MutationResult m =
                ks_perturb(g, u, problem.data, mu, master.fork(1000 + l), config.ks);
            u = std::move(m.assignment);
            mu = std::move(m.centroids);
        }
        ++mutations;
    }

    best.iterations = iterations;
    best.mutations = mutations;
    best.wall_time_seconds = seconds_since(t0);
    best.feasible = validate_assignment(g, best.assignment);
    return best;
}

Solution solve_copkm(const Problem& problem, const SolverConfig& config) {
    auto t0 = Clock::now();
    const SuperNodeGraph& g = problem.graph;
    const int k = config.k;

    Centroids mu = initial_centroids(problem, config);
    Assignment u(g.size(), k);
    int iterations = 0;
    const int max_passes = 500;

    for (int pass = 0; pass < max_passes; ++pass) {
        Assignment next(g.size(), k);
        std::vector<bool> feasible(k);
        for (int v = 0; v < g.size(); ++v) {
            std::fill(feasible.begin(), feasible.end(), true);
            for (int w : g.adj[v]) {
                int c = next.cluster_of[w];
                if (c >= 0) feasible[c] = false;
            }
            double best_d = kInf;
            int best_c = -1;
            for (int c = 0; c < k; ++c) {
                if (!feasible[c]) continue;
                double d = node_cluster_cost(g, v, mu, c);
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            if (best_c < 0)
                throw AssignmentDeadlock("super-node " + std::to_string(v) +
                                         " has no feasible cluster");
            next.cluster_of[v] = best_c;
        }
        ++iterations;
        mu = update_centroids_keep(g, next, mu);
        bool stable = next.cluster_of == u.cluster_of;
        u = std::move(next);
        if (stable || seconds_since(t0) > config.time_limit_seconds) break;
    }

    Solution s;
    s.assignment = std::move(u);
    s.centroids = std::move(mu);
    s.inertia = inertia(g, s.assignment, s.centroids);
    s.iterations = iterations;
    s.wall_time_seconds = seconds_since(t0);
    s.feasible = validate_assignment(g, s.assignment);
    return s;
}

Solution solve_dsaturkm(const Problem& problem, const SolverConfig& config) {
    auto t0 = Clock::now();
    const SuperNodeGraph& g = problem.graph;
    const int k = config.k;

    Centroids mu = initial_centroids(problem, config);
    Solution best;
    best.inertia = kInf;
    int iterations = 0;

    for (int l = 1; l <= config.explorations; ++l) {
        Assignment u = dsatur_nearest_centroid_pass(g, mu, k);  // may throw Infeasible
        Centroids next = update_centroids_keep(g, u, mu);
        double cost = inertia(g, u, next);
        ++iterations;
        if (cost < best.inertia) {
            best.assignment = u;
            best.centroids = next;
            best.inertia = cost;
        }
        bool stable = next == mu;
        mu = std::move(next);
        if (stable || seconds_since(t0) > config.time_limit_seconds) break;
    }

    best.iterations = iterations;
    best.wall_time_seconds = seconds_since(t0);
    best.feasible = validate_assignment(g, best.assignment);
    return best;
}

}  // namespace kskm
