#pragma once

#include <cstdint>
#include <vector>

#include "kskm/constraints.hpp"
#include "kskm/gcp.hpp"
#include "kskm/ops.hpp"

namespace kskm {

enum class SolveMode { kskm, kskm_e, copkm, dsaturkm };

enum class InitStrategy { kmeanspp, random_points };

struct SolverConfig {
    int k = 2;
    int explorations = 20;  // L
    // Fraction of mutations that are repositions; 0.2 means every 5th.
    double reposition_fraction = 0.2;
    double shift_alpha = 1.0;
    SolveMode mode = SolveMode::kskm;
    RelocationStrategy relocation = RelocationStrategy::unconstrained_kmeans;
    InitStrategy init = InitStrategy::kmeanspp;
    uint64_t seed = 0;
    double convergence_tol = 1e-10;
    double time_limit_seconds = 3600.0;
    int max_mutations = 200;
    bool gcp_fallback_init = true;   // exact GCP init when the DSATUR chain fails
    bool enable_multi_kempe = false;
    GcpBudget gcp_budget;
    KsOptions ks;

    // When set, the true objective is appended after every inner-loop step
    // (centroid update or converged swap pass). Each inner loop opens with a
    // NaN marker, since the objective legitimately jumps across mutations.
    std::vector<double>* inner_trace = nullptr;
    // When set, the incumbent objective is appended once per exploration.
    std::vector<double>* incumbent_trace = nullptr;
};

struct Solution {
    Assignment assignment;
    Centroids centroids;
    double inertia = 0.0;
    int iterations = 0;
    int mutations = 0;
    double wall_time_seconds = 0.0;
    bool feasible = false;
};

struct Problem {
    Matrix data;
    SuperNodeGraph graph;
};

Problem make_problem(Matrix data, const ConstraintSet& constraints);

// Shared initial centroids for a given seed; identical across modes.
Centroids initial_centroids(const Problem& problem, const SolverConfig& config);

Solution solve(const Problem& problem, const SolverConfig& config);

Solution solve_kskm(const Problem& problem, const SolverConfig& config);
Solution solve_copkm(const Problem& problem, const SolverConfig& config);
Solution solve_dsaturkm(const Problem& problem, const SolverConfig& config);

}  // namespace kskm
