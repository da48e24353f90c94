#pragma once

#include <vector>

#include "kskm/assignment.hpp"
#include "kskm/constraints.hpp"
#include "kskm/rng.hpp"

namespace kskm {

struct KsOptions {
    // Candidates with |cost| below this relative threshold are dropped to
    // avoid cycling on numeric noise.
    double cost_tol_rel = 1e-12;
    // Candidate sets up to this size go to the exact MWIS solver.
    int exact_mwis_max = 40;
};

// Cluster means weighted by super-node membership. Throws EmptyCluster.
Centroids update_centroids(const SuperNodeGraph& g, const Assignment& u);

// Same, but an empty cluster keeps its row from prev.
Centroids update_centroids_keep(const SuperNodeGraph& g, const Assignment& u,
                                const Centroids& prev);

// One Kempe-swap round: enumerate improving candidates over all cluster
// pairs (including empty-cluster chains when a cluster is empty), resolve
// compatibility via MWIS, apply. Returns u unchanged at a fixed point.
Assignment ks_assignment(const SuperNodeGraph& g, const Assignment& u,
                         const Centroids& mu, const KsOptions& opts = {});

// ks_assignment rounds until no improving candidate remains.
Assignment ks_assignment_converged(const SuperNodeGraph& g, const Assignment& u,
                                   const Centroids& mu, const KsOptions& opts = {});

struct MutationResult {
    Assignment assignment;
    Centroids centroids;
};

// Resample each cluster centroid from the multivariate-t law around the
// cluster mean, then re-converge the assignment under the perturbed
// centroids. Needs raw data rows for the cluster scatter matrices. Clusters
// with a single data point (or empty ones) keep a deterministic centroid.
MutationResult ks_perturb(const SuperNodeGraph& g, const Assignment& u,
                          const Matrix& data, const Centroids& mu, Rng rng,
                          const KsOptions& opts = {});

// Match current clusters to target centroids with the Hungarian method,
// blend mu toward the matched targets with step alpha, and re-converge.
// match = false skips the matching (identity correspondence).
MutationResult ks_shift(const SuperNodeGraph& g, const Assignment& u,
                        const Centroids& mu, const Centroids& target, double alpha,
                        bool match = true, const KsOptions& opts = {});

enum class RelocationStrategy { unconstrained_kmeans, random_substitute };

// Target centroids for a reposition move.
Centroids relocate_centroids(const SuperNodeGraph& g, const Assignment& u,
                             const Matrix& data, const Centroids& mu,
                             RelocationStrategy strategy, Rng rng);

}  // namespace kskm
