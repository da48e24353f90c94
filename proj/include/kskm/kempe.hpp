#pragma once

#include <vector>

#include "kskm/assignment.hpp"
#include "kskm/constraints.hpp"

namespace kskm {

// A maximal connected component of the subgraph induced by two color
// classes, split by current membership. weight/sum aggregates are over the
// data points inside the chain's super-nodes, so mean = sum / weight.
struct KempeChain {
    int cluster_i = -1;
    int cluster_j = -1;
    std::vector<int> nodes_i;
    std::vector<int> nodes_j;
    double weight_i = 0.0;
    double weight_j = 0.0;
    std::vector<double> sum_i;
    std::vector<double> sum_j;
};

struct SwapCandidate {
    KempeChain chain;
    double cost = 0.0;  // d_{H_i,H_j}, retained only when negative
    int id = -1;
};

struct SwapConflictGraph {
    // clique_groups[g] lists candidate ids sharing one super-node; at most
    // one per group may be applied.
    std::vector<std::vector<int>> clique_groups;
    // Candidate pairs whose joint application makes some CL edge
    // monochromatic. Stored once per unordered pair (s < t).
    std::vector<std::pair<int, int>> cl_pairs;
};

// Kempe chains between clusters i and j under u. When cluster j is empty,
// one chain per node of C_i with an empty j side (and symmetrically when i
// is empty).
std::vector<KempeChain> kempe_chains(const SuperNodeGraph& g, const Assignment& u,
                                     int i, int j);

// Closed-form change in fixed-centroid inertia caused by swapping the chain:
// (|H_i|-|H_j|)(||mu_j||^2 - ||mu_i||^2) - 2(sum_i - sum_j)^T (mu_j - mu_i).
double swap_cost(const KempeChain& chain, const Centroids& mu);

// Clique groups from shared super-nodes plus simulated pairwise cannot-link
// conflicts between candidates.
SwapConflictGraph build_conflicts(const std::vector<SwapCandidate>& candidates,
                                  const SuperNodeGraph& g, const Assignment& u);

// Recolor every chosen chain (i side to j, j side to i). Throws
// ConflictingSelection when the chosen set shares a node or breaks an edge.
Assignment apply_swaps(const SuperNodeGraph& g, const Assignment& u,
                       const std::vector<SwapCandidate>& chosen);

struct MultiKempeOptions {
    // All triples are enumerated when k <= full_enumeration_max_k; above
    // that, each cluster contributes triples with its closest centroid pairs.
    int full_enumeration_max_k = 20;
    int triples_per_cluster = 3;
};

// 3-chain rotations over cluster triples (Appendix-B style) at fixed
// centroids: both cyclic rotations of each connected component are locally
// improved by nested two-cluster swaps, improving rotations are filtered
// through MWIS, and the selected set is applied. Requires u to be
// two-cluster-swap optimal for full effect but is safe on any feasible u.
Assignment multi_kempe_assignment(const SuperNodeGraph& g, const Assignment& u,
                                  const Centroids& mu,
                                  const MultiKempeOptions& opts = {});

}  // namespace kskm
