#pragma once

#include <vector>

#include "kskm/matrix.hpp"

namespace kskm {

// Swap-selection instance of Eq.-(3) shape: pick a maximum-weight subset of
// candidates with at most one per clique group and no forbidden pair.
struct MwisInstance {
    std::vector<double> weights;                   // -d_s > 0 per candidate
    std::vector<std::vector<int>> clique_groups;   // at most one chosen per group
    std::vector<std::pair<int, int>> pair_conflicts;

    int size() const { return static_cast<int>(weights.size()); }
};

struct MwisSelection {
    std::vector<int> chosen;  // candidate ids, ascending
    double value = 0.0;
    bool optimal = false;
};

// Penalty-form BQP matrix: diagonal d_s = -weight, off-diagonal -D on
// conflicting pairs (clique-induced pairs included).
struct PenaltyMatrix {
    Matrix q;
    double d_penalty = 0.0;
};

// Depth-first branch and bound, branching on the highest-weight unfixed
// candidate. Certified optimal when the search completes within node_limit.
MwisSelection solve_exact(const MwisInstance& inst, long node_limit = 1'000'000);

// Unit-sphere spectral relaxation: order candidates by the minimal
// eigenvector of the penalty matrix and greedily build a maximal feasible
// selection. Always at least as good as the best singleton.
MwisSelection solve_heuristic(const MwisInstance& inst);

PenaltyMatrix build_penalty_matrix(const MwisInstance& inst);

// Feasibility of a selection under clique groups and pair conflicts.
bool mwis_feasible(const MwisInstance& inst, const std::vector<int>& chosen);

}  // namespace kskm
