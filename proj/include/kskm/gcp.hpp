#pragma once

#include <optional>
#include <vector>

#include "kskm/assignment.hpp"
#include "kskm/constraints.hpp"
#include "kskm/matrix.hpp"

namespace kskm {

enum class GcpMode { optimal, first_improving };

struct GcpBudget {
    long node_limit = 1'000'000;
    double time_limit_seconds = 60.0;
};

// Fixed-centroid assignment problem: minimize sum of D[v][c] over a proper
// k-coloring with all clusters nonempty.
struct GcpInstance {
    Matrix dist;  // |V| x k, D[v][c] = weighted squared distance of v to mu_c
    std::vector<IndexPair> edges;
    int k = 0;
    std::optional<double> incumbent_cost;
    GcpMode mode = GcpMode::optimal;
    GcpBudget budget;

    int num_nodes() const { return dist.rows; }
};

GcpInstance make_gcp_instance(const SuperNodeGraph& g, const Centroids& mu);

enum class GcpStatus {
    Optimal,          // minimum-cost feasible assignment found and certified
    Infeasible,       // exhaustive proof that no feasible k-coloring exists
    BudgetExhausted,  // optimal mode ran out of budget; best-found carried
    Improved,         // first_improving: found cost < incumbent_cost
    NoImprovement,    // first_improving: search done or budget out, nothing better
};

struct GcpResult {
    GcpStatus status = GcpStatus::Infeasible;
    std::optional<Assignment> assignment;
    double cost = 0.0;
    long nodes_explored = 0;
};

GcpResult solve_gcp(const GcpInstance& inst);

// Admissible bound for a partial state (-1 = unassigned): assigned cost plus
// each unassigned node's cheapest feasible-so-far cluster.
double gcp_lower_bound(const GcpInstance& inst, const std::vector<int>& partial);

}  // namespace kskm
