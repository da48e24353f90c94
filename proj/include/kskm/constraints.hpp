#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kskm/assignment.hpp"
#include "kskm/errors.hpp"
#include "kskm/matrix.hpp"

namespace kskm {

using IndexPair = std::pair<int, int>;

// Raw pairwise constraints over data indices. Pairs are stored canonically
// (i < j), deduplicated, with self-pairs rejected.
struct ConstraintSet {
    std::vector<IndexPair> ml;
    std::vector<IndexPair> cl;

    // Canonicalize both lists in place.
    void normalize();
};

// Super-node graph G = (V, E): must-link components collapsed into weighted
// nodes, cannot-link pairs lifted to edges. Immutable after construction.
struct SuperNodeGraph {
    int n_points = 0;
    int dim = 0;  // 0 until data is attached

    std::vector<std::vector<int>> members;  // per node, sorted data indices
    std::vector<int> weight;                // |members(v)|
    std::vector<IndexPair> edges;           // u < v, sorted, unique
    std::vector<std::vector<int>> adj;
    std::vector<int> node_of;               // data index -> super-node

    // Precomputed per-node data aggregates; swap costs consume these.
    std::vector<double> sums;    // |V| x dim, componentwise member sums
    std::vector<double> sumsq;   // per node, sum of squared member norms

    int size() const { return static_cast<int>(members.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }
    bool has_data() const { return dim > 0; }
    const double* sum(int v) const { return sums.data() + static_cast<size_t>(v) * dim; }

    void attach_data(const Matrix& data);
};

// Collapse ML components into super-nodes (union-find transitive closure) and
// lift CL pairs to super-node edges. Throws ContradictoryConstraints when a
// CL pair falls inside one super-node.
SuperNodeGraph preprocess(const ConstraintSet& constraints, int n);

// Node-induced subgraphs, one per connected component of (V, E). Member data
// indices are preserved; node ids are remapped per component.
std::vector<SuperNodeGraph> connected_components(const SuperNodeGraph& g);

// True iff no CL edge is monochromatic under u.
bool validate_assignment(const SuperNodeGraph& g, const Assignment& u);

// Fixed-centroid inertia: sum over nodes of member squared distances to the
// assigned centroid, computed from the precomputed node aggregates.
double inertia(const SuperNodeGraph& g, const Assignment& u, const Centroids& mu);

// Weighted squared distance of super-node v to centroid c.
double node_cluster_cost(const SuperNodeGraph& g, int v, const Centroids& mu, int c);

// Expand a super-node assignment to per-data-point labels.
std::vector<int> expand_labels(const SuperNodeGraph& g, const Assignment& u);

}  // namespace kskm
