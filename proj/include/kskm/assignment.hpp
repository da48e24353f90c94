#pragma once

#include <vector>

#include "kskm/matrix.hpp"

namespace kskm {

// Cluster membership of super-nodes: a k-coloring of the cannot-link graph.
struct Assignment {
    std::vector<int> cluster_of;  // per super-node, in [0, k)
    int k = 0;

    Assignment() = default;
    Assignment(int num_nodes, int num_clusters)
        : cluster_of(num_nodes, -1), k(num_clusters) {}

    int size() const { return static_cast<int>(cluster_of.size()); }

    std::vector<int> cluster_sizes() const {
        std::vector<int> sz(k, 0);
        for (int c : cluster_of)
            if (c >= 0) ++sz[c];
        return sz;
    }

    int num_used_clusters() const {
        int used = 0;
        for (int s : cluster_sizes())
            if (s > 0) ++used;
        return used;
    }

    bool operator==(const Assignment&) const = default;
};

// k centroid rows of dimension p.
using Centroids = Matrix;

}  // namespace kskm
