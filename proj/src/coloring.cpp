#include "kskm/coloring.hpp"

#include <algorithm>
#include <limits>

#include "kskm/ops.hpp"

namespace kskm {
namespace {

// Vertex selection shared by both DSATUR variants: maximal saturation, ties
// by degree, then smallest id.
int pick_most_saturated(const SuperNodeGraph& g, const Assignment& partial) {
    int best = -1;
    int best_sat = -1;
    int best_deg = -1;
    for (int v = 0; v < g.size(); ++v) {
        if (partial.cluster_of[v] >= 0) continue;
        int sat = saturation_degree(g, partial, v);
        int deg = g.degree(v);
        if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
            best = v;
            best_sat = sat;
            best_deg = deg;
        }
    }
    return best;
}

}  // namespace

int saturation_degree(const SuperNodeGraph& g, const Assignment& partial, int v) {
    std::vector<int> seen;
    for (int w : g.adj[v]) {
        int c = partial.cluster_of[w];
        if (c >= 0 && std::find(seen.begin(), seen.end(), c) == seen.end())
            seen.push_back(c);
    }
    return static_cast<int>(seen.size());
}

Assignment dsatur_color(const SuperNodeGraph& g) {
    Assignment u(g.size(), 0);
    int colors_used = 0;
    for (int step = 0; step < g.size(); ++step) {
        int v = pick_most_saturated(g, u);
        std::vector<bool> forbidden(colors_used + 1, false);
        for (int w : g.adj[v]) {
            int c = u.cluster_of[w];
            if (c >= 0 && c < static_cast<int>(forbidden.size())) forbidden[c] = true;
        }
        int color = 0;
        while (forbidden[color]) ++color;
        u.cluster_of[v] = color;
        colors_used = std::max(colors_used, color + 1);
    }
    u.k = colors_used;
    return u;
}

Assignment dsatur_nearest_centroid_pass(const SuperNodeGraph& g, const Centroids& mu,
                                        int k) {
    Assignment u(g.size(), k);
    std::vector<bool> feasible(k);
    for (int step = 0; step < g.size(); ++step) {
        int v = pick_most_saturated(g, u);
        std::fill(feasible.begin(), feasible.end(), true);
        for (int w : g.adj[v]) {
            int c = u.cluster_of[w];
            if (c >= 0) feasible[c] = false;
        }
        double best_dist = std::numeric_limits<double>::infinity();
        int best = -1;
        for (int c = 0; c < k; ++c) {
            if (!feasible[c]) continue;
            double d = node_cluster_cost(g, v, mu, c);
            if (d < best_dist) {
                best_dist = d;
                best = c;
            }
        }
        if (best < 0)
            throw Infeasible("no feasible cluster for super-node " + std::to_string(v));
        u.cluster_of[v] = best;
    }
    return u;
}

Assignment dsatur_assignment(const SuperNodeGraph& g, const Centroids& mu, int k,
                             double alpha) {
    Assignment u;
    try {
        u = dsatur_nearest_centroid_pass(g, mu, k);
    } catch (const Infeasible&) {
        Assignment fallback = dsatur_color(g);
        if (fallback.k > k)
            throw Infeasible("DSATUR needs " + std::to_string(fallback.k) +
                             " colors but k = " + std::to_string(k));
        fallback.k = k;
        u = std::move(fallback);
    }
    return ks_shift(g, u, mu, mu, alpha).assignment;
}

}  // namespace kskm
