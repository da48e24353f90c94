#pragma once

#include "kskm/assignment.hpp"
#include "kskm/constraints.hpp"

namespace kskm {

// Distinct colors among the already-assigned neighbors of v. Unassigned
// nodes carry cluster_of == -1 in the partial assignment.
int saturation_degree(const SuperNodeGraph& g, const Assignment& partial, int v);

// Classic DSATUR: repeatedly color the vertex of maximal saturation degree
// (ties by degree, then smallest id) with the smallest feasible color.
// Colors used form a contiguous range [0, c); the result's k equals c.
Assignment dsatur_color(const SuperNodeGraph& g);

// DSATUR-ordered nearest-feasible-centroid assignment. Vertices are settled
// in saturation order and placed in the feasible cluster of minimal weighted
// distance. When some vertex has no feasible cluster the classic DSATUR
// coloring is used instead (accepted when it needs <= k colors, otherwise
// Infeasible is thrown). On success the assignment is shifted toward mu with
// step size alpha.
Assignment dsatur_assignment(const SuperNodeGraph& g, const Centroids& mu, int k,
                             double alpha = 1.0);

// The assignment pass alone (no shift tail); shared with DSATUR COP-K-Means.
// Throws Infeasible when some vertex has no feasible cluster.
Assignment dsatur_nearest_centroid_pass(const SuperNodeGraph& g, const Centroids& mu, int k);

}  // namespace kskm
