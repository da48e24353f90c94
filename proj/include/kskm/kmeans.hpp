#pragma once

#include <vector>

#include "kskm/matrix.hpp"
#include "kskm/rng.hpp"

namespace kskm {

// k-means++ seeding on raw data rows.
Matrix kmeanspp_init(const Matrix& data, int k, Rng rng);

// k distinct data rows chosen uniformly.
Matrix random_point_init(const Matrix& data, int k, Rng rng);

struct LloydResult {
    Matrix centroids;
    std::vector<int> labels;
    double inertia = 0.0;
    int iterations = 0;
};

// Plain unconstrained Lloyd iterations from the given initial centroids.
// Empty clusters are reseeded with the point farthest from its centroid.
LloydResult lloyd(const Matrix& data, Matrix init, int max_iterations = 300,
                  double tol = 1e-12);

}  // namespace kskm
