#pragma once

#include <cassert>
#include <cmath>
#include <vector>

namespace kskm {

// Dense row-major matrix of doubles. Rows are data points or centroids.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double* row(int i) { return data.data() + static_cast<size_t>(i) * cols; }
    const double* row(int i) const { return data.data() + static_cast<size_t>(i) * cols; }

    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Matrix&) const = default;
};

inline double squared_distance(const double* a, const double* b, int p) {
    double s = 0.0;
    for (int d = 0; d < p; ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

inline double squared_norm(const double* a, int p) {
    double s = 0.0;
    for (int d = 0; d < p; ++d) s += a[d] * a[d];
    return s;
}

inline double dot(const double* a, const double* b, int p) {
    double s = 0.0;
    for (int d = 0; d < p; ++d) s += a[d] * b[d];
    return s;
}

}  // namespace kskm
