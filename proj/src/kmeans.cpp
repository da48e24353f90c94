#include "kskm/kmeans.hpp"

#include <algorithm>
#include <limits>

namespace kskm {

Matrix kmeanspp_init(const Matrix& data, int k, Rng rng) {
    int n = data.rows;
    int p = data.cols;
    Matrix mu(k, p);

    int first = static_cast<int>(rng.uniform_int(n));
    std::copy_n(data.row(first), p, mu.row(0));

    std::vector<double> d2(n);
    for (int i = 0; i < n; ++i) d2[i] = squared_distance(data.row(i), mu.row(0), p);

    for (int c = 1; c < k; ++c) {
        double total = 0.0;
        for (double d : d2) total += d;
        int pick;
        if (total <= 0.0) {
            pick = static_cast<int>(rng.uniform_int(n));
        } else {
            double target = rng.uniform() * total;
            double acc = 0.0;
            pick = n - 1;
            for (int i = 0; i < n; ++i) {
                acc += d2[i];
                if (acc > target) {
                    pick = i;
                    break;
                }
            }
        }
        std::copy_n(data.row(pick), p, mu.row(c));
        for (int i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], squared_distance(data.row(i), mu.row(c), p));
    }
    return mu;
}

Matrix random_point_init(const Matrix& data, int k, Rng rng) {
    int n = data.rows;
    std::vector<int> picked;
    while (static_cast<int>(picked.size()) < k) {
        int i = static_cast<int>(rng.uniform_int(n));
        if (std::find(picked.begin(), picked.end(), i) == picked.end())
            picked.push_back(i);
    }
    Matrix mu(k, data.cols);
    for (int c = 0; c < k; ++c) std::copy_n(data.row(picked[c]), data.cols, mu.row(c));
    return mu;
}

LloydResult lloyd(const Matrix& data, Matrix init, int max_iterations, double tol) {
    int n = data.rows;
    int p = data.cols;
    int k = init.rows;

    LloydResult res;
    res.centroids = std::move(init);
    res.labels.assign(n, -1);

    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iterations; ++it) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            int arg = 0;
            for (int c = 0; c < k; ++c) {
                double d = squared_distance(data.row(i), res.centroids.row(c), p);
                if (d < best) {
                    best = d;
                    arg = c;
                }
            }
            res.labels[i] = arg;
            total += best;
        }
        res.inertia = total;
        res.iterations = it + 1;

        Matrix next(k, p);
        std::vector<int> count(k, 0);
        for (int i = 0; i < n; ++i) {
            int c = res.labels[i];
            ++count[c];
            for (int d = 0; d < p; ++d) next.at(c, d) += data.at(i, d);
        }
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) {
                for (int d = 0; d < p; ++d) next.at(c, d) /= count[c];
            } else {
                // Reseed with the point farthest from its assigned centroid.
                double far = -1.0;
                int arg = 0;
                for (int i = 0; i < n; ++i) {
                    double d = squared_distance(data.row(i),
                                                res.centroids.row(res.labels[i]), p);
                    if (d > far) {
                        far = d;
                        arg = i;
                    }
                }
                std::copy_n(data.row(arg), p, next.row(c));
            }
        }
        res.centroids = std::move(next);

        if (prev - total <= tol * std::max(1.0, prev)) break;
        prev = total;
    }

    // Final labels against the last centroid update.
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (int c = 0; c < k; ++c) {
            double d = squared_distance(data.row(i), res.centroids.row(c), p);
            if (d < best) {
                best = d;
                arg = c;
            }
        }
        res.labels[i] = arg;
        total += best;
    }
    res.inertia = total;
    return res;
}

}  // namespace kskm
