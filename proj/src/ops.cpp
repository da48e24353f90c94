#include "kskm/ops.hpp"

#include <algorithm>
#include <cmath>

#include "kskm/hungarian.hpp"
#include "kskm/kempe.hpp"
#include "kskm/kmeans.hpp"
#include "kskm/mwis.hpp"

namespace kskm {
namespace {

std::vector<SwapCandidate> improving_candidates(const SuperNodeGraph& g,
                                                const Assignment& u, const Centroids& mu,
                                                const KsOptions& opts) {
    double tol = opts.cost_tol_rel * std::max(1.0, inertia(g, u, mu));
    std::vector<int> sizes = u.cluster_sizes();

    std::vector<SwapCandidate> candidates;
    for (int i = 0; i < u.k; ++i) {
        for (int j = i + 1; j < u.k; ++j) {
            if (sizes[i] == 0 && sizes[j] == 0) continue;
            for (auto& chain : kempe_chains(g, u, i, j)) {
                double cost = swap_cost(chain, mu);
                if (cost < -tol)
                    candidates.push_back(
                        {std::move(chain), cost, static_cast<int>(candidates.size())});
            }
        }
    }
    return candidates;
}

// Cholesky factor of a symmetric PSD p x p matrix (row-major, lower
// triangular result). Zero rows are tolerated for degenerate scatter.
std::vector<double> cholesky(std::vector<double> a, int p) {
    std::vector<double> l(static_cast<size_t>(p) * p, 0.0);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[static_cast<size_t>(i) * p + j];
            for (int m = 0; m < j; ++m)
                s -= l[static_cast<size_t>(i) * p + m] * l[static_cast<size_t>(j) * p + m];
            if (i == j) {
                l[static_cast<size_t>(i) * p + j] = s > 0.0 ? std::sqrt(s) : 0.0;
            } else {
                double d = l[static_cast<size_t>(j) * p + j];
                l[static_cast<size_t>(i) * p + j] = d > 0.0 ? s / d : 0.0;
            }
        }
    }
    return l;
}

}  // namespace

Centroids update_centroids(const SuperNodeGraph& g, const Assignment& u) {
    Centroids mu(u.k, g.dim);
    std::vector<double> count(u.k, 0.0);
    for (int v = 0; v < g.size(); ++v) {
        int c = u.cluster_of[v];
        count[c] += g.weight[v];
        for (int d = 0; d < g.dim; ++d) mu.at(c, d) += g.sum(v)[d];
    }
    for (int c = 0; c < u.k; ++c) {
        if (count[c] == 0.0) throw EmptyCluster("cluster " + std::to_string(c) + " is empty");
        for (int d = 0; d < g.dim; ++d) mu.at(c, d) /= count[c];
    }
    return mu;
}

Centroids update_centroids_keep(const SuperNodeGraph& g, const Assignment& u,
                                const Centroids& prev) {
    Centroids mu(u.k, g.dim);
    std::vector<double> count(u.k, 0.0);
    for (int v = 0; v < g.size(); ++v) {
        int c = u.cluster_of[v];
        count[c] += g.weight[v];
        for (int d = 0; d < g.dim; ++d) mu.at(c, d) += g.sum(v)[d];
    }
    for (int c = 0; c < u.k; ++c) {
        if (count[c] == 0.0) {
            std::copy_n(prev.row(c), g.dim, mu.row(c));
        } else {
            for (int d = 0; d < g.dim; ++d) mu.at(c, d) /= count[c];
        }
    }
    return mu;
}

Assignment ks_assignment(const SuperNodeGraph& g, const Assignment& u,
                         const Centroids& mu, const KsOptions& opts) {
    std::vector<SwapCandidate> candidates = improving_candidates(g, u, mu, opts);
    if (candidates.empty()) return u;

    SwapConflictGraph conflicts = build_conflicts(candidates, g, u);
    MwisInstance inst;
    for (const auto& c : candidates) inst.weights.push_back(-c.cost);
    inst.clique_groups = conflicts.clique_groups;
    inst.pair_conflicts = conflicts.cl_pairs;

    MwisSelection sel = inst.size() <= opts.exact_mwis_max ? solve_exact(inst)
                                                           : solve_heuristic(inst);
    std::vector<SwapCandidate> chosen;
    for (int s : sel.chosen) chosen.push_back(candidates[s]);
    return apply_swaps(g, u, chosen);
}

Assignment ks_assignment_converged(const SuperNodeGraph& g, const Assignment& u,
                                   const Centroids& mu, const KsOptions& opts) {
    Assignment cur = u;
    for (;;) {
        Assignment next = ks_assignment(g, cur, mu, opts);
        if (next.cluster_of == cur.cluster_of) return cur;
        cur = std::move(next);
    }
}

MutationResult ks_perturb(const SuperNodeGraph& g, const Assignment& u,
                          const Matrix& data, const Centroids& mu, Rng rng,
                          const KsOptions& opts) {
    int p = data.cols;
    int k = u.k;
    Centroids perturbed(k, p);

    // Cluster member lists over raw data points.
    std::vector<std::vector<int>> points(k);
    for (int v = 0; v < g.size(); ++v)
        for (int idx : g.members[v]) points[u.cluster_of[v]].push_back(idx);

    std::vector<double> mean(p), scatter(static_cast<size_t>(p) * p);
    for (int c = 0; c < k; ++c) {
        size_t m = points[c].size();
        if (m == 0) {
            std::copy_n(mu.row(c), p, perturbed.row(c));
            continue;
        }
        std::fill(mean.begin(), mean.end(), 0.0);
        for (int idx : points[c])
            for (int d = 0; d < p; ++d) mean[d] += data.at(idx, d);
        for (int d = 0; d < p; ++d) mean[d] /= static_cast<double>(m);
        if (m == 1) {
            // dof would be 0; the sole point's value is the only plausible mu.
            std::copy_n(mean.data(), p, perturbed.row(c));
            continue;
        }

        // Sample covariance, then the t scale matrix sigma / |C|.
        std::fill(scatter.begin(), scatter.end(), 0.0);
        for (int idx : points[c]) {
            for (int a = 0; a < p; ++a) {
                double da = data.at(idx, a) - mean[a];
                for (int b = 0; b <= a; ++b)
                    scatter[static_cast<size_t>(a) * p + b] +=
                        da * (data.at(idx, b) - mean[b]);
            }
        }
        double dof = static_cast<double>(m) - 1.0;
        for (int a = 0; a < p; ++a)
            for (int b = 0; b <= a; ++b) {
                double val = scatter[static_cast<size_t>(a) * p + b] /
                             (dof * static_cast<double>(m));
                scatter[static_cast<size_t>(a) * p + b] = val;
                scatter[static_cast<size_t>(b) * p + a] = val;
            }

        // Ridge when the scale is singular (|C| <= p or rank-deficient data).
        double trace = 0.0;
        for (int a = 0; a < p; ++a) trace += scatter[static_cast<size_t>(a) * p + a];
        if (m <= static_cast<size_t>(p) && trace > 0.0) {
            double ridge = 1e-6 * trace / p;
            for (int a = 0; a < p; ++a) scatter[static_cast<size_t>(a) * p + a] += ridge;
        }

        std::vector<double> chol = cholesky(scatter, p);

        // Multivariate t: mu = mean + z * sqrt(dof / w), z ~ N(0, scale),
        // w ~ ChiSquare(dof). Each cluster draws from its own substream.
        Rng stream = rng.fork(static_cast<uint64_t>(c));
        std::vector<double> z(p);
        for (int d = 0; d < p; ++d) z[d] = stream.normal();
        double w = stream.chi_square(dof);
        double t_factor = std::sqrt(dof / w);
        for (int a = 0; a < p; ++a) {
            double acc = 0.0;
            for (int b = 0; b <= a; ++b) acc += chol[static_cast<size_t>(a) * p + b] * z[b];
            perturbed.at(c, a) = mean[a] + t_factor * acc;
        }
    }

    MutationResult out;
    out.centroids = std::move(perturbed);
    out.assignment = ks_assignment_converged(g, u, out.centroids, opts);
    return out;
}

MutationResult ks_shift(const SuperNodeGraph& g, const Assignment& u,
                        const Centroids& mu, const Centroids& target, double alpha,
                        bool match, const KsOptions& opts) {
    int k = u.k;
    int p = g.dim;

    std::vector<int> matching(k);
    if (match) {
        // cost(i, j) = sum over members of cluster i of ||y - target_j||^2.
        std::vector<double> w(k, 0.0), ss(k, 0.0);
        Matrix cluster_sum(k, p);
        for (int v = 0; v < g.size(); ++v) {
            int c = u.cluster_of[v];
            w[c] += g.weight[v];
            ss[c] += g.sumsq[v];
            for (int d = 0; d < p; ++d) cluster_sum.at(c, d) += g.sum(v)[d];
        }
        Matrix cost(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                cost.at(i, j) = ss[i] - 2.0 * dot(cluster_sum.row(i), target.row(j), p) +
                                w[i] * squared_norm(target.row(j), p);
        matching = hungarian(cost);
    } else {
        for (int i = 0; i < k; ++i) matching[i] = i;
    }

    MutationResult out;
    out.centroids = Centroids(k, p);
    for (int i = 0; i < k; ++i)
        for (int d = 0; d < p; ++d)
            out.centroids.at(i, d) =
                (1.0 - alpha) * mu.at(i, d) + alpha * target.at(matching[i], d);
    out.assignment = ks_assignment_converged(g, u, out.centroids, opts);
    return out;
}

Centroids relocate_centroids(const SuperNodeGraph& g, const Assignment& u,
                             const Matrix& data, const Centroids& mu,
                             RelocationStrategy strategy, Rng rng) {
    (void)g;
    if (strategy == RelocationStrategy::random_substitute) {
        Centroids out = mu;
        int c = static_cast<int>(rng.uniform_int(u.k));
        int i = static_cast<int>(rng.uniform_int(data.rows));
        std::copy_n(data.row(i), data.cols, out.row(c));
        return out;
    }
    // Unconstrained k-means on the raw data, ignoring constraints.
    Matrix init = kmeanspp_init(data, u.k, rng.fork(1));
    return lloyd(data, std::move(init)).centroids;
}

}  // namespace kskm
