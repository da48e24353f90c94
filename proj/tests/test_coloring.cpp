#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "kskm/coloring.hpp"
#include "kskm/rng.hpp"

using namespace kskm;

namespace {

SuperNodeGraph cl_graph(int n, std::vector<IndexPair> edges) {
    ConstraintSet cs;
    cs.cl = std::move(edges);
    return preprocess(cs, n);
}

void attach_1d(SuperNodeGraph& g, std::vector<double> xs) {
    Matrix data(static_cast<int>(xs.size()), 1);
    data.data = std::move(xs);
    g.attach_data(data);
}

// Smallest color count admitting a proper coloring, by exhaustive search.
int chromatic_number(const SuperNodeGraph& g) {
    for (int k = 1; k <= g.size(); ++k) {
        std::vector<int> color(g.size(), 0);
        for (;;) {
            bool proper = true;
            for (auto [a, b] : g.edges)
                if (color[a] == color[b]) proper = false;
            if (proper) return k;
            int pos = 0;
            while (pos < g.size() && ++color[pos] == k) color[pos++] = 0;
            if (pos == g.size()) break;
        }
    }
    return g.size();
}

}  // namespace

TEST_CASE("dsatur_color") {
    SUBCASE("a triangle needs three distinct colors") {
        SuperNodeGraph g = cl_graph(3, {{0, 1}, {1, 2}, {0, 2}});
        Assignment u = dsatur_color(g);
        CHECK(u.k == 3);
        CHECK(validate_assignment(g, u));
        CHECK(u.num_used_clusters() == 3);
    }
    SUBCASE("a 4-cycle is 2-colored exactly") {
        SuperNodeGraph g = cl_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
        Assignment u = dsatur_color(g);
        CHECK(u.k == chromatic_number(g));
        CHECK(u.k == 2);
        CHECK(validate_assignment(g, u));
    }
    SUBCASE("an edgeless graph takes one color") {
        SuperNodeGraph g = cl_graph(5, {});
        Assignment u = dsatur_color(g);
        CHECK(u.k == 1);
    }
    SUBCASE("random graphs: proper, contiguous, bounded by max degree + 1") {
        Rng rng(3);
        for (int trial = 0; trial < 40; ++trial) {
            int n = 4 + static_cast<int>(rng.uniform_int(10));
            std::vector<IndexPair> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng.uniform() < 0.3) edges.emplace_back(i, j);
            SuperNodeGraph g = cl_graph(n, edges);
            Assignment u = dsatur_color(g);
            CHECK(validate_assignment(g, u));
            int max_deg = 0;
            for (int v = 0; v < g.size(); ++v) max_deg = std::max(max_deg, g.degree(v));
            CHECK(u.k <= max_deg + 1);
            CHECK(u.num_used_clusters() == u.k);  // contiguous range
        }
    }
}

TEST_CASE("saturation_degree counts distinct neighbor colors") {
    SuperNodeGraph g = cl_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    Assignment partial(4, 3);
    CHECK(saturation_degree(g, partial, 0) == 0);
    partial.cluster_of[1] = 0;
    partial.cluster_of[2] = 0;
    CHECK(saturation_degree(g, partial, 0) == 1);
    partial.cluster_of[3] = 2;
    CHECK(saturation_degree(g, partial, 0) == 2);
}

TEST_CASE("dsatur_assignment picks the nearest feasible centroid") {
    SuperNodeGraph g = cl_graph(2, {});
    attach_1d(g, {0.0, 10.0});
    Centroids mu(2, 1);
    mu.at(0, 0) = 1.0;
    mu.at(1, 0) = 9.0;
    Assignment u = dsatur_assignment(g, mu, 2);
    CHECK(u.cluster_of == std::vector<int>{0, 1});
}

TEST_CASE("dsatur_assignment on a triangle with k=2 is infeasible") {
    SuperNodeGraph g = cl_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    attach_1d(g, {0.0, 1.0, 2.0});
    Centroids mu(2, 1);
    mu.at(1, 0) = 1.0;
    CHECK_THROWS_AS(dsatur_assignment(g, mu, 2), Infeasible);
}

TEST_CASE("dsatur_assignment finds the fixed-centroid optimum on a path") {
    // Path a-b-c-d with a=c=0 and b=d=1; centroids at 0 and 1.
    SuperNodeGraph g = cl_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    attach_1d(g, {0.0, 1.0, 0.0, 1.0});
    Centroids mu(2, 1);
    mu.at(1, 0) = 1.0;
    Assignment u = dsatur_assignment(g, mu, 2);
    CHECK(u.cluster_of == std::vector<int>{0, 1, 0, 1});

    // Oracle: enumerate all 2^4 assignments, keep the feasible minimum.
    double best = 1e18;
    std::vector<int> best_colors;
    for (int mask = 0; mask < 16; ++mask) {
        Assignment cand(4, 2);
        for (int v = 0; v < 4; ++v) cand.cluster_of[v] = (mask >> v) & 1;
        if (!validate_assignment(g, cand)) continue;
        double cost = inertia(g, cand, mu);
        if (cost < best) {
            best = cost;
            best_colors = cand.cluster_of;
        }
    }
    CHECK(inertia(g, u, mu) == doctest::Approx(best));
    CHECK(u.cluster_of == best_colors);
}

TEST_CASE("dsatur_nearest_centroid_pass stays feasible on random graphs") {
    Rng rng(17);
    int produced = 0;
    for (int trial = 0; trial < 30; ++trial) {
        int n = 6 + static_cast<int>(rng.uniform_int(6));
        std::vector<IndexPair> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform() < 0.2) edges.emplace_back(i, j);
        SuperNodeGraph g = cl_graph(n, edges);
        std::vector<double> xs(n);
        for (double& x : xs) x = rng.uniform() * 10.0;
        attach_1d(g, xs);
        int k = 4;
        Centroids mu(k, 1);
        for (int c = 0; c < k; ++c) mu.at(c, 0) = rng.uniform() * 10.0;

        Assignment u;
        try {
            u = dsatur_nearest_centroid_pass(g, mu, k);
        } catch (const Infeasible&) {
            continue;
        }
        ++produced;
        CHECK(validate_assignment(g, u));
    }
    CHECK(produced > 0);
}

TEST_CASE("edgeless dsatur pass equals plain nearest-centroid assignment") {
    Rng rng(23);
    SuperNodeGraph g = cl_graph(12, {});
    std::vector<double> xs(12);
    for (double& x : xs) x = rng.uniform() * 10.0;
    attach_1d(g, xs);
    Centroids mu(3, 1);
    mu.at(0, 0) = 1.0;
    mu.at(1, 0) = 5.0;
    mu.at(2, 0) = 9.0;
    Assignment u = dsatur_nearest_centroid_pass(g, mu, 3);
    for (int v = 0; v < g.size(); ++v) {
        double own = node_cluster_cost(g, v, mu, u.cluster_of[v]);
        for (int c = 0; c < 3; ++c) CHECK(own <= node_cluster_cost(g, v, mu, c) + 1e-12);
    }
}
