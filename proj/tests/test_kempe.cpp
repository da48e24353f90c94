#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "kskm/kempe.hpp"
#include "kskm/rng.hpp"

using namespace kskm;

namespace {

SuperNodeGraph cl_graph(int n, std::vector<IndexPair> edges) {
    ConstraintSet cs;
    cs.cl = std::move(edges);
    return preprocess(cs, n);
}

Matrix make_data(std::vector<std::vector<double>> rows) {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

std::set<int> node_set(const KempeChain& c) {
    std::set<int> s(c.nodes_i.begin(), c.nodes_i.end());
    s.insert(c.nodes_j.begin(), c.nodes_j.end());
    return s;
}

// Random proper coloring: per node, a uniform choice among feasible colors.
// May fail on dense graphs (falls back to color 0); callers must check
// validate_assignment and skip.
Assignment random_proper_coloring(const SuperNodeGraph& g, int k, Rng& rng) {
    Assignment u(g.size(), k);
    for (int v = 0; v < g.size(); ++v) {
        std::vector<int> feasible;
        for (int c = 0; c < k; ++c) {
            bool ok = true;
            for (int w : g.adj[v])
                if (u.cluster_of[w] == c) ok = false;
            if (ok) feasible.push_back(c);
        }
        u.cluster_of[v] =
            feasible.empty() ? 0 : feasible[rng.uniform_int(feasible.size())];
    }
    return u;
}

}  // namespace

TEST_CASE("kempe_chains finds the three components of the two-class subgraph") {
    // Left nodes 0..5 in cluster 0, right nodes 6..9 in cluster 1.
    SuperNodeGraph g =
        cl_graph(10, {{0, 6}, {0, 8}, {1, 7}, {1, 8}, {4, 9}, {5, 9}, {3, 9}});
    Assignment u(10, 2);
    u.cluster_of = {0, 0, 0, 0, 0, 0, 1, 1, 1, 1};
    auto chains = kempe_chains(g, u, 0, 1);
    REQUIRE(chains.size() == 3);
    std::set<std::set<int>> got;
    for (auto& c : chains) got.insert(node_set(c));
    std::set<std::set<int>> expected = {{0, 1, 6, 7, 8}, {3, 4, 5, 9}, {2}};
    CHECK(got == expected);

    // Chains partition the induced vertex set; sides match the assignment.
    for (auto& c : chains) {
        for (int v : c.nodes_i) CHECK(u.cluster_of[v] == 0);
        for (int v : c.nodes_j) CHECK(u.cluster_of[v] == 1);
    }
}

TEST_CASE("kempe_chains empty-cluster extension") {
    SuperNodeGraph g = cl_graph(2, {});
    Matrix data = make_data({{0.0}, {1.0}});
    g.attach_data(data);
    Assignment u(2, 2);
    u.cluster_of = {0, 0};
    auto chains = kempe_chains(g, u, 0, 1);
    REQUIRE(chains.size() == 2);
    for (auto& c : chains) {
        CHECK(c.nodes_i.size() == 1);
        CHECK(c.nodes_j.empty());
        CHECK(c.weight_j == 0.0);
    }
}

TEST_CASE("no cross edges means one singleton chain per node") {
    SuperNodeGraph g = cl_graph(4, {});
    Matrix data = make_data({{0.0}, {1.0}, {2.0}, {3.0}});
    g.attach_data(data);
    Assignment u(4, 2);
    u.cluster_of = {0, 1, 0, 1};
    auto chains = kempe_chains(g, u, 0, 1);
    REQUIRE(chains.size() == 4);
    for (auto& c : chains) CHECK(node_set(c).size() == 1);
}

TEST_CASE("swap_cost closed form") {
    SuperNodeGraph g = cl_graph(2, {{0, 1}});
    Matrix data = make_data({{0.0}, {10.0}});
    g.attach_data(data);
    Assignment u(2, 2);
    u.cluster_of = {0, 1};
    auto chains = kempe_chains(g, u, 0, 1);
    REQUIRE(chains.size() == 1);

    SUBCASE("equal centroids give zero cost") {
        Centroids mu(2, 1);
        mu.at(0, 0) = 4.0;
        mu.at(1, 0) = 4.0;
        CHECK(swap_cost(chains[0], mu) == doctest::Approx(0.0));
    }
    SUBCASE("signed cost matches the inertia delta on both orientations") {
        Centroids mu(2, 1);
        mu.at(0, 0) = 9.0;
        mu.at(1, 0) = 1.0;
        CHECK(swap_cost(chains[0], mu) == doctest::Approx(-160.0));
        mu.at(0, 0) = 1.0;
        mu.at(1, 0) = 9.0;
        CHECK(swap_cost(chains[0], mu) == doctest::Approx(160.0));
    }
}

TEST_CASE("swap_cost equals brute-force inertia delta on random instances") {
    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 6 + static_cast<int>(rng.uniform_int(10));
        int p = 1 + static_cast<int>(rng.uniform_int(3));
        ConstraintSet cs;
        // A few must-links so super-node weights exceed 1.
        for (int t = 0; t < 3; ++t) {
            int i = static_cast<int>(rng.uniform_int(n));
            int j = static_cast<int>(rng.uniform_int(n));
            if (i != j) cs.ml.emplace_back(i, j);
        }
        for (int t = 0; t < 5; ++t) {
            int i = static_cast<int>(rng.uniform_int(n));
            int j = static_cast<int>(rng.uniform_int(n));
            if (i != j) cs.cl.emplace_back(i, j);
        }
        SuperNodeGraph g;
        try {
            g = preprocess(cs, n);
        } catch (const ContradictoryConstraints&) {
            continue;
        }
        Matrix data(n, p);
        for (double& v : data.data) v = rng.uniform() * 10.0 - 5.0;
        g.attach_data(data);

        int k = 3;
        Assignment u = random_proper_coloring(g, k, rng);
        if (!validate_assignment(g, u)) continue;
        Centroids mu(k, p);
        for (double& v : mu.data) v = rng.uniform() * 10.0 - 5.0;

        auto labels = [&](const Assignment& a) {
            std::vector<int> out(n);
            for (int v = 0; v < g.size(); ++v)
                for (int y : g.members[v]) out[y] = a.cluster_of[v];
            return out;
        };
        auto raw_inertia = [&](const Assignment& a) {
            std::vector<int> lab = labels(a);
            double total = 0.0;
            for (int y = 0; y < n; ++y)
                total += squared_distance(data.row(y), mu.row(lab[y]), p);
            return total;
        };

        for (int i = 0; i < k; ++i) {
            for (int j = i + 1; j < k; ++j) {
                for (auto& chain : kempe_chains(g, u, i, j)) {
                    Assignment after = u;
                    for (int v : chain.nodes_i) after.cluster_of[v] = j;
                    for (int v : chain.nodes_j) after.cluster_of[v] = i;
                    double delta = raw_inertia(after) - raw_inertia(u);
                    double cost = swap_cost(chain, mu);
                    CHECK(std::abs(cost - delta) <=
                          1e-9 * std::max(1.0, std::abs(delta)));
                }
            }
        }
    }
}

TEST_CASE("build_conflicts clique groups and cannot-link pairs") {
    SUBCASE("two candidates sharing a node land in one clique group") {
        SuperNodeGraph g = cl_graph(3, {{0, 1}, {0, 2}});
        Matrix data = make_data({{0.0}, {1.0}, {2.0}});
        g.attach_data(data);
        Assignment u(3, 3);
        u.cluster_of = {0, 1, 2};
        auto c01 = kempe_chains(g, u, 0, 1);
        auto c02 = kempe_chains(g, u, 0, 2);
        REQUIRE(c01.size() == 1);
        REQUIRE(c02.size() == 1);
        std::vector<SwapCandidate> cands = {{c01[0], -1.0, 0}, {c02[0], -1.0, 1}};
        SwapConflictGraph cg = build_conflicts(cands, g, u);
        bool found = false;
        for (auto& grp : cg.clique_groups)
            if (grp.size() == 2) found = true;
        CHECK(found);
    }
    SUBCASE("joint application breaking an edge is a cl_pair") {
        // Edge (0,1); candidate 0 moves node 0 from cluster 0 to 1,
        // candidate 1 moves node 1 from cluster 2 to 1.
        SuperNodeGraph g = cl_graph(2, {{0, 1}});
        Matrix data = make_data({{0.0}, {1.0}});
        g.attach_data(data);
        Assignment u(2, 3);
        u.cluster_of = {0, 2};
        auto c01 = kempe_chains(g, u, 0, 1);  // node 0 alone (cluster 1 empty)
        auto c21 = kempe_chains(g, u, 2, 1);  // node 1 alone
        REQUIRE(c01.size() == 1);
        REQUIRE(c21.size() == 1);
        std::vector<SwapCandidate> cands = {{c01[0], -1.0, 0}, {c21[0], -1.0, 1}};
        SwapConflictGraph cg = build_conflicts(cands, g, u);
        REQUIRE(cg.cl_pairs.size() == 1);
        CHECK(cg.cl_pairs[0] == std::pair<int, int>{0, 1});
    }
    SUBCASE("disjoint cluster pairs with no cross edges have no cl_pairs") {
        SuperNodeGraph g = cl_graph(4, {{0, 1}, {2, 3}});
        Matrix data = make_data({{0.0}, {1.0}, {2.0}, {3.0}});
        g.attach_data(data);
        Assignment u(4, 4);
        u.cluster_of = {0, 1, 2, 3};
        auto a = kempe_chains(g, u, 0, 1);
        auto b = kempe_chains(g, u, 2, 3);
        std::vector<SwapCandidate> cands = {{a[0], -1.0, 0}, {b[0], -1.0, 1}};
        SwapConflictGraph cg = build_conflicts(cands, g, u);
        CHECK(cg.cl_pairs.empty());
    }
}

TEST_CASE("apply_swaps") {
    SuperNodeGraph g = cl_graph(4, {{0, 1}, {1, 2}});
    Matrix data = make_data({{0.0}, {5.0}, {10.0}, {2.0}});
    g.attach_data(data);
    Assignment u(4, 2);
    u.cluster_of = {0, 1, 0, 0};

    SUBCASE("empty selection leaves the assignment unchanged") {
        Assignment out = apply_swaps(g, u, {});
        CHECK(out == u);
    }
    SUBCASE("inertia drops by exactly the sum of chosen costs") {
        Centroids mu(2, 1);
        mu.at(0, 0) = 8.0;
        mu.at(1, 0) = 1.0;
        // Compatible singleton chains: node 3 (no edges) and the chain
        // {0,1,2} share nothing.
        auto chains = kempe_chains(g, u, 0, 1);
        std::vector<SwapCandidate> chosen;
        double total_cost = 0.0;
        for (auto& c : chains) {
            double cost = swap_cost(c, mu);
            if (cost < 0) {
                total_cost += cost;
                chosen.push_back({c, cost, static_cast<int>(chosen.size())});
            }
        }
        REQUIRE(!chosen.empty());
        double before = inertia(g, u, mu);
        Assignment out = apply_swaps(g, u, chosen);
        CHECK(validate_assignment(g, out));
        CHECK(inertia(g, out, mu) == doctest::Approx(before + total_cost));
    }
    SUBCASE("overlapping selections are rejected") {
        auto chains = kempe_chains(g, u, 0, 1);
        REQUIRE(!chains.empty());
        std::vector<SwapCandidate> twice = {{chains[0], -1.0, 0}, {chains[0], -1.0, 1}};
        CHECK_THROWS_AS(apply_swaps(g, u, twice), ConflictingSelection);
    }
}

TEST_CASE("random Kempe swaps never break feasibility") {
    Rng rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 5 + static_cast<int>(rng.uniform_int(10));
        std::vector<IndexPair> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.uniform() < 0.3) edges.emplace_back(i, j);
        SuperNodeGraph g = cl_graph(n, edges);
        Matrix data(n, 1);
        for (double& v : data.data) v = rng.uniform();
        g.attach_data(data);
        int k = 4;
        Assignment u = random_proper_coloring(g, k, rng);
        if (!validate_assignment(g, u)) continue;

        int i = static_cast<int>(rng.uniform_int(k));
        int j = static_cast<int>(rng.uniform_int(k));
        if (i == j) continue;
        auto chains = kempe_chains(g, u, i, j);
        if (chains.empty()) continue;
        auto& chain = chains[rng.uniform_int(chains.size())];
        Assignment out = apply_swaps(g, u, {{chain, 0.0, 0}});
        CHECK(validate_assignment(g, out));
    }
}

TEST_CASE("multi_kempe_assignment") {
    SUBCASE("k=2 returns the input unchanged") {
        SuperNodeGraph g = cl_graph(2, {{0, 1}});
        Matrix data = make_data({{0.0}, {1.0}});
        g.attach_data(data);
        Assignment u(2, 2);
        u.cluster_of = {0, 1};
        Centroids mu(2, 1);
        mu.at(1, 0) = 1.0;
        CHECK(multi_kempe_assignment(g, u, mu) == u);
    }
    SUBCASE("a 3-rotation escapes an exchange-optimal triangle") {
        // No pairwise exchange improves (deltas +20, +4, +30) but rotating
        // 0->2, 1->0, 2->1 drops the fixed-centroid inertia 40 -> 30, the
        // optimum over all 3^3 assignments.
        SuperNodeGraph g = cl_graph(3, {{0, 1}, {1, 2}, {0, 2}});
        Matrix data = make_data({{1.0, 0.0}, {6.0, 2.0}, {4.0, 6.0}});
        g.attach_data(data);
        Centroids mu(3, 2);
        mu.at(0, 0) = 4.0; mu.at(0, 1) = 1.0;
        mu.at(1, 0) = 4.0; mu.at(1, 1) = 6.0;
        mu.at(2, 0) = 1.0; mu.at(2, 1) = 5.0;
        Assignment u(3, 3);
        u.cluster_of = {0, 1, 2};
        REQUIRE(inertia(g, u, mu) == doctest::Approx(40.0));

        // Oracle: minimum over every proper assignment.
        double best = 1e18;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                    if (a == b || b == c || a == c) continue;
                    Assignment cand(3, 3);
                    cand.cluster_of = {a, b, c};
                    best = std::min(best, inertia(g, cand, mu));
                }
        REQUIRE(best == doctest::Approx(30.0));

        Assignment out = multi_kempe_assignment(g, u, mu);
        CHECK(validate_assignment(g, out));
        CHECK(inertia(g, out, mu) == doctest::Approx(best));
        CHECK(out.cluster_of == std::vector<int>{2, 0, 1});
    }
    SUBCASE("never increases fixed-centroid inertia on random instances") {
        Rng rng(303);
        for (int trial = 0; trial < 30; ++trial) {
            int n = 6 + static_cast<int>(rng.uniform_int(6));
            std::vector<IndexPair> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng.uniform() < 0.35) edges.emplace_back(i, j);
            SuperNodeGraph g = cl_graph(n, edges);
            Matrix data(n, 2);
            for (double& v : data.data) v = rng.uniform() * 10.0;
            g.attach_data(data);
            int k = 4;
            Assignment u = random_proper_coloring(g, k, rng);
            if (!validate_assignment(g, u)) continue;
            Centroids mu(k, 2);
            for (double& v : mu.data) v = rng.uniform() * 10.0;

            double before = inertia(g, u, mu);
            Assignment out = multi_kempe_assignment(g, u, mu);
            CHECK(validate_assignment(g, out));
            CHECK(inertia(g, out, mu) <= before + 1e-9 * std::max(1.0, before));
        }
    }
}
