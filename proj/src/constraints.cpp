#include "kskm/constraints.hpp"

#include <algorithm>
#include <numeric>

namespace kskm {
namespace {

// Union-find with path compression and union by size.
class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

void canonicalize(std::vector<IndexPair>& pairs) {
    for (auto& [i, j] : pairs) {
        if (i == j) throw std::invalid_argument("constraint pair (i,i) is not allowed");
        if (i > j) std::swap(i, j);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

}  // namespace

void ConstraintSet::normalize() {
    canonicalize(ml);
    canonicalize(cl);
}

void SuperNodeGraph::attach_data(const Matrix& data) {
    dim = data.cols;
    sums.assign(static_cast<size_t>(size()) * dim, 0.0);
    sumsq.assign(size(), 0.0);
    for (int v = 0; v < size(); ++v) {
        double* s = sums.data() + static_cast<size_t>(v) * dim;
        for (int idx : members[v]) {
            const double* row = data.row(idx);
            for (int d = 0; d < dim; ++d) s[d] += row[d];
            sumsq[v] += squared_norm(row, dim);
        }
    }
}

SuperNodeGraph preprocess(const ConstraintSet& constraints, int n) {
    ConstraintSet cs = constraints;
    cs.normalize();

    for (const auto& list : {cs.ml, cs.cl})
        for (auto [i, j] : list)
            if (i < 0 || j >= n) throw std::invalid_argument("constraint index out of range");

    UnionFind uf(n);
    for (auto [i, j] : cs.ml) uf.unite(i, j);

    // Super-node ids ordered by smallest member index.
    SuperNodeGraph g;
    g.n_points = n;
    g.node_of.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        int root = uf.find(i);
        if (g.node_of[root] < 0) {
            g.node_of[root] = static_cast<int>(g.members.size());
            g.members.emplace_back();
        }
        g.node_of[i] = g.node_of[root];
        g.members[g.node_of[i]].push_back(i);
    }
    g.weight.resize(g.size());
    for (int v = 0; v < g.size(); ++v) g.weight[v] = static_cast<int>(g.members[v].size());

    for (auto [i, j] : cs.cl) {
        int u = g.node_of[i];
        int v = g.node_of[j];
        if (u == v)
            throw ContradictoryConstraints(
                "points " + std::to_string(i) + " and " + std::to_string(j) +
                " are both must-linked and cannot-linked");
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());

    g.adj.resize(g.size());
    for (auto [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    return g;
}

std::vector<SuperNodeGraph> connected_components(const SuperNodeGraph& g) {
    std::vector<int> comp(g.size(), -1);
    int num_comps = 0;
    std::vector<int> stack;
    for (int v = 0; v < g.size(); ++v) {
        if (comp[v] >= 0) continue;
        comp[v] = num_comps;
        stack.push_back(v);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : g.adj[u]) {
                if (comp[w] < 0) {
                    comp[w] = num_comps;
                    stack.push_back(w);
                }
            }
        }
        ++num_comps;
    }

    std::vector<SuperNodeGraph> out(num_comps);
    std::vector<int> local_id(g.size());
    for (auto& c : out) {
        c.n_points = g.n_points;
        c.dim = g.dim;
        c.node_of.assign(g.n_points, -1);
    }
    for (int v = 0; v < g.size(); ++v) {
        SuperNodeGraph& c = out[comp[v]];
        local_id[v] = c.size();
        c.members.push_back(g.members[v]);
        c.weight.push_back(g.weight[v]);
        for (int idx : g.members[v]) c.node_of[idx] = local_id[v];
        if (g.has_data()) {
            c.sums.insert(c.sums.end(), g.sum(v), g.sum(v) + g.dim);
            c.sumsq.push_back(g.sumsq[v]);
        }
    }
    for (auto [u, v] : g.edges)
        out[comp[u]].edges.emplace_back(local_id[u], local_id[v]);
    for (auto& c : out) {
        c.adj.resize(c.size());
        for (auto [u, v] : c.edges) {
            c.adj[u].push_back(v);
            c.adj[v].push_back(u);
        }
    }
    return out;
}

bool validate_assignment(const SuperNodeGraph& g, const Assignment& u) {
    for (auto [a, b] : g.edges)
        if (u.cluster_of[a] == u.cluster_of[b]) return false;
    return true;
}

double node_cluster_cost(const SuperNodeGraph& g, int v, const Centroids& mu, int c) {
    const double* m = mu.row(c);
    return g.sumsq[v] - 2.0 * dot(g.sum(v), m, g.dim) +
           g.weight[v] * squared_norm(m, g.dim);
}

double inertia(const SuperNodeGraph& g, const Assignment& u, const Centroids& mu) {
    double total = 0.0;
    for (int v = 0; v < g.size(); ++v)
        total += node_cluster_cost(g, v, mu, u.cluster_of[v]);
    return total;
}

std::vector<int> expand_labels(const SuperNodeGraph& g, const Assignment& u) {
    std::vector<int> labels(g.n_points, -1);
    for (int v = 0; v < g.size(); ++v)
        for (int idx : g.members[v]) labels[idx] = u.cluster_of[v];
    return labels;
}

}  // namespace kskm
