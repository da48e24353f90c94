#include "kskm/gcp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace kskm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Search {
    const GcpInstance& inst;
    std::vector<std::vector<int>> adj;
    std::vector<int> color;
    std::vector<int> cluster_size;
    int n;
    int k;
    int num_assigned = 0;
    int num_empty;
    double assigned_cost = 0.0;

    long nodes = 0;
    bool out_of_budget = false;
    std::chrono::steady_clock::time_point deadline;

    double best_cost = kInf;
    std::vector<int> best_color;
    bool improving_found = false;  // first_improving short-circuit

    explicit Search(const GcpInstance& instance)
        : inst(instance),
          adj(instance.num_nodes()),
          color(instance.num_nodes(), -1),
          cluster_size(instance.k, 0),
          n(instance.num_nodes()),
          k(instance.k),
          num_empty(instance.k) {
        for (auto [a, b] : inst.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(inst.budget.time_limit_seconds));
    }

    bool feasible_color(int v, int c) const {
        for (int w : adj[v])
            if (color[w] == c) return false;
        return true;
    }

    // DSATUR dynamic order: most saturated unassigned vertex, ties by
    // degree, then smallest id.
    int next_vertex() const {
        int best = -1;
        int best_sat = -1;
        int best_deg = -1;
        std::vector<bool> seen(k);
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            std::fill(seen.begin(), seen.end(), false);
            int sat = 0;
            for (int w : adj[v]) {
                if (color[w] >= 0 && !seen[color[w]]) {
                    seen[color[w]] = true;
                    ++sat;
                }
            }
            int deg = static_cast<int>(adj[v].size());
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        return best;
    }

    double bound() const {
        double b = assigned_cost;
        for (int v = 0; v < n; ++v) {
            if (color[v] >= 0) continue;
            double mn = kInf;
            for (int c = 0; c < k; ++c)
                if (feasible_color(v, c)) mn = std::min(mn, inst.dist.at(v, c));
            if (mn == kInf) return kInf;  // dead vertex
            b += mn;
        }
        return b;
    }

    double prune_threshold() const {
        if (inst.mode == GcpMode::first_improving) return *inst.incumbent_cost;
        if (inst.incumbent_cost) return std::min(best_cost, *inst.incumbent_cost);
        return best_cost;
    }

    void dfs() {
        if (improving_found || out_of_budget) return;
        if (++nodes > inst.budget.node_limit ||
            (nodes % 1024 == 0 && std::chrono::steady_clock::now() > deadline)) {
            out_of_budget = true;
            return;
        }
        if (num_assigned == n) {
            if (num_empty > 0) return;
            if (assigned_cost < best_cost) {
                best_cost = assigned_cost;
                best_color = color;
                if (inst.mode == GcpMode::first_improving &&
                    assigned_cost < *inst.incumbent_cost)
                    improving_found = true;
            }
            return;
        }
        // Nonemptiness: every empty cluster still needs a vertex.
        if (n - num_assigned < num_empty) return;
        if (bound() >= prune_threshold()) return;

        int v = next_vertex();
        // Children ordered by increasing cost. Empty clusters cannot be
        // treated as interchangeable: each has its own distance column.
        std::vector<std::pair<double, int>> children;
        for (int c = 0; c < k; ++c)
            if (feasible_color(v, c)) children.emplace_back(inst.dist.at(v, c), c);
        std::sort(children.begin(), children.end());
        for (auto [cost, c] : children) {
            color[v] = c;
            if (cluster_size[c]++ == 0) --num_empty;
            assigned_cost += cost;
            ++num_assigned;
            dfs();
            --num_assigned;
            assigned_cost -= cost;
            if (--cluster_size[c] == 0) ++num_empty;
            color[v] = -1;
            if (improving_found || out_of_budget) return;
        }
    }
};

}  // namespace

GcpInstance make_gcp_instance(const SuperNodeGraph& g, const Centroids& mu) {
    GcpInstance inst;
    inst.k = mu.rows;
    inst.edges = g.edges;
    inst.dist = Matrix(g.size(), inst.k);
    for (int v = 0; v < g.size(); ++v)
        for (int c = 0; c < inst.k; ++c) inst.dist.at(v, c) = node_cluster_cost(g, v, mu, c);
    return inst;
}

double gcp_lower_bound(const GcpInstance& inst, const std::vector<int>& partial) {
    Search s(inst);
    double assigned = 0.0;
    for (int v = 0; v < inst.num_nodes(); ++v) {
        if (partial[v] >= 0) {
            s.color[v] = partial[v];
            assigned += inst.dist.at(v, partial[v]);
        }
    }
    s.assigned_cost = assigned;
    return s.bound();
}

GcpResult solve_gcp(const GcpInstance& inst) {
    if (inst.mode == GcpMode::first_improving && !inst.incumbent_cost)
        throw std::invalid_argument("first_improving mode requires incumbent_cost");
    if (inst.num_nodes() < inst.k) {
        GcpResult r;
        r.status = inst.mode == GcpMode::first_improving ? GcpStatus::NoImprovement
                                                         : GcpStatus::Infeasible;
        return r;
    }

    Search s(inst);
    s.dfs();

    GcpResult r;
    r.nodes_explored = s.nodes;
    if (s.best_cost < kInf) {
        Assignment a(inst.num_nodes(), inst.k);
        a.cluster_of = s.best_color;
        r.assignment = std::move(a);
        r.cost = s.best_cost;
    }

    if (inst.mode == GcpMode::first_improving) {
        r.status = s.improving_found ? GcpStatus::Improved : GcpStatus::NoImprovement;
        if (!s.improving_found) r.assignment.reset();
        return r;
    }

    if (s.out_of_budget) {
        r.status = GcpStatus::BudgetExhausted;
    } else if (!r.assignment && !inst.incumbent_cost) {
        r.status = GcpStatus::Infeasible;  // exhaustive proof
    } else if (!r.assignment) {
        // Incumbent-pruned search with no better leaf found.
        r.status = GcpStatus::NoImprovement;
    } else {
        r.status = GcpStatus::Optimal;
    }
    return r;
}

}  // namespace kskm
