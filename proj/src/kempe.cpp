#include "kskm/kempe.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "kskm/mwis.hpp"

namespace kskm {
namespace {

// A generic recoloring of a node set. Kempe swaps and 3-chain rotations both
// reduce to this for conflict detection and MWIS selection.
struct Move {
    std::vector<int> nodes;
    std::vector<int> new_colors;
    double gain = 0.0;  // positive improvement
};

int move_color_of(const Move& m, int v) {
    for (size_t i = 0; i < m.nodes.size(); ++i)
        if (m.nodes[i] == v) return m.new_colors[i];
    return -1;
}

Move to_move(const SwapCandidate& cand) {
    Move m;
    for (int v : cand.chain.nodes_i) {
        m.nodes.push_back(v);
        m.new_colors.push_back(cand.chain.cluster_j);
    }
    for (int v : cand.chain.nodes_j) {
        m.nodes.push_back(v);
        m.new_colors.push_back(cand.chain.cluster_i);
    }
    m.gain = -cand.cost;
    return m;
}

// Clique groups (shared nodes) and simulated pairwise CL conflicts for an
// arbitrary move set. Pair enumeration is driven by edges whose endpoints
// belong to two different moves.
void move_conflicts(const std::vector<Move>& moves, const SuperNodeGraph& g,
                    const Assignment& u, std::vector<std::vector<int>>& clique_groups,
                    std::vector<std::pair<int, int>>& cl_pairs) {
    std::vector<std::vector<int>> moves_of_node(g.size());
    for (size_t s = 0; s < moves.size(); ++s)
        for (int v : moves[s].nodes) moves_of_node[v].push_back(static_cast<int>(s));

    clique_groups.clear();
    for (int v = 0; v < g.size(); ++v)
        if (!moves_of_node[v].empty()) clique_groups.push_back(moves_of_node[v]);

    std::set<std::pair<int, int>> pairs;
    for (auto [a, b] : g.edges) {
        for (int s : moves_of_node[a]) {
            for (int t : moves_of_node[b]) {
                if (s == t) continue;
                pairs.insert({std::min(s, t), std::max(s, t)});
            }
        }
    }

    cl_pairs.clear();
    std::vector<int> color(g.size());
    for (auto [s, t] : pairs) {
        // Moves sharing a node are already excluded by the clique groups.
        bool share = false;
        for (int v : moves[s].nodes)
            if (move_color_of(moves[t], v) >= 0) share = true;
        if (share) continue;

        bool broken = false;
        auto joint_color = [&](int v) {
            int c = move_color_of(moves[s], v);
            if (c < 0) c = move_color_of(moves[t], v);
            if (c < 0) c = u.cluster_of[v];
            return c;
        };
        for (const Move* m : {&moves[s], &moves[t]}) {
            for (int v : m->nodes) {
                for (int w : g.adj[v]) {
                    if (joint_color(v) == joint_color(w)) {
                        broken = true;
                        break;
                    }
                }
                if (broken) break;
            }
            if (broken) break;
        }
        if (broken) cl_pairs.emplace_back(s, t);
    }
}

Assignment apply_moves(const SuperNodeGraph& g, const Assignment& u,
                       const std::vector<Move>& moves, const std::vector<int>& chosen) {
    Assignment out = u;
    std::vector<bool> touched(g.size(), false);
    for (int s : chosen) {
        const Move& m = moves[s];
        for (size_t i = 0; i < m.nodes.size(); ++i) {
            if (touched[m.nodes[i]])
                throw ConflictingSelection("selected moves share super-node " +
                                           std::to_string(m.nodes[i]));
            touched[m.nodes[i]] = true;
            out.cluster_of[m.nodes[i]] = m.new_colors[i];
        }
    }
    if (!validate_assignment(g, out))
        throw ConflictingSelection("selected moves break a cannot-link edge");
    return out;
}

MwisSelection select_moves(const std::vector<Move>& moves, const SuperNodeGraph& g,
                           const Assignment& u, int exact_max = 40) {
    MwisInstance inst;
    for (const Move& m : moves) inst.weights.push_back(m.gain);
    move_conflicts(moves, g, u, inst.clique_groups, inst.pair_conflicts);
    return inst.size() <= exact_max ? solve_exact(inst) : solve_heuristic(inst);
}

KempeChain singleton_chain(const SuperNodeGraph& g, int v, int i, int j, bool on_i_side) {
    KempeChain chain;
    chain.cluster_i = i;
    chain.cluster_j = j;
    chain.sum_i.assign(g.dim, 0.0);
    chain.sum_j.assign(g.dim, 0.0);
    auto& nodes = on_i_side ? chain.nodes_i : chain.nodes_j;
    auto& w = on_i_side ? chain.weight_i : chain.weight_j;
    auto& s = on_i_side ? chain.sum_i : chain.sum_j;
    nodes.push_back(v);
    w = g.weight[v];
    for (int d = 0; d < g.dim; ++d) s[d] = g.sum(v)[d];
    return chain;
}

// Restricted two-cluster convergence used by 3-chain rotations: only chains
// fully inside the component node set and only cluster pairs within the
// triple are considered. Chains touching the component never leave it, since
// the component is maximal over the triple's colors.
Assignment converge_within(const SuperNodeGraph& g, Assignment u, const Centroids& mu,
                           const std::vector<bool>& in_component,
                           const std::array<int, 3>& triple, double tol) {
    for (;;) {
        std::vector<SwapCandidate> candidates;
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                for (auto& chain : kempe_chains(g, u, triple[a], triple[b])) {
                    bool inside = true;
                    for (int v : chain.nodes_i)
                        if (!in_component[v]) inside = false;
                    for (int v : chain.nodes_j)
                        if (!in_component[v]) inside = false;
                    if (!inside) continue;
                    double cost = swap_cost(chain, mu);
                    if (cost < -tol) {
                        candidates.push_back(
                            {std::move(chain), cost, static_cast<int>(candidates.size())});
                    }
                }
            }
        }
        if (candidates.empty()) return u;
        std::vector<Move> moves;
        for (const auto& c : candidates) moves.push_back(to_move(c));
        MwisSelection sel = select_moves(moves, g, u);
        u = apply_moves(g, u, moves, sel.chosen);
    }
}

}  // namespace

std::vector<KempeChain> kempe_chains(const SuperNodeGraph& g, const Assignment& u,
                                     int i, int j) {
    std::vector<int> side(g.size(), -1);  // 0 = in C_i, 1 = in C_j
    bool any_i = false;
    bool any_j = false;
    for (int v = 0; v < g.size(); ++v) {
        if (u.cluster_of[v] == i) {
            side[v] = 0;
            any_i = true;
        } else if (u.cluster_of[v] == j) {
            side[v] = 1;
            any_j = true;
        }
    }

    std::vector<KempeChain> chains;
    if (!any_i && !any_j) return chains;
    if (!any_i || !any_j) {
        // Empty-cluster extension: each node of the populated side is its
        // own chain.
        for (int v = 0; v < g.size(); ++v)
            if (side[v] >= 0) chains.push_back(singleton_chain(g, v, i, j, side[v] == 0));
        return chains;
    }

    std::vector<bool> visited(g.size(), false);
    std::vector<int> stack;
    for (int start = 0; start < g.size(); ++start) {
        if (side[start] < 0 || visited[start]) continue;
        KempeChain chain;
        chain.cluster_i = i;
        chain.cluster_j = j;
        chain.sum_i.assign(g.dim, 0.0);
        chain.sum_j.assign(g.dim, 0.0);
        visited[start] = true;
        stack.push_back(start);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (side[v] == 0) {
                chain.nodes_i.push_back(v);
                chain.weight_i += g.weight[v];
                for (int d = 0; d < g.dim; ++d) chain.sum_i[d] += g.sum(v)[d];
            } else {
                chain.nodes_j.push_back(v);
                chain.weight_j += g.weight[v];
                for (int d = 0; d < g.dim; ++d) chain.sum_j[d] += g.sum(v)[d];
            }
            for (int w : g.adj[v]) {
                if (side[w] >= 0 && !visited[w]) {
                    visited[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(chain.nodes_i.begin(), chain.nodes_i.end());
        std::sort(chain.nodes_j.begin(), chain.nodes_j.end());
        chains.push_back(std::move(chain));
    }
    return chains;
}

double swap_cost(const KempeChain& chain, const Centroids& mu) {
    const double* mi = mu.row(chain.cluster_i);
    const double* mj = mu.row(chain.cluster_j);
    int p = mu.cols;
    double cost = (chain.weight_i - chain.weight_j) *
                  (squared_norm(mj, p) - squared_norm(mi, p));
    for (int d = 0; d < p; ++d)
        cost -= 2.0 * (chain.sum_i[d] - chain.sum_j[d]) * (mj[d] - mi[d]);
    return cost;
}

SwapConflictGraph build_conflicts(const std::vector<SwapCandidate>& candidates,
                                  const SuperNodeGraph& g, const Assignment& u) {
    std::vector<Move> moves;
    moves.reserve(candidates.size());
    for (const auto& c : candidates) moves.push_back(to_move(c));
    SwapConflictGraph out;
    move_conflicts(moves, g, u, out.clique_groups, out.cl_pairs);
    return out;
}

Assignment apply_swaps(const SuperNodeGraph& g, const Assignment& u,
                       const std::vector<SwapCandidate>& chosen) {
    std::vector<Move> moves;
    std::vector<int> all;
    for (const auto& c : chosen) {
        moves.push_back(to_move(c));
        all.push_back(static_cast<int>(all.size()));
    }
    return apply_moves(g, u, moves, all);
}

Assignment multi_kempe_assignment(const SuperNodeGraph& g, const Assignment& u,
                                  const Centroids& mu, const MultiKempeOptions& opts) {
    int k = u.k;
    if (k < 3) return u;

    std::set<std::array<int, 3>> triples;
    if (k <= opts.full_enumeration_max_k) {
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                for (int l = j + 1; l < k; ++l) triples.insert({i, j, l});
    } else {
        // Closest-centroid triples per cluster.
        for (int c = 0; c < k; ++c) {
            std::vector<std::pair<double, int>> near;
            for (int o = 0; o < k; ++o) {
                if (o == c) continue;
                near.emplace_back(squared_distance(mu.row(c), mu.row(o), mu.cols), o);
            }
            std::sort(near.begin(), near.end());
            int m = std::min<int>(3, static_cast<int>(near.size()));
            int added = 0;
            for (int a = 0; a < m && added < opts.triples_per_cluster; ++a) {
                for (int b = a + 1; b < m && added < opts.triples_per_cluster; ++b) {
                    std::array<int, 3> t = {c, near[a].second, near[b].second};
                    std::sort(t.begin(), t.end());
                    triples.insert(t);
                    ++added;
                }
            }
        }
    }

    double scale = std::max(1.0, inertia(g, u, mu));
    double tol = 1e-12 * scale;

    std::vector<Move> moves;
    std::vector<int> in_triple(g.size());
    for (const auto& triple : triples) {
        std::fill(in_triple.begin(), in_triple.end(), 0);
        for (int v = 0; v < g.size(); ++v) {
            int c = u.cluster_of[v];
            if (c == triple[0] || c == triple[1] || c == triple[2]) in_triple[v] = 1;
        }
        // Connected components of the induced subgraph.
        std::vector<int> comp(g.size(), -1);
        std::vector<std::vector<int>> comp_nodes;
        std::vector<int> stack;
        for (int v = 0; v < g.size(); ++v) {
            if (!in_triple[v] || comp[v] >= 0) continue;
            int id = static_cast<int>(comp_nodes.size());
            comp_nodes.emplace_back();
            comp[v] = id;
            stack.push_back(v);
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                comp_nodes[id].push_back(a);
                for (int w : g.adj[a]) {
                    if (in_triple[w] && comp[w] < 0) {
                        comp[w] = id;
                        stack.push_back(w);
                    }
                }
            }
        }

        for (const auto& nodes : comp_nodes) {
            if (nodes.size() < 2) continue;
            std::vector<bool> mask(g.size(), false);
            for (int v : nodes) mask[v] = true;

            double base = 0.0;
            for (int v : nodes) base += node_cluster_cost(g, v, mu, u.cluster_of[v]);

            // Two cyclic rotations of the triple's colors on this component.
            std::array<std::array<int, 3>, 2> rotations = {{
                {triple[2], triple[0], triple[1]},  // i->l, j->i, l->j
                {triple[1], triple[2], triple[0]},  // i->j, j->l, l->i
            }};
            double best_gain = 0.0;
            Assignment best_local;
            for (const auto& rot : rotations) {
                Assignment local = u;
                for (int v : nodes) {
                    for (int a = 0; a < 3; ++a)
                        if (u.cluster_of[v] == triple[a]) local.cluster_of[v] = rot[a];
                }
                local = converge_within(g, std::move(local), mu, mask, triple, tol);
                double cost = 0.0;
                for (int v : nodes) cost += node_cluster_cost(g, v, mu, local.cluster_of[v]);
                double gain = base - cost;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_local = local;
                }
            }
            if (best_gain > tol) {
                Move m;
                for (int v : nodes) {
                    if (best_local.cluster_of[v] != u.cluster_of[v]) {
                        m.nodes.push_back(v);
                        m.new_colors.push_back(best_local.cluster_of[v]);
                    }
                }
                if (m.nodes.empty()) continue;
                m.gain = best_gain;
                moves.push_back(std::move(m));
            }
        }
    }

    if (moves.empty()) return u;
    MwisSelection sel = select_moves(moves, g, u);
    return apply_moves(g, u, moves, sel.chosen);
}

}  // namespace kskm
