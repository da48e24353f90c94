#include "kskm/mwis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kskm {
namespace {

// Pairwise conflict adjacency from clique groups and explicit pairs.
std::vector<std::vector<bool>> conflict_table(const MwisInstance& inst) {
    int n = inst.size();
    std::vector<std::vector<bool>> conflict(n, std::vector<bool>(n, false));
    for (const auto& group : inst.clique_groups) {
        for (size_t a = 0; a < group.size(); ++a) {
            for (size_t b = a + 1; b < group.size(); ++b) {
                conflict[group[a]][group[b]] = true;
                conflict[group[b]][group[a]] = true;
            }
        }
    }
    for (auto [s, t] : inst.pair_conflicts) {
        conflict[s][t] = true;
        conflict[t][s] = true;
    }
    return conflict;
}

// Greedy maximal completion over a fixed candidate order.
MwisSelection greedy_in_order(const MwisInstance& inst,
                              const std::vector<std::vector<bool>>& conflict,
                              const std::vector<int>& order,
                              const std::vector<int>& forced = {}) {
    MwisSelection sel;
    auto compatible = [&](int s) {
        for (int t : sel.chosen)
            if (conflict[s][t]) return false;
        return true;
    };
    for (int s : forced) {
        sel.chosen.push_back(s);
        sel.value += inst.weights[s];
    }
    for (int s : order) {
        if (std::find(sel.chosen.begin(), sel.chosen.end(), s) != sel.chosen.end())
            continue;
        if (compatible(s)) {
            sel.chosen.push_back(s);
            sel.value += inst.weights[s];
        }
    }
    std::sort(sel.chosen.begin(), sel.chosen.end());
    return sel;
}

}  // namespace

bool mwis_feasible(const MwisInstance& inst, const std::vector<int>& chosen) {
    auto conflict = conflict_table(inst);
    for (size_t a = 0; a < chosen.size(); ++a)
        for (size_t b = a + 1; b < chosen.size(); ++b)
            if (conflict[chosen[a]][chosen[b]]) return false;
    return true;
}

MwisSelection solve_exact(const MwisInstance& inst, long node_limit) {
    int n = inst.size();
    MwisSelection best;
    best.optimal = true;
    if (n == 0) return best;

    auto conflict = conflict_table(inst);

    // Branch on the highest-weight unfixed candidate.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return inst.weights[a] > inst.weights[b]; });

    std::vector<int> chosen;
    std::vector<bool> excluded(n, false);
    long nodes = 0;
    bool complete = true;

    auto recurse = [&](auto&& self, size_t pos, double current, double remaining) -> void {
        if (++nodes > node_limit) {
            complete = false;
            return;
        }
        if (current + remaining <= best.value) return;
        if (pos == order.size()) {
            if (current > best.value) {
                best.value = current;
                best.chosen = chosen;
            }
            return;
        }
        int s = order[pos];
        double w = inst.weights[s];
        if (excluded[s]) {
            // Weight already removed from the bound at exclusion time.
            self(self, pos + 1, current, remaining);
            return;
        }
        // Include s.
        std::vector<int> newly_excluded;
        double lost = 0.0;
        for (size_t q = pos + 1; q < order.size(); ++q) {
            int t = order[q];
            if (!excluded[t] && conflict[s][t]) {
                excluded[t] = true;
                newly_excluded.push_back(t);
                lost += inst.weights[t];
            }
        }
        chosen.push_back(s);
        self(self, pos + 1, current + w, remaining - w - lost);
        chosen.pop_back();
        for (int t : newly_excluded) excluded[t] = false;
        // Skip s.
        self(self, pos + 1, current, remaining - w);
    };

    double total = std::accumulate(inst.weights.begin(), inst.weights.end(), 0.0);
    recurse(recurse, 0, 0.0, total);

    std::sort(best.chosen.begin(), best.chosen.end());
    best.optimal = complete;
    return best;
}

PenaltyMatrix build_penalty_matrix(const MwisInstance& inst) {
    int n = inst.size();
    PenaltyMatrix pm;
    pm.q = Matrix(n, n);
    double max_abs = 0.0;
    for (int s = 0; s < n; ++s) {
        pm.q.at(s, s) = -inst.weights[s];  // d_s, negative for improving swaps
        max_abs = std::max(max_abs, std::abs(inst.weights[s]));
    }
    pm.d_penalty = 1.01 * 0.5 * max_abs;
    auto conflict = conflict_table(inst);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (s != t && conflict[s][t]) pm.q.at(s, t) = -pm.d_penalty;
    return pm;
}

MwisSelection solve_heuristic(const MwisInstance& inst) {
    int n = inst.size();
    MwisSelection empty;
    if (n == 0) return empty;

    PenaltyMatrix pm = build_penalty_matrix(inst);
    auto conflict = conflict_table(inst);

    // Minimal eigenvector of Q via shifted power iteration on cI - Q, with c
    // a Gershgorin upper bound on Q's spectrum.
    double shift = 0.0;
    for (int s = 0; s < n; ++s) {
        double row_sum = pm.q.at(s, s);
        for (int t = 0; t < n; ++t)
            if (t != s) row_sum += std::abs(pm.q.at(s, t));
        shift = std::max(shift, row_sum);
    }
    shift += 1.0;

    std::vector<double> u(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    int max_iter = 10 * n;
    for (int iter = 0; iter < max_iter; ++iter) {
        for (int s = 0; s < n; ++s) {
            double acc = shift * u[s];
            for (int t = 0; t < n; ++t) acc -= pm.q.at(s, t) * u[t];
            next[s] = acc;
        }
        double norm = std::sqrt(squared_norm(next.data(), n));
        if (norm < 1e-300) {
            // Stagnation on a null vector: perturb deterministically.
            for (int s = 0; s < n; ++s) next[s] = u[s] + 1e-6 * (s + 1);
            norm = std::sqrt(squared_norm(next.data(), n));
        }
        double diff = 0.0;
        for (int s = 0; s < n; ++s) {
            next[s] /= norm;
            diff = std::max(diff, std::abs(next[s] - u[s]));
        }
        u.swap(next);
        if (diff < 1e-8) break;
    }

    // Orient so the weight correlation is positive, then sort descending.
    double corr = 0.0;
    for (int s = 0; s < n; ++s) corr += inst.weights[s] * u[s];
    if (corr < 0.0)
        for (double& x : u) x = -x;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (u[a] != u[b]) return u[a] > u[b];
        return inst.weights[a] > inst.weights[b];
    });

    MwisSelection sel = greedy_in_order(inst, conflict, order);

    // Guarantee at least the best singleton.
    int heaviest = static_cast<int>(std::max_element(inst.weights.begin(),
                                                     inst.weights.end()) -
                                    inst.weights.begin());
    MwisSelection with_heaviest = greedy_in_order(inst, conflict, order, {heaviest});
    return with_heaviest.value > sel.value ? with_heaviest : sel;
}

}  // namespace kskm
