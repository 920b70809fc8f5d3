#pragma once

// Independent brute-force oracles. These deliberately avoid the library's
// computation paths: quantiles by linear scan, AV@R by grid minimization,
// nested values by path enumeration, DP by plain expectation recursions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "riskdp/distribution.hpp"
#include "riskdp/mdp.hpp"
#include "riskdp/soc.hpp"
#include "riskdp/tree.hpp"

namespace oracles {

using riskdp::FiniteDistribution;
using riskdp::MdpModel;
using riskdp::ScenarioTree;
using riskdp::SocModel;
using riskdp::TreeNode;

/// Left (1-alpha)-quantile by a forward scan of partial sums.
inline double var_by_cdf_scan(const FiniteDistribution& dist, double alpha) {
    double cum = 0.0;
    const double level = 1.0 - alpha - 1e-12;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        cum += dist.probs()[i];
        if (cum >= level) return dist.atoms()[i];
    }
    return dist.atoms().back();
}

/// inf_t { t + E[Z-t]_+ / alpha } over the atom grid, where the infimum is
/// attained for discrete laws.
inline double avar_by_tau_grid(const FiniteDistribution& dist, double alpha) {
    double best = std::numeric_limits<double>::infinity();
    for (double tau : dist.atoms()) {
        double excess = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i)
            excess += dist.probs()[i] * std::max(dist.atoms()[i] - tau, 0.0);
        best = std::min(best, tau + excess / alpha);
    }
    return best;
}

inline double mean(const FiniteDistribution& dist) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        sum += dist.atoms()[i] * dist.probs()[i];
    return sum;
}

/// k-th ascending order statistic route to the empirical quantile.
inline double empirical_quantile_by_sort(std::vector<double> values, double alpha) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    auto k = static_cast<long long>(std::ceil(n * (1.0 - alpha - 1e-12)));
    if (k < 1) k = 1;
    if (k > static_cast<long long>(values.size()))
        k = static_cast<long long>(values.size());
    return values[static_cast<std::size_t>(k - 1)];
}

/// Expected leaf value by root-to-leaf path enumeration; singleton
/// candidates only.
inline double tree_path_expectation(const ScenarioTree& tree) {
    double total = 0.0;
    struct Item {
        int id;
        double prob;
    };
    std::vector<Item> stack{{tree.root(), 1.0}};
    while (!stack.empty()) {
        Item cur = stack.back();
        stack.pop_back();
        const TreeNode& node = tree.node(cur.id);
        if (node.children.empty()) {
            total += cur.prob * tree.leaf_value(cur.id);
            continue;
        }
        for (std::size_t j = 0; j < node.children.size(); ++j)
            stack.push_back({node.children[j], cur.prob * node.candidates[0][j]});
    }
    return total;
}

/// Risk-neutral finite-horizon DP for an SOC model, written directly on the
/// tables.
inline std::vector<std::vector<double>> soc_expectation_dp(const SocModel& m) {
    std::vector<std::vector<double>> v(static_cast<std::size_t>(m.horizon) + 1);
    v[static_cast<std::size_t>(m.horizon)] = m.terminal;
    for (int t = m.horizon - 1; t >= 0; --t) {
        const auto& probs = m.noise[static_cast<std::size_t>(t)].candidates[0];
        std::vector<double> cur(static_cast<std::size_t>(m.num_states));
        for (int x = 0; x < m.num_states; ++x) {
            double best = std::numeric_limits<double>::infinity();
            for (int u = 0; u < m.num_controls; ++u) {
                double acc = 0.0;
                for (std::size_t k = 0; k < probs.size(); ++k) {
                    int next = m.phi[static_cast<std::size_t>(t)]
                                    [static_cast<std::size_t>(x)]
                                    [static_cast<std::size_t>(u)][k];
                    acc += probs[k] *
                           (m.cost[static_cast<std::size_t>(t)]
                                  [static_cast<std::size_t>(x)]
                                  [static_cast<std::size_t>(u)][k] +
                            v[static_cast<std::size_t>(t) + 1]
                             [static_cast<std::size_t>(next)]);
                }
                best = std::min(best, acc);
            }
            cur[static_cast<std::size_t>(x)] = best;
        }
        v[static_cast<std::size_t>(t)] = std::move(cur);
    }
    return v;
}

/// Risk-neutral finite-horizon DP for an MDP, singleton kernels.
inline std::vector<std::vector<double>> mdp_expectation_dp(const MdpModel& m) {
    std::vector<std::vector<double>> v(static_cast<std::size_t>(m.stages) + 1);
    v[static_cast<std::size_t>(m.stages)] = m.terminal;
    for (int t = m.stages - 1; t >= 0; --t) {
        std::vector<double> cur(static_cast<std::size_t>(m.num_states));
        for (int s = 0; s < m.num_states; ++s) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < m.actions[static_cast<std::size_t>(s)].size();
                 ++a) {
                const auto& row = m.kernels[static_cast<std::size_t>(t)]
                                           [static_cast<std::size_t>(s)][a]
                                               .candidates[0];
                double acc = 0.0;
                for (int next = 0; next < m.num_states; ++next)
                    acc += row[static_cast<std::size_t>(next)] *
                           (m.cost[static_cast<std::size_t>(t)]
                                  [static_cast<std::size_t>(s)][a]
                                  [static_cast<std::size_t>(next)] +
                            v[static_cast<std::size_t>(t) + 1]
                             [static_cast<std::size_t>(next)]);
                best = std::min(best, acc);
            }
            cur[static_cast<std::size_t>(s)] = best;
        }
        v[static_cast<std::size_t>(t)] = std::move(cur);
    }
    return v;
}

/// E^pi[ total cost ] by path enumeration over state sequences.
inline double mdp_policy_path_expectation(const MdpModel& m,
                                          const std::vector<std::vector<int>>& policy,
                                          int s1) {
    struct Item {
        int t;
        int s;
        double prob;
        double cost;
    };
    double total = 0.0;
    std::vector<Item> stack{{0, s1, 1.0, 0.0}};
    while (!stack.empty()) {
        Item cur = stack.back();
        stack.pop_back();
        if (cur.t == m.stages) {
            total += cur.prob *
                     (cur.cost + m.terminal[static_cast<std::size_t>(cur.s)]);
            continue;
        }
        const int a = policy[static_cast<std::size_t>(cur.t)]
                            [static_cast<std::size_t>(cur.s)];
        const auto& row = m.kernels[static_cast<std::size_t>(cur.t)]
                                   [static_cast<std::size_t>(cur.s)]
                                   [static_cast<std::size_t>(a)]
                                       .candidates[0];
        for (int next = 0; next < m.num_states; ++next) {
            double p = row[static_cast<std::size_t>(next)];
            if (p == 0.0) continue;
            stack.push_back({cur.t + 1, next, cur.prob * p,
                             cur.cost + m.cost[static_cast<std::size_t>(cur.t)]
                                               [static_cast<std::size_t>(cur.s)]
                                               [static_cast<std::size_t>(a)]
                                               [static_cast<std::size_t>(next)]});
        }
    }
    return total;
}

/// All per-node candidate selections of a tree, as singleton-candidate
/// copies. Sized for small trees only.
inline std::vector<ScenarioTree> enumerate_tree_selections(const ScenarioTree& tree) {
    std::vector<const TreeNode*> inner;
    for (const auto& node : tree.nodes())
        if (!node.children.empty()) inner.push_back(&node);

    std::size_t combos = 1;
    for (const auto* node : inner) combos *= node->candidates.size();

    std::vector<ScenarioTree> out;
    for (std::size_t combo = 0; combo < combos; ++combo) {
        std::vector<TreeNode> nodes = tree.nodes();
        std::map<int, double> leaves;
        std::size_t rest = combo;
        for (const auto* node : inner) {
            std::size_t pick = rest % node->candidates.size();
            rest /= node->candidates.size();
            nodes[static_cast<std::size_t>(node->id)].candidates = {
                node->candidates[pick]};
        }
        for (const auto& node : tree.nodes())
            if (node.children.empty()) leaves[node.id] = tree.leaf_value(node.id);
        out.emplace_back(tree.stages(), std::move(nodes), std::move(leaves));
    }
    return out;
}

} // namespace oracles
