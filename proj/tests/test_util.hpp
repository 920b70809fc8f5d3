#pragma once

// Seeded generators for random test instances. Everything is driven by
// SplitMix64 streams so reruns are identical.

#include <vector>

#include "riskdp/distribution.hpp"
#include "riskdp/mdp.hpp"
#include "riskdp/risk.hpp"
#include "riskdp/rng.hpp"
#include "riskdp/soc.hpp"
#include "riskdp/tree.hpp"

namespace testutil {

using namespace riskdp;

inline std::vector<double> random_probs(SplitMix64& rng, std::size_t n) {
    std::vector<double> p(n);
    double mass = 0.0;
    for (auto& x : p) {
        x = 0.05 + rng.uniform01();
        mass += x;
    }
    for (auto& x : p) x /= mass;
    return p;
}

inline FiniteDistribution random_dist(SplitMix64& rng, std::size_t max_atoms = 8) {
    std::size_t n = 1 + rng.below(max_atoms);
    std::vector<double> values(n);
    bool lattice = rng.below(3) == 0;
    for (auto& v : values)
        v = lattice ? static_cast<double>(rng.below(9)) - 4.0
                    : rng.uniform(-10.0, 10.0);
    return make_distribution(values, random_probs(rng, n));
}

inline RiskSpec random_risk(SplitMix64& rng) {
    switch (rng.below(4)) {
    case 0: return RiskSpec::expectation();
    case 1: return RiskSpec::value_at_risk(rng.uniform(0.1, 0.9));
    case 2: return RiskSpec::average_value_at_risk(rng.uniform(0.1, 1.0));
    default: return RiskSpec::entropic(rng.uniform(0.2, 2.0));
    }
}

inline StageRiskProfile random_profile(SplitMix64& rng, int stages) {
    StageRiskProfile profile;
    for (int t = 0; t < stages; ++t) profile.push_back(random_risk(rng));
    return profile;
}

inline NoiseStage random_noise_stage(SplitMix64& rng, std::size_t n_atoms,
                                     std::size_t n_candidates) {
    NoiseStage stage;
    stage.atoms.resize(n_atoms);
    double cursor = rng.uniform(-2.0, 0.0);
    for (auto& a : stage.atoms) {
        a = cursor;
        cursor += 0.25 + rng.uniform01();
    }
    for (std::size_t c = 0; c < n_candidates; ++c)
        stage.candidates.push_back(random_probs(rng, n_atoms));
    return stage;
}

struct SocOptions {
    int horizon = 3;           // 0 for infinite
    double discount = 0.9;
    int states = 4;
    int controls = 2;
    std::size_t atoms = 3;
    std::size_t candidates = 1;
    /// make cost a function of (x, u, next state), so the model has an exact
    /// MDP counterpart via pushforward
    bool cost_on_next_state = false;
};

inline SocModel random_soc(SplitMix64& rng, const SocOptions& opt) {
    SocModel model;
    model.horizon = opt.horizon;
    model.discount = opt.horizon == 0 ? opt.discount : 0.0;
    model.num_states = opt.states;
    model.num_controls = opt.controls;
    const int periods = opt.horizon == 0 ? 1 : opt.horizon;
    for (int t = 0; t < periods; ++t) {
        model.noise.push_back(random_noise_stage(rng, opt.atoms, opt.candidates));
        std::vector<std::vector<std::vector<int>>> phi_t;
        std::vector<std::vector<std::vector<double>>> cost_t;
        for (int x = 0; x < opt.states; ++x) {
            std::vector<std::vector<int>> phi_x;
            std::vector<std::vector<double>> cost_x;
            for (int u = 0; u < opt.controls; ++u) {
                std::vector<int> phi_u(opt.atoms);
                std::vector<double> cost_u(opt.atoms);
                std::vector<double> next_state_cost(
                    static_cast<std::size_t>(opt.states));
                for (auto& h : next_state_cost) h = rng.uniform(0.0, 4.0);
                for (std::size_t k = 0; k < opt.atoms; ++k) {
                    phi_u[k] = static_cast<int>(
                        rng.below(static_cast<std::uint64_t>(opt.states)));
                    cost_u[k] = opt.cost_on_next_state
                                    ? next_state_cost[static_cast<std::size_t>(phi_u[k])]
                                    : rng.uniform(0.0, 4.0);
                }
                phi_x.push_back(std::move(phi_u));
                cost_x.push_back(std::move(cost_u));
            }
            phi_t.push_back(std::move(phi_x));
            cost_t.push_back(std::move(cost_x));
        }
        model.phi.push_back(std::move(phi_t));
        model.cost.push_back(std::move(cost_t));
    }
    if (opt.horizon > 0) {
        model.terminal.resize(static_cast<std::size_t>(opt.states));
        for (auto& c : model.terminal) c = rng.uniform(0.0, 4.0);
    }
    return model;
}

struct MdpOptions {
    int stages = 3;  // 0 for infinite
    double discount = 0.9;
    int states = 4;
    int max_actions = 3;
    std::size_t candidates = 1;
};

inline MdpModel random_mdp(SplitMix64& rng, const MdpOptions& opt) {
    MdpModel model;
    model.stages = opt.stages;
    model.discount = opt.stages == 0 ? opt.discount : 0.0;
    model.num_states = opt.states;
    for (int s = 0; s < opt.states; ++s) {
        std::size_t n = 1 + rng.below(static_cast<std::uint64_t>(opt.max_actions));
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i);
        model.actions.push_back(std::move(labels));
    }
    const int periods = opt.stages == 0 ? 1 : opt.stages;
    for (int t = 0; t < periods; ++t) {
        std::vector<std::vector<KernelEntry>> kernels_t;
        std::vector<std::vector<std::vector<double>>> cost_t;
        for (int s = 0; s < opt.states; ++s) {
            std::vector<KernelEntry> per_s;
            std::vector<std::vector<double>> cost_s;
            for (std::size_t a = 0; a < model.actions[static_cast<std::size_t>(s)].size();
                 ++a) {
                KernelEntry entry;
                for (std::size_t c = 0; c < opt.candidates; ++c)
                    entry.candidates.push_back(
                        random_probs(rng, static_cast<std::size_t>(opt.states)));
                per_s.push_back(std::move(entry));
                std::vector<double> row(static_cast<std::size_t>(opt.states));
                for (auto& x : row) x = rng.uniform(0.0, 4.0);
                cost_s.push_back(std::move(row));
            }
            kernels_t.push_back(std::move(per_s));
            cost_t.push_back(std::move(cost_s));
        }
        model.kernels.push_back(std::move(kernels_t));
        model.cost.push_back(std::move(cost_t));
    }
    if (opt.stages > 0) {
        model.terminal.resize(static_cast<std::size_t>(opt.states));
        for (auto& c : model.terminal) c = rng.uniform(0.0, 4.0);
    }
    return model;
}

/// Random staged tree; candidate lists of size `candidates` at every
/// non-leaf node.
inline ScenarioTree random_tree(SplitMix64& rng, int stages, int max_branch,
                                std::size_t candidates = 1) {
    std::vector<TreeNode> nodes;
    std::map<int, double> leaf_values;
    TreeNode root;
    root.id = 0;
    root.stage = 1;
    nodes.push_back(root);
    std::vector<int> frontier{0};
    for (int t = 1; t <= stages; ++t) {
        std::vector<int> next;
        for (int id : frontier) {
            std::size_t fanout =
                1 + rng.below(static_cast<std::uint64_t>(max_branch));
            for (std::size_t c = 0; c < candidates; ++c)
                nodes[static_cast<std::size_t>(id)].candidates.push_back(
                    random_probs(rng, fanout));
            for (std::size_t k = 0; k < fanout; ++k) {
                TreeNode child;
                child.id = static_cast<int>(nodes.size());
                child.stage = t + 1;
                child.parent = id;
                nodes[static_cast<std::size_t>(id)].children.push_back(child.id);
                if (t == stages)
                    leaf_values[child.id] = rng.uniform(-5.0, 5.0);
                else
                    next.push_back(child.id);
                nodes.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return ScenarioTree(stages, std::move(nodes), std::move(leaf_values));
}

} // namespace testutil
