#pragma once

#include <vector>

#include "riskdp/risk.hpp"
#include "riskdp/soc.hpp"

namespace riskdp {

/// Transition law of one (stage, state, action): candidate probability rows
/// over next states. Several candidates model (s,a)-rectangular ambiguity.
struct KernelEntry {
    std::vector<std::vector<double>> candidates;
};

/// Finite Markov decision process.
///
/// Finite horizon: stages = T >= 1, kernels/cost indexed [t][s][a][...] with
/// t in 0..T-1; terminal cost per state. Infinite horizon: stages = 0,
/// discount in (0,1), stationary tables with a single leading entry.
/// Action sets may differ per state; `actions[s]` lists that state's action
/// labels and positions in it index the kernel and cost tables.
struct MdpModel {
    int stages = 0;
    double discount = 0.0;
    int num_states = 0;
    std::vector<std::vector<int>> actions;
    std::vector<std::vector<std::vector<KernelEntry>>> kernels;
    std::vector<std::vector<std::vector<std::vector<double>>>> cost;  // [t][s][a][s']
    std::vector<double> terminal;
    int initial_state = 0;

    bool infinite() const { return stages == 0; }
};

void validate(const MdpModel& model);

/// Nature's stagewise kernel selection, one candidate index per (t, s, a).
using NaturePolicy = std::vector<std::vector<std::vector<int>>>;

/// Backward induction
/// V_t(s) = min_a sup_{P in M(s,a)} R^P[ c_t(s,a,s') + V_{t+1}(s') ].
FiniteSolution solve_mdp_finite(const MdpModel& model,
                                const StageRiskProfile& profile);

struct GameSolution {
    FiniteSolution solution;
    NaturePolicy nature;  // argmax candidate per (t, s, a)
};

/// The controller-vs-nature view of the robust DP: identical values to
/// solve_mdp_finite plus nature's maximizing selection.
GameSolution solve_mdp_game(const MdpModel& model, const StageRiskProfile& profile);

/// Nested value Z_1(s_1) of a fixed policy; kernels must be resolved, either
/// singleton candidate lists or an explicit nature selection. Markov
/// structure keeps the recursion state-indexed, no history table is built.
double evaluate_policy_nested(const MdpModel& model,
                              const std::vector<std::vector<int>>& policy,
                              const StageRiskProfile& profile,
                              const NaturePolicy* nature = nullptr,
                              int initial_state = -1);

struct StaticRobustResult {
    double static_value = 0.0;
    double dynamic_value = 0.0;
    double gap = 0.0;  // dynamic - static >= 0
    std::vector<int> kernel_choice;  // nature's best per-stage candidate
};

/// Static adversary: nature commits to one candidate index per stage, the
/// same for every (s,a), before anything is realized. Solved exactly by
/// enumerating all per-stage selections (product capped at 10^4) and solving
/// the induced non-robust DP for each. The gap against the dynamic robust
/// value makes the rectangularity loss observable.
StaticRobustResult static_robust_bruteforce(const MdpModel& model,
                                            const StageRiskProfile& profile);

/// Stationary Bellman equation
/// V(s) = min_a sup_P R^P[ c(s,a,s') + beta V(s') ], same stopping rule as
/// soc_value_iteration.
ValueIteration mdp_value_iteration(const MdpModel& model, const RiskSpec& risk,
                                   double tol, long long max_iter);

/// MDP with kernels P(s'|x,u) = P(Phi(x,u,xi) = s') pushed forward from the
/// noise laws. Requires the SOC cost to factor through the next state, i.e.
/// noise atoms mapped to the same state must carry equal costs.
MdpModel induced_mdp_from_soc(const SocModel& model);

} // namespace riskdp
