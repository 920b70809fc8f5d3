#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riskdp/distribution.hpp"
#include "riskdp/errors.hpp"
#include "riskdp/experiments.hpp"
#include "riskdp/risk.hpp"
#include "riskdp/tree.hpp"

namespace riskdp {

/// Noise law of one stage: a shared atom grid plus one probability row per
/// candidate measure. A singleton candidate list is the non-robust case.
struct NoiseStage {
    std::vector<double> atoms;
    std::vector<std::vector<double>> candidates;
};

/// Finite stochastic optimal control model on index grids.
///
/// Finite horizon: horizon = T >= 1, tables phi/cost indexed [t][x][u][k]
/// with t in 0..T-1 and noise one entry per stage; terminal cost per state.
/// Infinite horizon: horizon = 0, discount in (0,1), tables with a single
/// leading entry [0][x][u][k] and one stationary noise stage.
struct SocModel {
    int horizon = 0;
    double discount = 0.0;
    int num_states = 0;
    int num_controls = 0;
    std::vector<NoiseStage> noise;
    std::vector<std::vector<std::vector<std::vector<int>>>> phi;
    std::vector<std::vector<std::vector<std::vector<double>>>> cost;
    std::vector<double> terminal;

    bool infinite() const { return horizon == 0; }
};

void validate(const SocModel& model);

/// Value functions for stages 1..T+1 and the greedy policy for stages 1..T;
/// argmin ties go to the smallest control index.
struct FiniteSolution {
    std::vector<std::vector<double>> values;
    std::vector<std::vector<int>> policy;
};

/// Backward induction V_t(x) = min_u sup_P R^P[ c_t(x,u,xi) + V_{t+1}(Phi_t) ].
FiniteSolution solve_soc_finite(const SocModel& model,
                                const StageRiskProfile& profile);

/// One Bellman sweep T(g)(x) = min_u sup_P R^P[ c(x,u,xi) + beta g(Phi) ].
std::vector<double> soc_bellman(const SocModel& model, const RiskSpec& risk,
                                const std::vector<double>& g);

struct ValueIteration {
    std::vector<double> values;
    std::vector<int> policy;
    long long iterations = 0;
    std::vector<double> residuals;
    bool converged = false;
};

/// Error carrying the partial iterate when value iteration hits max_iter.
class MaxIterError : public Error {
public:
    MaxIterError(std::string message, ValueIteration partial)
        : Error(Errc::max_iter_exceeded, message), partial(std::move(partial)) {}

    ValueIteration partial;
};

/// Iterates T from g = 0 until the a-posteriori bound
/// beta * ||g_{k+1} - g_k|| / (1 - beta) <= tol, which guarantees
/// ||V - V*||_inf <= tol at the returned iterate.
ValueIteration soc_value_iteration(const SocModel& model, const RiskSpec& risk,
                                   double tol, long long max_iter);

struct EmpiricalValue {
    ValueIteration vi;
    /// ||V - V_N||_inf against the supplied exact values; NaN when absent.
    double deviation = 0.0;
};

/// Fixed point of the empirical Bellman operator: the stationary noise law is
/// replaced by the empirical frequencies of `samples` (whose values must lie
/// on the noise atoms). Singleton ambiguity only.
EmpiricalValue soc_empirical_value(const SocModel& model, const SampleBatch& samples,
                                   const RiskSpec& risk, double tol,
                                   long long max_iter,
                                   const std::vector<double>* exact = nullptr);

/// Replicated check that the empirical fixed point recovers the true one
/// under V@R_alpha: per replication draws N = n_exact(min kappa, delta) noise
/// samples and tests || V - V_N ||_inf <= eps. Fails fast with the offending
/// (state, control) pair when some per-(x,u) kappa is zero.
CoverageReport mc_soc_experiment(const SocModel& model, double alpha, double eps,
                                 double delta, int reps, std::uint64_t seed,
                                 double tol = 1e-10);

/// Scenario tree of a finite-horizon model under a fixed policy; leaf values
/// accumulate stage costs plus the terminal cost. Used to cross-check the
/// dynamic solution against the nested tree recursion.
ScenarioTree unroll_policy_tree(const SocModel& model,
                                const std::vector<std::vector<int>>& policy,
                                int initial_state);

} // namespace riskdp
