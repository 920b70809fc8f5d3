#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "riskdp/distribution.hpp"

namespace riskdp {

enum class RiskKind { expectation, var, avar, entropic };

/// A risk functional on distributions of losses. Parameters:
///   var      alpha in (0,1)
///   avar     alpha in (0,1]
///   entropic tau > 0
struct RiskSpec {
    RiskKind kind = RiskKind::expectation;
    double alpha = 0.0;
    double tau = 0.0;

    static RiskSpec expectation() { return {RiskKind::expectation, 0.0, 0.0}; }
    static RiskSpec value_at_risk(double alpha) { return {RiskKind::var, alpha, 0.0}; }
    static RiskSpec average_value_at_risk(double alpha) { return {RiskKind::avar, alpha, 0.0}; }
    static RiskSpec entropic(double tau) { return {RiskKind::entropic, 0.0, tau}; }
};

void validate(const RiskSpec& risk);

const char* risk_kind_name(RiskKind kind) noexcept;

/// Supremum of a base functional over a finite ambiguity family supplied at
/// evaluation time.
struct RobustRiskSpec {
    RiskSpec inner;
    std::size_t member_count = 1;
};

void validate(const RobustRiskSpec& risk);

double expectation(const FiniteDistribution& dist);

/// V@R_a(Z) = inf{ z : F(z) >= 1-a }, the left-side (1-a)-quantile.
/// The cdf comparison allows a 1e-12 slack so cumulative rounding cannot
/// skip an atom.
double value_at_risk(const FiniteDistribution& dist, double alpha);

/// AV@R_a(Z) = inf_t { t + E[Z-t]_+ / a }; the minimum is attained at
/// t = V@R_a(Z), which is how it is computed. AV@R_1 = E.
double avar(const FiniteDistribution& dist, double alpha);

/// log E[exp(tau Z)] / tau, evaluated with a max-shifted log-sum-exp.
double entropic_risk(const FiniteDistribution& dist, double tau);

double evaluate(const RiskSpec& risk, const FiniteDistribution& dist);

struct RobustEvaluation {
    double value = 0.0;
    std::size_t argmax = 0;  // smallest index attaining the sup
};

RobustEvaluation robust_evaluate(const RiskSpec& risk,
                                 const std::vector<FiniteDistribution>& members);

/// Risk of the discrete law {values[i] with weight weights[i]}. Values need
/// not be sorted or distinct; weights must be nonnegative with total mass
/// near 1. This is the allocation-light path used by the dynamic programming
/// sweeps; it agrees with evaluate() on the corresponding distribution.
double risk_of_weighted(const RiskSpec& risk,
                        std::span<const double> values,
                        std::span<const double> weights);

// ---------------------------------------------------------------------------
// Randomized axiom checks: monotonicity (A1), convexity (A2), translation
// equivariance (A3), positive homogeneity (A4) on a shared finite sample
// space. Deterministic given (trials, seed).

struct AxiomCounterexample {
    std::vector<double> probs;    // the shared sample space
    std::vector<double> z;
    std::vector<double> z_prime;  // empty for A3/A4
    double scalar = 0.0;          // mixing weight, shift, or scale factor
    double lhs = 0.0;
    double rhs = 0.0;
    int trial = -1;
};

struct AxiomResult {
    bool pass = true;
    std::optional<AxiomCounterexample> counterexample;
};

struct AxiomReport {
    RiskSpec risk;
    int trials = 0;
    std::uint64_t seed = 0;
    AxiomResult monotonicity;  // A1
    AxiomResult convexity;     // A2
    AxiomResult translation;   // A3
    AxiomResult homogeneity;   // A4
};

AxiomReport check_axioms(const RiskSpec& risk, int trials, std::uint64_t seed);

} // namespace riskdp
