#pragma once

#include "riskdp/distribution.hpp"

namespace riskdp {

/// Empirical V@R_alpha of an i.i.d. sample. Computed two ways, as the
/// ceil(N(1-alpha))-th ascending order statistic and as V@R of the empirical
/// measure, and cross-checked; the two routes agree by construction.
double empirical_var(const SampleBatch& samples, double alpha);

/// kappa = min{ (1-alpha) - F(v-), F(v) - (1-alpha) } at v = V@R_alpha.
/// Positive exactly when 1-alpha falls strictly between consecutive
/// attainable cdf levels; the empirical quantile is then exactly right with
/// high probability.
double kappa(const FiniteDistribution& dist, double alpha);

/// Sample size making the empirical V@R exact with probability >= 1-delta:
/// ceil( kappa^-2 log(2/delta) / 2 ).
long long n_exact(double kappa, double delta);

/// Sample size for |V@R_N - V@R| < eps under a local cdf growth bound with
/// density constant c: ceil( c^-2 eps^-2 log(2/delta) / 2 ). Valid for
/// eps below the growth radius b (the caller's contract).
long long n_growth(double c, double eps, double delta);

/// Uniform-over-a-compact-family version:
/// ceil( 2 c^-2 eps^-2 [ n log(4 L D / eps) + log(1/delta) ] ).
long long n_uniform(int n, double lipschitz, double diameter, double c,
                    double eps, double delta);

/// Sample size for the empirical Bellman fixed point under V@R with
/// finite-support noise:
/// ceil( kappa^-2/2 [ (n+m) log(8 D L^2 / (eps (1-beta)(beta L - 1)))
///                  + (n+m)/(1-beta) log(beta L) log(4/(eps (1-beta)))
///                  + log(2/delta) ] ).
/// Requires beta*L > 1; the formula's regime boundary is rejected rather
/// than guessed.
long long n_soc(int n, int m, double lipschitz, double diameter, double beta,
                double kappa_alpha, double eps, double delta);

/// Lipschitz data of the k-step Bellman approximation of the fixed point:
/// k = ceil( log(1/eps) / (1-beta) ) and
/// L_tilde = LR*L ((beta LR L)^k - 1) / (beta LR L - 1), or k*LR*L when
/// beta*LR*L == 1.
struct LipschitzApprox {
    long long k = 0;
    double l_tilde = 0.0;
};

LipschitzApprox lipschitz_tilde_constants(double l_risk, double lipschitz,
                                          double beta, double eps);

/// Grouped constants for the sample-size formulas, mirroring the JSON
/// experiment configs.
struct BoundInputs {
    double kappa = 0.0;
    double c = 0.0;
    double b = 0.0;
    double lipschitz = 0.0;
    double diameter = 0.0;
    int n = 1;
    int m = 1;
    double beta = 0.0;
    double eps = 0.0;
    double delta = 0.0;
};

} // namespace riskdp
