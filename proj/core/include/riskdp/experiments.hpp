#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "riskdp/distribution.hpp"
#include "riskdp/sampler.hpp"

namespace riskdp {

/// Outcome of a replicated coverage experiment. Deterministic given the
/// seed: replication r draws from the stream derived from (seed, r), so
/// aggregation is order-independent.
struct CoverageReport {
    long long n_used = 0;
    int reps = 0;
    double coverage = 0.0;
    double max_deviation = 0.0;
    std::uint64_t seed = 0;
    /// Secondary event frequency (epsilon-optimal-set containment); NaN when
    /// the experiment has no such event.
    double subset_coverage = std::numeric_limits<double>::quiet_NaN();

    // per-replication trace, for CSV dumps
    std::vector<double> rep_deviation;
    std::vector<int> rep_covered;
};

/// Exact-recovery experiment: draws N = n_exact(kappa, delta) samples per
/// replication and reports how often the empirical V@R equals the true one.
CoverageReport mc_exact_experiment(const FiniteDistribution& dist, double alpha,
                                   double delta, int reps, std::uint64_t seed);

/// Deviation experiment under the cdf growth condition: N = n_growth(c, eps,
/// delta) inverse-transform samples per replication; covered when
/// |V@R_N - V@R| < eps. The sampler's cdf slope is verified to be >= c on
/// [v-b, v+b] up front.
CoverageReport mc_growth_experiment(const Sampler& sampler, double alpha,
                                    double c, double b, double eps, double delta,
                                    int reps, std::uint64_t seed);

/// A parameterized objective psi(x, xi) on a finite grid, with its true
/// quantiles and the Lipschitz constant in x.
struct UniformFamily {
    std::vector<double> grid;
    std::function<double(double, double)> psi;
    std::vector<double> true_vars;  // V@R_alpha(psi(x, .)) per grid point
    double lipschitz = 1.0;
    int dim = 1;
};

/// Uniform deviation experiment at N = n_uniform(...): coverage of
/// { sup_x |V@R - V@R_N| <= eps } and, in subset_coverage, of the event that
/// every empirical minimizer is eps-optimal for the true problem.
CoverageReport mc_uniform_experiment(const UniformFamily& family,
                                     const Sampler& sampler, double alpha,
                                     double c, double b, double eps, double delta,
                                     int reps, std::uint64_t seed);

} // namespace riskdp
