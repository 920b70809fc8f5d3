#pragma once

#include <optional>
#include <vector>

#include "riskdp/distribution.hpp"
#include "riskdp/rng.hpp"

namespace riskdp {

/// Sampling law for the Monte Carlo experiments: either a finite distribution
/// or a continuous law given by a piecewise-linear cdf (sampled by inverse
/// transform, so density bounds are exact rather than estimated).
class Sampler {
public:
    static Sampler finite(FiniteDistribution dist);

    /// cdf_values must start at 0, end at 1 and be nondecreasing;
    /// breakpoints strictly increasing.
    static Sampler piecewise_linear_cdf(std::vector<double> breakpoints,
                                        std::vector<double> cdf_values);

    bool finite_support() const { return dist_.has_value(); }
    const FiniteDistribution& distribution() const;
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& cdf_values() const { return cdf_values_; }

    /// Left quantile inf{ z : F(z) >= u }, u in [0,1].
    double quantile(double u) const;

    double draw(SplitMix64& rng) const;

    /// V@R_alpha of the law itself (the estimand of the experiments).
    double true_var(double alpha) const;

    /// Minimum cdf slope over [lo, hi]; 0 if the window leaves the support.
    /// Piecewise-linear laws only.
    double min_slope(double lo, double hi) const;

private:
    Sampler() = default;

    std::optional<FiniteDistribution> dist_;
    std::vector<double> breakpoints_;
    std::vector<double> cdf_values_;
};

} // namespace riskdp
