#include "riskdp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskdp/errors.hpp"
#include "riskdp/risk.hpp"

namespace riskdp {

Sampler Sampler::finite(FiniteDistribution dist) {
    Sampler s;
    s.dist_ = std::move(dist);
    return s;
}

Sampler Sampler::piecewise_linear_cdf(std::vector<double> breakpoints,
                                      std::vector<double> cdf_values) {
    if (breakpoints.size() < 2 || breakpoints.size() != cdf_values.size())
        fail(Errc::invalid_argument,
             "piecewise cdf needs matching breakpoints and values, length >= 2");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]) || !std::isfinite(cdf_values[i]))
            fail(Errc::non_finite_value, "cdf data must be finite");
        if (i > 0) {
            if (breakpoints[i] <= breakpoints[i - 1])
                fail(Errc::invalid_argument, "breakpoints must be strictly increasing");
            if (cdf_values[i] < cdf_values[i - 1])
                fail(Errc::invalid_argument, "cdf values must be nondecreasing");
        }
    }
    if (cdf_values.front() != 0.0 || cdf_values.back() != 1.0)
        fail(Errc::invalid_argument, "cdf must start at 0 and end at 1");

    Sampler s;
    s.breakpoints_ = std::move(breakpoints);
    s.cdf_values_ = std::move(cdf_values);
    return s;
}

const FiniteDistribution& Sampler::distribution() const {
    if (!dist_) fail(Errc::invalid_argument, "sampler has no finite distribution");
    return *dist_;
}

double Sampler::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0))
        fail(Errc::invalid_argument, "quantile level must lie in [0,1]");
    if (dist_) {
        const auto& cum = dist_->cumulative();
        auto it = std::lower_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        return dist_->atoms()[static_cast<std::size_t>(it - cum.begin())];
    }
    auto it = std::lower_bound(cdf_values_.begin(), cdf_values_.end(), u);
    if (it == cdf_values_.end()) return breakpoints_.back();
    std::size_t j = static_cast<std::size_t>(it - cdf_values_.begin());
    if (j == 0 || cdf_values_[j] == cdf_values_[j - 1]) return breakpoints_[j];
    // u lies strictly above cdf_values_[j-1] here, interpolate
    double w = (u - cdf_values_[j - 1]) / (cdf_values_[j] - cdf_values_[j - 1]);
    return breakpoints_[j - 1] + w * (breakpoints_[j] - breakpoints_[j - 1]);
}

double Sampler::draw(SplitMix64& rng) const {
    double u = rng.uniform01();
    if (dist_) {
        // atom i on u in [cum_{i-1}, cum_i)
        const auto& cum = dist_->cumulative();
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        if (it == cum.end()) --it;
        return dist_->atoms()[static_cast<std::size_t>(it - cum.begin())];
    }
    return quantile(u);
}

double Sampler::true_var(double alpha) const {
    if (dist_) return value_at_risk(*dist_, alpha);
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(Errc::alpha_out_of_range, "alpha must lie in (0,1)");
    return quantile(1.0 - alpha);
}

double Sampler::min_slope(double lo, double hi) const {
    if (dist_)
        fail(Errc::invalid_argument, "slopes are defined for piecewise-linear cdfs");
    if (lo < breakpoints_.front() || hi > breakpoints_.back()) return 0.0;
    double slope = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < breakpoints_.size(); ++j) {
        if (breakpoints_[j] <= lo || breakpoints_[j - 1] >= hi) continue;
        slope = std::min(slope, (cdf_values_[j] - cdf_values_[j - 1]) /
                                    (breakpoints_[j] - breakpoints_[j - 1]));
    }
    return std::isfinite(slope) ? slope : 0.0;
}

} // namespace riskdp
