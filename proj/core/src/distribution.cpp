#include "riskdp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "riskdp/errors.hpp"

namespace riskdp {

namespace {

double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, carry = 0.0;
    for (double x : xs) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace

double FiniteDistribution::cdf(double z) const {
    auto it = std::upper_bound(atoms_.begin(), atoms_.end(), z);
    if (it == atoms_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double FiniteDistribution::cdf_left(double z) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), z);
    if (it == atoms_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

FiniteDistribution FiniteDistribution::dirac(double value) {
    return make_distribution({value}, {1.0});
}

FiniteDistribution make_distribution(std::vector<double> values,
                                     std::vector<double> probs) {
    if (values.empty())
        fail(Errc::empty_sample, "distribution needs at least one atom");
    if (values.size() != probs.size())
        fail(Errc::length_mismatch, "values and probs differ in length");
    for (double v : values)
        if (!std::isfinite(v))
            fail(Errc::non_finite_value, "atom values must be finite");
    for (double p : probs) {
        if (!std::isfinite(p))
            fail(Errc::non_finite_value, "probabilities must be finite");
        if (p < 0.0)
            fail(Errc::negative_probability, "probabilities must be nonnegative");
    }

    double mass = compensated_sum(probs);
    if (std::abs(mass - 1.0) > 1e-9)
        fail(Errc::mass_not_one, "probabilities sum to " + std::to_string(mass));

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });

    FiniteDistribution dist;
    dist.atoms_.reserve(values.size());
    dist.probs_.reserve(values.size());
    for (std::size_t idx : order) {
        if (!dist.atoms_.empty() && values[idx] == dist.atoms_.back()) {
            dist.probs_.back() += probs[idx];
        } else {
            dist.atoms_.push_back(values[idx]);
            dist.probs_.push_back(probs[idx]);
        }
    }

    for (double& p : dist.probs_) p /= mass;

    dist.cum_.resize(dist.probs_.size());
    double running = 0.0;
    for (std::size_t i = 0; i < dist.probs_.size(); ++i) {
        running += dist.probs_[i];
        dist.cum_[i] = running;
    }
    return dist;
}

void validate(const SampleBatch& batch) {
    if (batch.values.empty())
        fail(Errc::empty_sample, "sample batch is empty");
    for (double v : batch.values)
        if (!std::isfinite(v))
            fail(Errc::non_finite_value, "sample values must be finite");
}

FiniteDistribution empirical(const SampleBatch& samples) {
    validate(samples);
    const double w = 1.0 / static_cast<double>(samples.values.size());
    std::vector<double> probs(samples.values.size(), w);
    return make_distribution(samples.values, std::move(probs));
}

FiniteDistribution pushforward(const FiniteDistribution& dist,
                               const std::vector<double>& image) {
    if (image.size() != dist.size())
        fail(Errc::length_mismatch, "image must assign one value per atom");
    return make_distribution(image, dist.probs());
}

} // namespace riskdp
