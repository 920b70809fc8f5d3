#include "riskdp/risk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "riskdp/errors.hpp"

namespace riskdp {

namespace {

// Cumulative float sums can undershoot exact rationals by a few ulps; the
// left-quantile scan must not skip an atom for that reason.
constexpr double kCdfSlack = 1e-12;

void require_alpha_open(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(Errc::alpha_out_of_range, "alpha must lie in (0,1)");
}

} // namespace

void validate(const RiskSpec& risk) {
    switch (risk.kind) {
    case RiskKind::expectation:
        return;
    case RiskKind::var:
        require_alpha_open(risk.alpha);
        return;
    case RiskKind::avar:
        if (!(risk.alpha > 0.0 && risk.alpha <= 1.0))
            fail(Errc::alpha_out_of_range, "alpha must lie in (0,1]");
        return;
    case RiskKind::entropic:
        if (!(risk.tau > 0.0))
            fail(Errc::tau_out_of_range, "tau must be positive");
        return;
    }
    fail(Errc::invalid_argument, "unknown risk kind");
}

void validate(const RobustRiskSpec& risk) {
    validate(risk.inner);
    if (risk.member_count < 1)
        fail(Errc::empty_ambiguity_set, "ambiguity family must be nonempty");
}

const char* risk_kind_name(RiskKind kind) noexcept {
    switch (kind) {
    case RiskKind::expectation: return "expectation";
    case RiskKind::var: return "var";
    case RiskKind::avar: return "avar";
    case RiskKind::entropic: return "entropic";
    }
    return "?";
}

double expectation(const FiniteDistribution& dist) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        sum += dist.atoms()[i] * dist.probs()[i];
    return sum;
}

double value_at_risk(const FiniteDistribution& dist, double alpha) {
    require_alpha_open(alpha);
    const double level = 1.0 - alpha - kCdfSlack;
    const auto& cum = dist.cumulative();
    auto it = std::lower_bound(cum.begin(), cum.end(), level);
    if (it == cum.end()) --it;  // guard: total mass is 1 up to 1e-12
    return dist.atoms()[static_cast<std::size_t>(it - cum.begin())];
}

double avar(const FiniteDistribution& dist, double alpha) {
    if (alpha == 1.0) return expectation(dist);
    require_alpha_open(alpha);
    const double tail_start = value_at_risk(dist, alpha);
    double excess = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        double d = dist.atoms()[i] - tail_start;
        if (d > 0.0) excess += dist.probs()[i] * d;
    }
    return tail_start + excess / alpha;
}

double entropic_risk(const FiniteDistribution& dist, double tau) {
    if (!(tau > 0.0))
        fail(Errc::tau_out_of_range, "tau must be positive");
    // shift by the largest atom carrying mass, so every exponent is <= 0
    double shift = dist.min_atom();
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist.probs()[i] > 0.0) shift = dist.atoms()[i];
    double sum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        sum += dist.probs()[i] * std::exp(tau * (dist.atoms()[i] - shift));
    return shift + std::log(sum) / tau;
}

double evaluate(const RiskSpec& risk, const FiniteDistribution& dist) {
    validate(risk);
    switch (risk.kind) {
    case RiskKind::expectation: return expectation(dist);
    case RiskKind::var: return value_at_risk(dist, risk.alpha);
    case RiskKind::avar: return avar(dist, risk.alpha);
    case RiskKind::entropic: return entropic_risk(dist, risk.tau);
    }
    fail(Errc::invalid_argument, "unknown risk kind");
}

RobustEvaluation robust_evaluate(const RiskSpec& risk,
                                 const std::vector<FiniteDistribution>& members) {
    if (members.empty())
        fail(Errc::empty_ambiguity_set, "ambiguity family must be nonempty");
    RobustEvaluation best{evaluate(risk, members[0]), 0};
    for (std::size_t i = 1; i < members.size(); ++i) {
        double v = evaluate(risk, members[i]);
        if (v > best.value) best = {v, i};
    }
    return best;
}

double risk_of_weighted(const RiskSpec& risk,
                        std::span<const double> values,
                        std::span<const double> weights) {
    validate(risk);
    if (values.size() != weights.size() || values.empty())
        fail(Errc::length_mismatch, "values and weights must match and be nonempty");
    double mass = 0.0;
    for (double w : weights) mass += w;

    switch (risk.kind) {
    case RiskKind::expectation: {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            sum += values[i] * weights[i];
        return sum / mass;
    }
    case RiskKind::entropic: {
        double shift = values[0];
        bool seen = false;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (weights[i] > 0.0 && (!seen || values[i] > shift)) {
                shift = values[i];
                seen = true;
            }
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            sum += weights[i] * std::exp(risk.tau * (values[i] - shift));
        return shift + std::log(sum / mass) / risk.tau;
    }
    case RiskKind::var:
    case RiskKind::avar:
        break;
    }

    if (risk.kind == RiskKind::avar && risk.alpha == 1.0) {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            sum += values[i] * weights[i];
        return sum / mass;
    }

    // quantile scan over the values sorted ascending
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    const double level = (1.0 - risk.alpha - kCdfSlack) * mass;
    double running = 0.0;
    double quantile = values[order.back()];
    for (std::size_t idx : order) {
        running += weights[idx];
        if (running >= level) {
            quantile = values[idx];
            break;
        }
    }
    if (risk.kind == RiskKind::var) return quantile;

    double excess = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double d = values[i] - quantile;
        if (d > 0.0) excess += weights[i] * d;
    }
    return quantile + excess / (mass * risk.alpha);
}

} // namespace riskdp
