#include <cmath>
#include <vector>

#include "riskdp/errors.hpp"
#include "riskdp/risk.hpp"
#include "riskdp/rng.hpp"

namespace riskdp {

namespace {

constexpr double kAxiomTol = 1e-9;

struct TrialSpace {
    std::vector<double> probs;
    std::vector<double> z;
    std::vector<double> z_prime;
};

// Random variables on a shared finite sample space. Half the trials use
// integer-valued variables, which hit quantile kinks far more often.
TrialSpace draw_space(SplitMix64& rng, bool with_second) {
    TrialSpace s;
    std::size_t n = 2 + rng.below(5);
    s.probs.resize(n);
    double mass = 0.0;
    bool uniform = rng.below(2) == 0;
    for (auto& p : s.probs) {
        p = uniform ? 1.0 : 0.05 + rng.uniform01();
        mass += p;
    }
    for (auto& p : s.probs) p /= mass;

    bool lattice = rng.below(2) == 0;
    auto draw_value = [&]() {
        return lattice ? static_cast<double>(rng.below(7)) - 3.0
                       : rng.uniform(-5.0, 5.0);
    };
    s.z.resize(n);
    for (auto& v : s.z) v = draw_value();
    if (with_second) {
        s.z_prime.resize(n);
        for (auto& v : s.z_prime) v = draw_value();
    }
    return s;
}

double risk_on_space(const RiskSpec& risk, const std::vector<double>& values,
                     const std::vector<double>& probs) {
    return risk_of_weighted(risk, values, probs);
}

void record_failure(AxiomResult& result, const TrialSpace& space, double scalar,
                    double lhs, double rhs, int trial) {
    if (!result.pass) return;  // keep the first counterexample
    result.pass = false;
    AxiomCounterexample ce;
    ce.probs = space.probs;
    ce.z = space.z;
    ce.z_prime = space.z_prime;
    ce.scalar = scalar;
    ce.lhs = lhs;
    ce.rhs = rhs;
    ce.trial = trial;
    result.counterexample = ce;
}

} // namespace

AxiomReport check_axioms(const RiskSpec& risk, int trials, std::uint64_t seed) {
    validate(risk);
    if (trials < 1)
        fail(Errc::invalid_argument, "trials must be >= 1");

    AxiomReport report;
    report.risk = risk;
    report.trials = trials;
    report.seed = seed;

    for (int trial = 0; trial < trials; ++trial) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(trial));

        // (A1) monotonicity: Z >= Z' pointwise
        {
            TrialSpace s = draw_space(rng, true);
            for (std::size_t i = 0; i < s.z.size(); ++i)
                s.z_prime[i] = s.z[i] - std::abs(s.z_prime[i]);
            double hi = risk_on_space(risk, s.z, s.probs);
            double lo = risk_on_space(risk, s.z_prime, s.probs);
            if (hi < lo - kAxiomTol)
                record_failure(report.monotonicity, s, 0.0, hi, lo, trial);
        }

        // (A2) convexity
        {
            TrialSpace s = draw_space(rng, true);
            double t = rng.uniform01();
            std::vector<double> blend(s.z.size());
            for (std::size_t i = 0; i < s.z.size(); ++i)
                blend[i] = t * s.z[i] + (1.0 - t) * s.z_prime[i];
            double lhs = risk_on_space(risk, blend, s.probs);
            double rhs = t * risk_on_space(risk, s.z, s.probs) +
                         (1.0 - t) * risk_on_space(risk, s.z_prime, s.probs);
            if (lhs > rhs + kAxiomTol)
                record_failure(report.convexity, s, t, lhs, rhs, trial);
        }

        // (A3) translation equivariance
        {
            TrialSpace s = draw_space(rng, false);
            double shift = rng.uniform(-10.0, 10.0);
            std::vector<double> shifted(s.z.size());
            for (std::size_t i = 0; i < s.z.size(); ++i)
                shifted[i] = s.z[i] + shift;
            double lhs = risk_on_space(risk, shifted, s.probs);
            double rhs = risk_on_space(risk, s.z, s.probs) + shift;
            if (std::abs(lhs - rhs) > kAxiomTol)
                record_failure(report.translation, s, shift, lhs, rhs, trial);
        }

        // (A4) positive homogeneity
        {
            TrialSpace s = draw_space(rng, false);
            double scale = rng.uniform(0.0, 4.0);
            std::vector<double> scaled(s.z.size());
            for (std::size_t i = 0; i < s.z.size(); ++i)
                scaled[i] = scale * s.z[i];
            double lhs = risk_on_space(risk, scaled, s.probs);
            double rhs = scale * risk_on_space(risk, s.z, s.probs);
            if (std::abs(lhs - rhs) > kAxiomTol)
                record_failure(report.homogeneity, s, scale, lhs, rhs, trial);
        }
    }
    return report;
}

} // namespace riskdp
