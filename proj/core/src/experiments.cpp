#include "riskdp/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "riskdp/bounds.hpp"
#include "riskdp/errors.hpp"
#include "riskdp/risk.hpp"
#include "riskdp/rng.hpp"

namespace riskdp {

namespace {

void require_reps(int reps) {
    if (reps < 1) fail(Errc::invalid_argument, "reps must be >= 1");
}

} // namespace

CoverageReport mc_exact_experiment(const FiniteDistribution& dist, double alpha,
                                   double delta, int reps, std::uint64_t seed) {
    require_reps(reps);
    const double kap = kappa(dist, alpha);
    if (!(kap > 0.0))
        fail(Errc::kappa_not_positive,
             "1-alpha sits on an attainable cdf level; the empirical quantile "
             "need not converge");
    const long long n = n_exact(kap, delta);
    const double truth = value_at_risk(dist, alpha);
    const Sampler sampler = Sampler::finite(dist);

    CoverageReport report;
    report.n_used = n;
    report.reps = reps;
    report.seed = seed;
    report.rep_deviation.reserve(static_cast<std::size_t>(reps));
    report.rep_covered.reserve(static_cast<std::size_t>(reps));

    long long hits = 0;
    for (int r = 0; r < reps; ++r) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
        SampleBatch batch;
        batch.seed = seed;
        batch.values.resize(static_cast<std::size_t>(n));
        for (auto& v : batch.values) v = sampler.draw(rng);
        const double estimate = empirical_var(batch, alpha);
        const bool exact = estimate == truth;
        hits += exact ? 1 : 0;
        report.rep_deviation.push_back(std::abs(estimate - truth));
        report.rep_covered.push_back(exact ? 1 : 0);
        report.max_deviation = std::max(report.max_deviation, report.rep_deviation.back());
    }
    report.coverage = static_cast<double>(hits) / static_cast<double>(reps);
    return report;
}

CoverageReport mc_growth_experiment(const Sampler& sampler, double alpha,
                                    double c, double b, double eps, double delta,
                                    int reps, std::uint64_t seed) {
    require_reps(reps);
    if (sampler.finite_support())
        fail(Errc::invalid_argument,
             "the growth experiment needs a piecewise-linear cdf law");
    if (!(b > 0.0))
        fail(Errc::invalid_argument, "growth radius b must be positive");
    if (!(eps > 0.0 && eps < b))
        fail(Errc::eps_out_of_range, "eps must lie in (0,b)");

    const double truth = sampler.true_var(alpha);
    if (sampler.min_slope(truth - b, truth + b) < c - 1e-12)
        fail(Errc::growth_violated,
             "cdf slope drops below c inside [v-b, v+b]");

    const long long n = n_growth(c, eps, delta);

    CoverageReport report;
    report.n_used = n;
    report.reps = reps;
    report.seed = seed;
    report.rep_deviation.reserve(static_cast<std::size_t>(reps));
    report.rep_covered.reserve(static_cast<std::size_t>(reps));

    long long hits = 0;
    for (int r = 0; r < reps; ++r) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
        SampleBatch batch;
        batch.seed = seed;
        batch.values.resize(static_cast<std::size_t>(n));
        for (auto& v : batch.values) v = sampler.draw(rng);
        const double estimate = empirical_var(batch, alpha);
        const double dev = std::abs(estimate - truth);
        const bool covered = dev < eps;
        hits += covered ? 1 : 0;
        report.rep_deviation.push_back(dev);
        report.rep_covered.push_back(covered ? 1 : 0);
        report.max_deviation = std::max(report.max_deviation, dev);
    }
    report.coverage = static_cast<double>(hits) / static_cast<double>(reps);
    return report;
}

CoverageReport mc_uniform_experiment(const UniformFamily& family,
                                     const Sampler& sampler, double alpha,
                                     double c, double b, double eps, double delta,
                                     int reps, std::uint64_t seed) {
    require_reps(reps);
    if (family.grid.empty() || !family.psi)
        fail(Errc::invalid_argument, "family needs a grid and an objective");
    if (family.true_vars.size() != family.grid.size())
        fail(Errc::length_mismatch, "one true quantile per grid point required");
    if (!(b > 0.0) || !(eps > 0.0 && eps < b))
        fail(Errc::eps_out_of_range, "eps must lie in (0,b)");

    const double diameter =
        *std::max_element(family.grid.begin(), family.grid.end()) -
        *std::min_element(family.grid.begin(), family.grid.end());
    const long long n =
        n_uniform(family.dim, family.lipschitz, diameter, c, eps, delta);

    // epsilon-optimal set of the true problem; the 1e-12 slack keeps exact
    // boundary points inside
    const double true_min =
        *std::min_element(family.true_vars.begin(), family.true_vars.end());
    std::vector<char> eps_optimal(family.grid.size());
    for (std::size_t i = 0; i < family.grid.size(); ++i)
        eps_optimal[i] = family.true_vars[i] <= true_min + eps + 1e-12 ? 1 : 0;

    CoverageReport report;
    report.n_used = n;
    report.reps = reps;
    report.seed = seed;
    report.rep_deviation.reserve(static_cast<std::size_t>(reps));
    report.rep_covered.reserve(static_cast<std::size_t>(reps));

    long long sup_hits = 0;
    long long subset_hits = 0;
    std::vector<double> draws(static_cast<std::size_t>(n));
    std::vector<double> objective(static_cast<std::size_t>(n));
    std::vector<double> emp_var(family.grid.size());
    for (int r = 0; r < reps; ++r) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
        for (auto& v : draws) v = sampler.draw(rng);

        double sup_dev = 0.0;
        for (std::size_t i = 0; i < family.grid.size(); ++i) {
            const double x = family.grid[i];
            for (std::size_t j = 0; j < draws.size(); ++j)
                objective[j] = family.psi(x, draws[j]);
            SampleBatch batch{objective, seed};
            emp_var[i] = empirical_var(batch, alpha);
            sup_dev = std::max(sup_dev, std::abs(emp_var[i] - family.true_vars[i]));
        }
        const bool sup_ok = sup_dev <= eps;
        sup_hits += sup_ok ? 1 : 0;

        // every empirical minimizer must be eps-optimal for the true problem
        const double emp_min = *std::min_element(emp_var.begin(), emp_var.end());
        bool subset_ok = true;
        for (std::size_t i = 0; i < family.grid.size(); ++i)
            if (emp_var[i] == emp_min && !eps_optimal[i]) subset_ok = false;
        subset_hits += subset_ok ? 1 : 0;

        report.rep_deviation.push_back(sup_dev);
        report.rep_covered.push_back(sup_ok ? 1 : 0);
        report.max_deviation = std::max(report.max_deviation, sup_dev);
    }
    report.coverage = static_cast<double>(sup_hits) / static_cast<double>(reps);
    report.subset_coverage =
        static_cast<double>(subset_hits) / static_cast<double>(reps);
    return report;
}

} // namespace riskdp
