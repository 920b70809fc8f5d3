#include "riskdp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "riskdp/errors.hpp"
#include "riskdp/risk.hpp"

namespace riskdp {

namespace {

constexpr double kCdfSlack = 1e-12;

long long ceil_to_count(double x, const char* what) {
    if (!std::isfinite(x))
        fail(Errc::invalid_argument, std::string(what) + " is not finite");
    double c = std::ceil(x);
    if (c < 1.0) c = 1.0;
    if (c > 9.0e18)
        fail(Errc::invalid_argument, std::string(what) + " overflows a sample count");
    return static_cast<long long>(c);
}

void require_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        fail(Errc::delta_out_of_range, "delta must lie in (0,1)");
}

} // namespace

double empirical_var(const SampleBatch& samples, double alpha) {
    validate(samples);
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(Errc::alpha_out_of_range, "alpha must lie in (0,1)");

    // order statistic route
    std::vector<double> sorted = samples.values;
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    long long k = static_cast<long long>(std::ceil(n * (1.0 - alpha - kCdfSlack)));
    k = std::clamp<long long>(k, 1, static_cast<long long>(sorted.size()));
    double by_order = sorted[static_cast<std::size_t>(k - 1)];

    // empirical-measure route; the two must agree identically
    double by_measure = value_at_risk(empirical(samples), alpha);
    if (by_order != by_measure)
        fail(Errc::invalid_argument, "order-statistic and empirical-cdf quantiles disagree");
    return by_order;
}

double kappa(const FiniteDistribution& dist, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(Errc::alpha_out_of_range, "alpha must lie in (0,1)");
    const double v = value_at_risk(dist, alpha);
    const double level = 1.0 - alpha;
    const double lo = level - dist.cdf_left(v);
    const double hi = dist.cdf(v) - level;
    return std::max(0.0, std::min(lo, hi));
}

long long n_exact(double kappa, double delta) {
    if (!(kappa > 0.0))
        fail(Errc::kappa_not_positive, "kappa must be positive");
    require_delta(delta);
    return ceil_to_count(0.5 / (kappa * kappa) * std::log(2.0 / delta), "n_exact");
}

long long n_growth(double c, double eps, double delta) {
    if (!(c > 0.0))
        fail(Errc::invalid_argument, "growth constant c must be positive");
    if (!(eps > 0.0))
        fail(Errc::eps_out_of_range, "eps must be positive");
    require_delta(delta);
    return ceil_to_count(0.5 / (c * c * eps * eps) * std::log(2.0 / delta),
                         "n_growth");
}

long long n_uniform(int n, double lipschitz, double diameter, double c,
                    double eps, double delta) {
    if (n < 1) fail(Errc::invalid_argument, "dimension n must be >= 1");
    if (!(lipschitz > 0.0) || !(diameter > 0.0) || !(c > 0.0))
        fail(Errc::invalid_argument, "L, D and c must be positive");
    if (!(eps > 0.0))
        fail(Errc::eps_out_of_range, "eps must be positive");
    require_delta(delta);
    const double net_arg = 4.0 * lipschitz * diameter / eps;
    if (net_arg <= 1.0)
        fail(Errc::nonpositive_log_argument, "4*L*D must exceed eps");
    const double inner = n * std::log(net_arg) + std::log(1.0 / delta);
    return ceil_to_count(2.0 / (c * c * eps * eps) * inner, "n_uniform");
}

long long n_soc(int n, int m, double lipschitz, double diameter, double beta,
                double kappa_alpha, double eps, double delta) {
    if (n < 1 || m < 1)
        fail(Errc::invalid_argument, "dimensions n and m must be >= 1");
    if (!(lipschitz > 0.0) || !(diameter > 0.0))
        fail(Errc::invalid_argument, "L and D must be positive");
    if (!(beta > 0.0 && beta < 1.0))
        fail(Errc::invalid_argument, "beta must lie in (0,1)");
    if (!(kappa_alpha > 0.0))
        fail(Errc::kappa_not_positive, "kappa_alpha must be positive");
    if (!(eps > 0.0))
        fail(Errc::eps_out_of_range, "eps must be positive");
    require_delta(delta);
    if (!(beta * lipschitz > 1.0))
        fail(Errc::beta_l_regime,
             "beta*L <= 1: the bound's log(beta*L) term changes sign in this "
             "regime and no variant formula is assumed");

    const double dims = static_cast<double>(n + m);
    const double horizon = 1.0 - beta;
    const double t1 =
        dims * std::log(8.0 * diameter * lipschitz * lipschitz /
                        (eps * horizon * (beta * lipschitz - 1.0)));
    const double t2 = dims / horizon * std::log(beta * lipschitz) *
                      std::log(4.0 / (eps * horizon));
    const double t3 = std::log(2.0 / delta);
    return ceil_to_count(0.5 / (kappa_alpha * kappa_alpha) * (t1 + t2 + t3),
                         "n_soc");
}

LipschitzApprox lipschitz_tilde_constants(double l_risk, double lipschitz,
                                          double beta, double eps) {
    if (!(l_risk > 0.0) || !(lipschitz > 0.0))
        fail(Errc::invalid_argument, "Lipschitz constants must be positive");
    if (!(beta > 0.0 && beta < 1.0))
        fail(Errc::invalid_argument, "beta must lie in (0,1)");
    // eps == 1 is the degenerate boundary: zero iterations, zero constant
    if (!(eps > 0.0 && eps <= 1.0))
        fail(Errc::eps_out_of_range, "eps must lie in (0,1]");

    LipschitzApprox out;
    out.k = static_cast<long long>(std::ceil(std::log(1.0 / eps) / (1.0 - beta)));

    const double step = l_risk * lipschitz;  // one-sweep gain
    const double ratio = beta * step;
    if (ratio == 1.0) {
        out.l_tilde = static_cast<double>(out.k) * step;
    } else {
        out.l_tilde =
            step * (std::pow(ratio, static_cast<double>(out.k)) - 1.0) /
            (ratio - 1.0);
    }
    return out;
}

} // namespace riskdp
