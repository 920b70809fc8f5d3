#include "riskdp/soc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "riskdp/bounds.hpp"
#include "riskdp/rng.hpp"

namespace riskdp {

namespace {

void validate_noise_stage(const NoiseStage& stage, const char* where) {
    if (stage.atoms.empty())
        fail(Errc::invalid_model, std::string(where) + ": noise has no atoms");
    if (stage.candidates.empty())
        fail(Errc::invalid_model, std::string(where) + ": noise has no candidates");
    for (std::size_t i = 1; i < stage.atoms.size(); ++i)
        if (!(stage.atoms[i] > stage.atoms[i - 1]))
            fail(Errc::invalid_model,
                 std::string(where) + ": noise atoms must be strictly increasing");
    for (const auto& cand : stage.candidates) {
        if (cand.size() != stage.atoms.size())
            fail(Errc::invalid_model,
                 std::string(where) + ": candidate length mismatch");
        double mass = 0.0;
        for (double p : cand) {
            if (!std::isfinite(p) || p < 0.0)
                fail(Errc::invalid_model,
                     std::string(where) + ": candidate probabilities invalid");
            mass += p;
        }
        if (std::abs(mass - 1.0) > 1e-9)
            fail(Errc::mass_not_one, std::string(where) + ": candidate mass off 1");
    }
}

} // namespace

void validate(const SocModel& model) {
    if (model.num_states < 1 || model.num_controls < 1)
        fail(Errc::invalid_model, "state and control grids must be nonempty");
    const int periods = model.infinite() ? 1 : model.horizon;
    if (model.infinite()) {
        if (!(model.discount > 0.0 && model.discount < 1.0))
            fail(Errc::invalid_model, "discount must lie in (0,1)");
    } else if (model.horizon < 1) {
        fail(Errc::invalid_model, "horizon must be >= 1");
    }
    if (static_cast<int>(model.noise.size()) != periods)
        fail(Errc::invalid_model, "need one noise stage per period");
    if (static_cast<int>(model.phi.size()) != periods ||
        static_cast<int>(model.cost.size()) != periods)
        fail(Errc::invalid_model, "phi and cost must cover every period");

    for (int t = 0; t < periods; ++t) {
        validate_noise_stage(model.noise[static_cast<std::size_t>(t)], "noise");
        const auto& phi_t = model.phi[static_cast<std::size_t>(t)];
        const auto& cost_t = model.cost[static_cast<std::size_t>(t)];
        const std::size_t n_atoms = model.noise[static_cast<std::size_t>(t)].atoms.size();
        if (static_cast<int>(phi_t.size()) != model.num_states ||
            static_cast<int>(cost_t.size()) != model.num_states)
            fail(Errc::invalid_model, "phi/cost state dimension mismatch");
        for (int x = 0; x < model.num_states; ++x) {
            const auto& phi_x = phi_t[static_cast<std::size_t>(x)];
            const auto& cost_x = cost_t[static_cast<std::size_t>(x)];
            if (static_cast<int>(phi_x.size()) != model.num_controls ||
                static_cast<int>(cost_x.size()) != model.num_controls)
                fail(Errc::invalid_model, "phi/cost control dimension mismatch");
            for (int u = 0; u < model.num_controls; ++u) {
                if (phi_x[static_cast<std::size_t>(u)].size() != n_atoms ||
                    cost_x[static_cast<std::size_t>(u)].size() != n_atoms)
                    fail(Errc::invalid_model, "phi/cost noise dimension mismatch");
                for (int next : phi_x[static_cast<std::size_t>(u)])
                    if (next < 0 || next >= model.num_states)
                        fail(Errc::invalid_model, "phi maps outside the state grid");
                for (double cval : cost_x[static_cast<std::size_t>(u)])
                    if (!std::isfinite(cval))
                        fail(Errc::non_finite_value, "costs must be finite");
            }
        }
    }
    if (!model.infinite()) {
        if (static_cast<int>(model.terminal.size()) != model.num_states)
            fail(Errc::invalid_model, "terminal cost must cover every state");
        for (double cval : model.terminal)
            if (!std::isfinite(cval))
                fail(Errc::non_finite_value, "terminal costs must be finite");
    }
}

namespace {

struct SweepResult {
    std::vector<double> values;
    std::vector<int> policy;
};

// One backward step at period t:
// out(x) = min_u max_cand R[ cost + discount * g(phi) ].
SweepResult sweep(const SocModel& model, int t, const RiskSpec& risk,
                  const std::vector<double>& g, double discount) {
    const NoiseStage& noise = model.noise[static_cast<std::size_t>(t)];
    const std::size_t n_atoms = noise.atoms.size();
    SweepResult out;
    out.values.assign(static_cast<std::size_t>(model.num_states), 0.0);
    out.policy.assign(static_cast<std::size_t>(model.num_states), 0);

    std::vector<double> bracket(n_atoms);
    for (int x = 0; x < model.num_states; ++x) {
        double best = std::numeric_limits<double>::infinity();
        int best_u = 0;
        for (int u = 0; u < model.num_controls; ++u) {
            const auto& phi_row =
                model.phi[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)]
                         [static_cast<std::size_t>(u)];
            const auto& cost_row =
                model.cost[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)]
                          [static_cast<std::size_t>(u)];
            for (std::size_t k = 0; k < n_atoms; ++k)
                bracket[k] = cost_row[k] +
                             discount * g[static_cast<std::size_t>(phi_row[k])];
            double worst = -std::numeric_limits<double>::infinity();
            for (const auto& cand : noise.candidates)
                worst = std::max(worst, risk_of_weighted(risk, bracket, cand));
            if (worst < best) {
                best = worst;
                best_u = u;
            }
        }
        out.values[static_cast<std::size_t>(x)] = best;
        out.policy[static_cast<std::size_t>(x)] = best_u;
    }
    return out;
}

} // namespace

FiniteSolution solve_soc_finite(const SocModel& model,
                                const StageRiskProfile& profile) {
    validate(model);
    if (model.infinite())
        fail(Errc::infinite_horizon_model,
             "finite-horizon solver needs a finite-horizon model");
    if (static_cast<int>(profile.size()) != model.horizon)
        fail(Errc::invalid_argument, "profile must list one risk per stage");
    for (const auto& risk : profile) validate(risk);

    FiniteSolution sol;
    sol.values.assign(static_cast<std::size_t>(model.horizon) + 1, {});
    sol.policy.assign(static_cast<std::size_t>(model.horizon), {});
    sol.values[static_cast<std::size_t>(model.horizon)] = model.terminal;
    for (int t = model.horizon - 1; t >= 0; --t) {
        SweepResult step =
            sweep(model, t, profile[static_cast<std::size_t>(t)],
                  sol.values[static_cast<std::size_t>(t) + 1], 1.0);
        sol.values[static_cast<std::size_t>(t)] = std::move(step.values);
        sol.policy[static_cast<std::size_t>(t)] = std::move(step.policy);
    }
    return sol;
}

std::vector<double> soc_bellman(const SocModel& model, const RiskSpec& risk,
                                const std::vector<double>& g) {
    validate(model);
    validate(risk);
    if (!model.infinite())
        fail(Errc::finite_horizon_model,
             "the Bellman operator needs an infinite-horizon model");
    if (static_cast<int>(g.size()) != model.num_states)
        fail(Errc::invalid_argument, "g must assign a value to every state");
    return sweep(model, 0, risk, g, model.discount).values;
}

namespace {

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

ValueIteration iterate_to_fixed_point(const SocModel& model, const RiskSpec& risk,
                                      double tol, long long max_iter) {
    if (!(tol > 0.0)) fail(Errc::invalid_argument, "tol must be positive");
    if (max_iter < 1) fail(Errc::invalid_argument, "max_iter must be >= 1");
    const double beta = model.discount;

    ValueIteration vi;
    std::vector<double> g(static_cast<std::size_t>(model.num_states), 0.0);
    for (long long it = 1; it <= max_iter; ++it) {
        SweepResult step = sweep(model, 0, risk, g, beta);
        const double residual = sup_distance(step.values, g);
        vi.residuals.push_back(residual);
        vi.iterations = it;
        g = std::move(step.values);
        if (beta * residual / (1.0 - beta) <= tol) {
            vi.values = std::move(g);
            vi.policy = std::move(step.policy);
            vi.converged = true;
            return vi;
        }
    }
    vi.values = std::move(g);
    vi.converged = false;
    throw MaxIterError("value iteration hit max_iter before the residual target",
                       std::move(vi));
}

} // namespace

ValueIteration soc_value_iteration(const SocModel& model, const RiskSpec& risk,
                                   double tol, long long max_iter) {
    validate(model);
    validate(risk);
    if (!model.infinite())
        fail(Errc::finite_horizon_model,
             "value iteration needs an infinite-horizon model");
    return iterate_to_fixed_point(model, risk, tol, max_iter);
}

EmpiricalValue soc_empirical_value(const SocModel& model,
                                   const SampleBatch& samples, const RiskSpec& risk,
                                   double tol, long long max_iter,
                                   const std::vector<double>* exact) {
    validate(model);
    validate(risk);
    validate(samples);
    if (!model.infinite())
        fail(Errc::finite_horizon_model,
             "the empirical fixed point needs an infinite-horizon model");
    const NoiseStage& noise = model.noise[0];
    if (noise.candidates.size() != 1)
        fail(Errc::ambiguous_candidates,
             "the empirical fixed point is defined for singleton noise laws");

    // empirical frequencies over the model's own atom grid
    std::vector<double> counts(noise.atoms.size(), 0.0);
    for (double v : samples.values) {
        auto it = std::lower_bound(noise.atoms.begin(), noise.atoms.end(), v);
        if (it == noise.atoms.end() || *it != v)
            fail(Errc::invalid_argument,
                 "sample value is not a noise atom of the model");
        counts[static_cast<std::size_t>(it - noise.atoms.begin())] += 1.0;
    }
    const double n = static_cast<double>(samples.values.size());
    for (auto& cnt : counts) cnt /= n;

    SocModel empirical_model = model;
    empirical_model.noise[0].candidates = {counts};

    EmpiricalValue out;
    out.vi = iterate_to_fixed_point(empirical_model, risk, tol, max_iter);
    out.deviation = std::numeric_limits<double>::quiet_NaN();
    if (exact != nullptr) out.deviation = sup_distance(out.vi.values, *exact);
    return out;
}

CoverageReport mc_soc_experiment(const SocModel& model, double alpha, double eps,
                                 double delta, int reps, std::uint64_t seed,
                                 double tol) {
    validate(model);
    if (reps < 1) fail(Errc::invalid_argument, "reps must be >= 1");
    if (!(eps > 0.0)) fail(Errc::eps_out_of_range, "eps must be positive");
    if (!model.infinite())
        fail(Errc::finite_horizon_model, "the experiment runs on infinite-horizon models");
    const NoiseStage& noise = model.noise[0];
    if (noise.candidates.size() != 1)
        fail(Errc::ambiguous_candidates, "the experiment needs a singleton noise law");

    const RiskSpec risk = RiskSpec::value_at_risk(alpha);
    const long long vi_cap = 1000000;
    ValueIteration exact_vi = iterate_to_fixed_point(model, risk, tol, vi_cap);

    // minimal per-(x,u) quantile slack at the exact value function
    const std::vector<double>& probs = noise.candidates[0];
    double min_kappa = std::numeric_limits<double>::infinity();
    std::vector<double> bracket(noise.atoms.size());
    for (int x = 0; x < model.num_states; ++x) {
        for (int u = 0; u < model.num_controls; ++u) {
            for (std::size_t k = 0; k < noise.atoms.size(); ++k) {
                int next = model.phi[0][static_cast<std::size_t>(x)]
                                    [static_cast<std::size_t>(u)][k];
                bracket[k] = model.cost[0][static_cast<std::size_t>(x)]
                                        [static_cast<std::size_t>(u)][k] +
                             model.discount *
                                 exact_vi.values[static_cast<std::size_t>(next)];
            }
            const double kap =
                kappa(make_distribution(bracket, probs), alpha);
            if (!(kap > 0.0))
                fail(Errc::kappa_not_positive,
                     "kappa vanishes at state " + std::to_string(x) +
                         ", control " + std::to_string(u));
            min_kappa = std::min(min_kappa, kap);
        }
    }

    const long long n = n_exact(min_kappa, delta);

    CoverageReport report;
    report.n_used = n;
    report.reps = reps;
    report.seed = seed;
    report.rep_deviation.reserve(static_cast<std::size_t>(reps));
    report.rep_covered.reserve(static_cast<std::size_t>(reps));

    // cumulative probabilities for index draws
    std::vector<double> cum(probs.size());
    double running = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        running += probs[k];
        cum[k] = running;
    }

    long long hits = 0;
    for (int r = 0; r < reps; ++r) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(r));
        SampleBatch batch;
        batch.seed = seed;
        batch.values.reserve(static_cast<std::size_t>(n));
        for (long long i = 0; i < n; ++i) {
            const double u = rng.uniform01();
            auto it = std::upper_bound(cum.begin(), cum.end(), u);
            if (it == cum.end()) --it;
            batch.values.push_back(
                noise.atoms[static_cast<std::size_t>(it - cum.begin())]);
        }
        EmpiricalValue emp =
            soc_empirical_value(model, batch, risk, tol, vi_cap, &exact_vi.values);
        const bool covered = emp.deviation <= eps;
        hits += covered ? 1 : 0;
        report.rep_deviation.push_back(emp.deviation);
        report.rep_covered.push_back(covered ? 1 : 0);
        report.max_deviation = std::max(report.max_deviation, emp.deviation);
    }
    report.coverage = static_cast<double>(hits) / static_cast<double>(reps);
    return report;
}

ScenarioTree unroll_policy_tree(const SocModel& model,
                                const std::vector<std::vector<int>>& policy,
                                int initial_state) {
    validate(model);
    if (model.infinite())
        fail(Errc::infinite_horizon_model, "only finite-horizon models unroll");
    if (static_cast<int>(policy.size()) != model.horizon)
        fail(Errc::invalid_argument, "policy must cover every stage");
    if (initial_state < 0 || initial_state >= model.num_states)
        fail(Errc::invalid_argument, "initial state out of range");

    struct Pending {
        int id;
        int state;
        double accrued;
    };

    std::vector<TreeNode> nodes;
    std::map<int, double> leaf_values;
    TreeNode root;
    root.id = 0;
    root.stage = 1;
    nodes.push_back(root);

    std::vector<Pending> frontier{{0, initial_state, 0.0}};
    for (int t = 0; t < model.horizon; ++t) {
        const NoiseStage& noise = model.noise[static_cast<std::size_t>(t)];
        std::vector<Pending> next;
        for (const Pending& cur : frontier) {
            const int u = policy[static_cast<std::size_t>(t)]
                                [static_cast<std::size_t>(cur.state)];
            if (u < 0 || u >= model.num_controls)
                fail(Errc::invalid_argument, "policy control index out of range");
            nodes[static_cast<std::size_t>(cur.id)].candidates = noise.candidates;
            for (std::size_t k = 0; k < noise.atoms.size(); ++k) {
                TreeNode child;
                child.id = static_cast<int>(nodes.size());
                child.stage = t + 2;
                child.parent = cur.id;
                nodes[static_cast<std::size_t>(cur.id)].children.push_back(child.id);
                const int next_state =
                    model.phi[static_cast<std::size_t>(t)]
                             [static_cast<std::size_t>(cur.state)]
                             [static_cast<std::size_t>(u)][k];
                const double accrued =
                    cur.accrued + model.cost[static_cast<std::size_t>(t)]
                                            [static_cast<std::size_t>(cur.state)]
                                            [static_cast<std::size_t>(u)][k];
                if (t + 1 == model.horizon)
                    leaf_values[child.id] =
                        accrued +
                        model.terminal[static_cast<std::size_t>(next_state)];
                else
                    next.push_back({child.id, next_state, accrued});
                nodes.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return ScenarioTree(model.horizon, std::move(nodes), std::move(leaf_values));
}

} // namespace riskdp
