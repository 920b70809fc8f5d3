#include "riskdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskdp/errors.hpp"

namespace riskdp {

void validate(const MdpModel& model) {
    if (model.num_states < 1)
        fail(Errc::invalid_model, "state space must be nonempty");
    const int periods = model.infinite() ? 1 : model.stages;
    if (model.infinite()) {
        if (!(model.discount > 0.0 && model.discount < 1.0))
            fail(Errc::invalid_model, "discount must lie in (0,1)");
    } else if (model.stages < 1) {
        fail(Errc::invalid_model, "stages must be >= 1");
    }
    if (static_cast<int>(model.actions.size()) != model.num_states)
        fail(Errc::invalid_model, "need an action set per state");
    for (const auto& set : model.actions)
        if (set.empty())
            fail(Errc::invalid_model, "every state needs at least one action");
    if (model.initial_state < 0 || model.initial_state >= model.num_states)
        fail(Errc::invalid_model, "initial state out of range");

    if (static_cast<int>(model.kernels.size()) != periods ||
        static_cast<int>(model.cost.size()) != periods)
        fail(Errc::invalid_model, "kernels and cost must cover every period");
    for (int t = 0; t < periods; ++t) {
        const auto& kernels_t = model.kernels[static_cast<std::size_t>(t)];
        const auto& cost_t = model.cost[static_cast<std::size_t>(t)];
        if (static_cast<int>(kernels_t.size()) != model.num_states ||
            static_cast<int>(cost_t.size()) != model.num_states)
            fail(Errc::invalid_model, "kernel/cost state dimension mismatch");
        for (int s = 0; s < model.num_states; ++s) {
            const std::size_t n_actions =
                model.actions[static_cast<std::size_t>(s)].size();
            if (kernels_t[static_cast<std::size_t>(s)].size() != n_actions ||
                cost_t[static_cast<std::size_t>(s)].size() != n_actions)
                fail(Errc::invalid_model, "kernel/cost action dimension mismatch");
            for (std::size_t a = 0; a < n_actions; ++a) {
                const KernelEntry& entry =
                    kernels_t[static_cast<std::size_t>(s)][a];
                if (entry.candidates.empty())
                    fail(Errc::invalid_model, "candidate kernel list is empty");
                for (const auto& row : entry.candidates) {
                    if (static_cast<int>(row.size()) != model.num_states)
                        fail(Errc::invalid_model,
                             "kernel row must cover the next-state space");
                    double mass = 0.0;
                    for (double p : row) {
                        if (!std::isfinite(p) || p < 0.0)
                            fail(Errc::invalid_model, "kernel probabilities invalid");
                        mass += p;
                    }
                    if (std::abs(mass - 1.0) > 1e-9)
                        fail(Errc::mass_not_one, "kernel mass off 1");
                }
                const auto& cost_row = cost_t[static_cast<std::size_t>(s)][a];
                if (static_cast<int>(cost_row.size()) != model.num_states)
                    fail(Errc::invalid_model, "cost row must cover next states");
                for (double cval : cost_row)
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

struct MdpSweep {
    std::vector<double> values;
    std::vector<int> policy;             // position within actions[s]
    std::vector<std::vector<int>> nature;  // argmax candidate per (s, a)
};

MdpSweep mdp_sweep(const MdpModel& model, int t, const RiskSpec& risk,
                   const std::vector<double>& g, double discount) {
    MdpSweep out;
    out.values.assign(static_cast<std::size_t>(model.num_states), 0.0);
    out.policy.assign(static_cast<std::size_t>(model.num_states), 0);
    out.nature.resize(static_cast<std::size_t>(model.num_states));

    std::vector<double> bracket(static_cast<std::size_t>(model.num_states));
    for (int s = 0; s < model.num_states; ++s) {
        const std::size_t n_actions = model.actions[static_cast<std::size_t>(s)].size();
        out.nature[static_cast<std::size_t>(s)].assign(n_actions, 0);
        double best = std::numeric_limits<double>::infinity();
        int best_a = 0;
        for (std::size_t a = 0; a < n_actions; ++a) {
            const auto& cost_row =
                model.cost[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)][a];
            for (int next = 0; next < model.num_states; ++next)
                bracket[static_cast<std::size_t>(next)] =
                    cost_row[static_cast<std::size_t>(next)] +
                    discount * g[static_cast<std::size_t>(next)];
            const KernelEntry& entry =
                model.kernels[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)][a];
            double worst = -std::numeric_limits<double>::infinity();
            int worst_idx = 0;
            for (std::size_t cand = 0; cand < entry.candidates.size(); ++cand) {
                double v = risk_of_weighted(risk, bracket, entry.candidates[cand]);
                if (v > worst) {
                    worst = v;
                    worst_idx = static_cast<int>(cand);
                }
            }
            out.nature[static_cast<std::size_t>(s)][a] = worst_idx;
            if (worst < best) {
                best = worst;
                best_a = static_cast<int>(a);
            }
        }
        out.values[static_cast<std::size_t>(s)] = best;
        out.policy[static_cast<std::size_t>(s)] = best_a;
    }
    return out;
}

void check_profile(const MdpModel& model, const StageRiskProfile& profile) {
    if (static_cast<int>(profile.size()) != model.stages)
        fail(Errc::invalid_argument, "profile must list one risk per stage");
    for (const auto& risk : profile) validate(risk);
}

} // namespace

FiniteSolution solve_mdp_finite(const MdpModel& model,
                                const StageRiskProfile& profile) {
    validate(model);
    if (model.infinite())
        fail(Errc::infinite_horizon_model,
             "finite-horizon solver needs a finite-horizon model");
    check_profile(model, profile);

    FiniteSolution sol;
    sol.values.assign(static_cast<std::size_t>(model.stages) + 1, {});
    sol.policy.assign(static_cast<std::size_t>(model.stages), {});
    sol.values[static_cast<std::size_t>(model.stages)] = model.terminal;
    for (int t = model.stages - 1; t >= 0; --t) {
        MdpSweep step = mdp_sweep(model, t, profile[static_cast<std::size_t>(t)],
                                  sol.values[static_cast<std::size_t>(t) + 1], 1.0);
        sol.values[static_cast<std::size_t>(t)] = std::move(step.values);
        sol.policy[static_cast<std::size_t>(t)] = std::move(step.policy);
    }
    return sol;
}

GameSolution solve_mdp_game(const MdpModel& model, const StageRiskProfile& profile) {
    validate(model);
    if (model.infinite())
        fail(Errc::infinite_horizon_model,
             "the stagewise game needs a finite-horizon model");
    check_profile(model, profile);

    GameSolution game;
    game.solution.values.assign(static_cast<std::size_t>(model.stages) + 1, {});
    game.solution.policy.assign(static_cast<std::size_t>(model.stages), {});
    game.nature.assign(static_cast<std::size_t>(model.stages), {});
    game.solution.values[static_cast<std::size_t>(model.stages)] = model.terminal;
    for (int t = model.stages - 1; t >= 0; --t) {
        MdpSweep step =
            mdp_sweep(model, t, profile[static_cast<std::size_t>(t)],
                      game.solution.values[static_cast<std::size_t>(t) + 1], 1.0);
        game.solution.values[static_cast<std::size_t>(t)] = std::move(step.values);
        game.solution.policy[static_cast<std::size_t>(t)] = std::move(step.policy);
        game.nature[static_cast<std::size_t>(t)] = std::move(step.nature);
    }
    return game;
}

double evaluate_policy_nested(const MdpModel& model,
                              const std::vector<std::vector<int>>& policy,
                              const StageRiskProfile& profile,
                              const NaturePolicy* nature, int initial_state) {
    validate(model);
    if (model.infinite())
        fail(Errc::infinite_horizon_model,
             "nested policy evaluation needs a finite-horizon model");
    check_profile(model, profile);
    if (static_cast<int>(policy.size()) != model.stages)
        fail(Errc::invalid_argument, "policy must cover every stage");
    const int s1 = initial_state < 0 ? model.initial_state : initial_state;
    if (s1 < 0 || s1 >= model.num_states)
        fail(Errc::invalid_argument, "initial state out of range");

    std::vector<double> z = model.terminal;
    std::vector<double> bracket(static_cast<std::size_t>(model.num_states));
    for (int t = model.stages - 1; t >= 0; --t) {
        std::vector<double> z_prev(static_cast<std::size_t>(model.num_states));
        for (int s = 0; s < model.num_states; ++s) {
            const auto& actions = model.actions[static_cast<std::size_t>(s)];
            const int a = policy[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)];
            if (a < 0 || a >= static_cast<int>(actions.size()))
                fail(Errc::invalid_argument, "policy action index out of range");
            const KernelEntry& entry =
                model.kernels[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]
                             [static_cast<std::size_t>(a)];
            int cand = 0;
            if (entry.candidates.size() > 1) {
                if (nature == nullptr)
                    fail(Errc::unresolved_ambiguity,
                         "several candidate kernels at stage " + std::to_string(t + 1) +
                             ", state " + std::to_string(s) +
                             "; supply a nature policy");
                cand = (*nature)[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]
                                [static_cast<std::size_t>(a)];
            } else if (nature != nullptr) {
                cand = (*nature)[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]
                                [static_cast<std::size_t>(a)];
            }
            if (cand < 0 || cand >= static_cast<int>(entry.candidates.size()))
                fail(Errc::member_out_of_range, "nature candidate index out of range");
            const auto& cost_row =
                model.cost[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)]
                          [static_cast<std::size_t>(a)];
            for (int next = 0; next < model.num_states; ++next)
                bracket[static_cast<std::size_t>(next)] =
                    cost_row[static_cast<std::size_t>(next)] +
                    z[static_cast<std::size_t>(next)];
            z_prev[static_cast<std::size_t>(s)] = risk_of_weighted(
                profile[static_cast<std::size_t>(t)], bracket,
                entry.candidates[static_cast<std::size_t>(cand)]);
        }
        z = std::move(z_prev);
    }
    return z[static_cast<std::size_t>(s1)];
}

StaticRobustResult static_robust_bruteforce(const MdpModel& model,
                                            const StageRiskProfile& profile) {
    validate(model);
    if (model.infinite())
        fail(Errc::infinite_horizon_model,
             "the static adversary is a finite-horizon construction");
    check_profile(model, profile);

    // a per-stage candidate index must make sense for every (s,a)
    std::vector<std::size_t> counts(static_cast<std::size_t>(model.stages));
    for (int t = 0; t < model.stages; ++t) {
        std::size_t n = model.kernels[static_cast<std::size_t>(t)][0][0].candidates.size();
        for (int s = 0; s < model.num_states; ++s)
            for (std::size_t a = 0;
                 a < model.actions[static_cast<std::size_t>(s)].size(); ++a)
                if (model.kernels[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)][a]
                        .candidates.size() != n)
                    fail(Errc::invalid_model,
                         "stage " + std::to_string(t + 1) +
                             ": candidate counts differ across (s,a); a global "
                             "stage index is undefined");
        counts[static_cast<std::size_t>(t)] = n;
    }
    double combos = 1.0;
    for (std::size_t n : counts) combos *= static_cast<double>(n);
    if (combos > 1e4)
        fail(Errc::enumeration_too_large,
             "per-stage selections exceed the 10^4 enumeration budget");

    const FiniteSolution dynamic = solve_mdp_finite(model, profile);
    const double dynamic_value =
        dynamic.values[0][static_cast<std::size_t>(model.initial_state)];

    StaticRobustResult out;
    out.dynamic_value = dynamic_value;
    out.static_value = -std::numeric_limits<double>::infinity();

    std::vector<int> choice(static_cast<std::size_t>(model.stages), 0);
    MdpModel fixed = model;
    for (;;) {
        for (int t = 0; t < model.stages; ++t)
            for (int s = 0; s < model.num_states; ++s)
                for (std::size_t a = 0;
                     a < model.actions[static_cast<std::size_t>(s)].size(); ++a)
                    fixed.kernels[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)][a]
                        .candidates = {model.kernels[static_cast<std::size_t>(t)]
                                           [static_cast<std::size_t>(s)][a]
                                           .candidates[static_cast<std::size_t>(
                                               choice[static_cast<std::size_t>(t)])]};
        const FiniteSolution sol = solve_mdp_finite(fixed, profile);
        const double value =
            sol.values[0][static_cast<std::size_t>(model.initial_state)];
        if (value > out.static_value) {
            out.static_value = value;
            out.kernel_choice = choice;
        }

        int t = model.stages - 1;
        while (t >= 0) {
            choice[static_cast<std::size_t>(t)] += 1;
            if (choice[static_cast<std::size_t>(t)] <
                static_cast<int>(counts[static_cast<std::size_t>(t)]))
                break;
            choice[static_cast<std::size_t>(t)] = 0;
            --t;
        }
        if (t < 0) break;
    }
    out.gap = out.dynamic_value - out.static_value;
    return out;
}

ValueIteration mdp_value_iteration(const MdpModel& model, const RiskSpec& risk,
                                   double tol, long long max_iter) {
    validate(model);
    validate(risk);
    if (!model.infinite())
        fail(Errc::finite_horizon_model,
             "value iteration needs a stationary discounted model");
    if (!(tol > 0.0)) fail(Errc::invalid_argument, "tol must be positive");
    if (max_iter < 1) fail(Errc::invalid_argument, "max_iter must be >= 1");
    const double beta = model.discount;

    ValueIteration vi;
    std::vector<double> g(static_cast<std::size_t>(model.num_states), 0.0);
    for (long long it = 1; it <= max_iter; ++it) {
        MdpSweep step = mdp_sweep(model, 0, risk, g, beta);
        double residual = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            residual = std::max(residual, std::abs(step.values[i] - g[i]));
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

MdpModel induced_mdp_from_soc(const SocModel& soc) {
    validate(soc);
    const int periods = soc.infinite() ? 1 : soc.horizon;

    MdpModel mdp;
    mdp.stages = soc.horizon;
    mdp.discount = soc.discount;
    mdp.num_states = soc.num_states;
    mdp.actions.assign(static_cast<std::size_t>(soc.num_states), {});
    for (auto& set : mdp.actions) {
        set.resize(static_cast<std::size_t>(soc.num_controls));
        for (int u = 0; u < soc.num_controls; ++u)
            set[static_cast<std::size_t>(u)] = u;
    }
    mdp.terminal = soc.terminal;
    mdp.kernels.resize(static_cast<std::size_t>(periods));
    mdp.cost.resize(static_cast<std::size_t>(periods));

    for (int t = 0; t < periods; ++t) {
        const NoiseStage& noise = soc.noise[static_cast<std::size_t>(t)];
        auto& kernels_t = mdp.kernels[static_cast<std::size_t>(t)];
        auto& cost_t = mdp.cost[static_cast<std::size_t>(t)];
        kernels_t.resize(static_cast<std::size_t>(soc.num_states));
        cost_t.resize(static_cast<std::size_t>(soc.num_states));
        for (int x = 0; x < soc.num_states; ++x) {
            kernels_t[static_cast<std::size_t>(x)].resize(
                static_cast<std::size_t>(soc.num_controls));
            cost_t[static_cast<std::size_t>(x)].resize(
                static_cast<std::size_t>(soc.num_controls));
            for (int u = 0; u < soc.num_controls; ++u) {
                const auto& phi_row = soc.phi[static_cast<std::size_t>(t)]
                                             [static_cast<std::size_t>(x)]
                                             [static_cast<std::size_t>(u)];
                const auto& cost_row = soc.cost[static_cast<std::size_t>(t)]
                                               [static_cast<std::size_t>(x)]
                                               [static_cast<std::size_t>(u)];
                // the SOC cost must factor through the next state
                std::vector<double> state_cost(
                    static_cast<std::size_t>(soc.num_states), 0.0);
                std::vector<char> seen(static_cast<std::size_t>(soc.num_states), 0);
                for (std::size_t k = 0; k < phi_row.size(); ++k) {
                    const auto next = static_cast<std::size_t>(phi_row[k]);
                    if (seen[next] && state_cost[next] != cost_row[k])
                        fail(Errc::invalid_model,
                             "cost does not factor through the next state; the "
                             "induced MDP is undefined");
                    state_cost[next] = cost_row[k];
                    seen[next] = 1;
                }
                KernelEntry entry;
                for (const auto& cand : noise.candidates) {
                    std::vector<double> row(
                        static_cast<std::size_t>(soc.num_states), 0.0);
                    for (std::size_t k = 0; k < phi_row.size(); ++k)
                        row[static_cast<std::size_t>(phi_row[k])] += cand[k];
                    entry.candidates.push_back(std::move(row));
                }
                kernels_t[static_cast<std::size_t>(x)][static_cast<std::size_t>(u)] =
                    std::move(entry);
                cost_t[static_cast<std::size_t>(x)][static_cast<std::size_t>(u)] =
                    std::move(state_cost);
            }
        }
    }
    validate(mdp);
    return mdp;
}

} // namespace riskdp
