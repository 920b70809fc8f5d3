#include "riskdp/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "riskdp/errors.hpp"

namespace riskdp {

namespace {

void validate_matrix(const PsiMatrix& psi) {
    if (psi.rows == 0 || psi.cols == 0)
        fail(Errc::invalid_argument, "psi matrix must be nonempty");
    if (psi.entries.size() != psi.rows * psi.cols)
        fail(Errc::length_mismatch, "psi entries do not match the shape");
    for (double v : psi.entries)
        if (!std::isfinite(v))
            fail(Errc::non_finite_value, "psi entries must be finite");
}

double matrix_scale(const PsiMatrix& psi) {
    double scale = 1.0;
    for (double v : psi.entries) scale = std::max(scale, std::abs(v));
    return scale;
}

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_linear(std::vector<double> a, std::vector<double> b,
                  std::size_t n, std::vector<double>& x) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (std::abs(a[pivot * n + col]) < 1e-13) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r * n + c] * x[c];
        x[r] = acc / a[r * n + r];
    }
    return true;
}

// next k-subset of {0..n-1} in lexicographic order; false when exhausted
bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (idx[i] + 1 <= n - (k - i)) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

struct Candidate {
    double value = 0.0;
    std::vector<double> row_mix, col_mix;
    double violation = std::numeric_limits<double>::infinity();
};

} // namespace

PsiMatrix make_psi(std::size_t rows, std::size_t cols, std::vector<double> entries) {
    PsiMatrix psi;
    psi.rows = rows;
    psi.cols = cols;
    psi.entries = std::move(entries);
    validate_matrix(psi);
    return psi;
}

PsiMatrix build_psi_soc(const SocModel& model, int stage, int state,
                        const std::vector<double>& next_values,
                        const RiskSpec& risk) {
    validate(model);
    validate(risk);
    const int t = model.infinite() ? 0 : stage - 1;
    if (model.infinite() ? stage != 0
                         : (stage < 1 || stage > model.horizon))
        fail(Errc::invalid_argument, "stage out of range");
    if (state < 0 || state >= model.num_states)
        fail(Errc::invalid_argument, "state out of range");
    if (static_cast<int>(next_values.size()) != model.num_states)
        fail(Errc::invalid_argument, "need a next value per state");
    const double discount = model.infinite() ? model.discount : 1.0;
    const NoiseStage& noise = model.noise[static_cast<std::size_t>(t)];

    PsiMatrix psi;
    psi.rows = static_cast<std::size_t>(model.num_controls);
    psi.cols = noise.candidates.size();
    psi.entries.resize(psi.rows * psi.cols);
    psi.entropic_risk = risk.kind == RiskKind::entropic;

    std::vector<double> bracket(noise.atoms.size());
    for (int u = 0; u < model.num_controls; ++u) {
        for (std::size_t k = 0; k < noise.atoms.size(); ++k) {
            int next = model.phi[static_cast<std::size_t>(t)]
                                [static_cast<std::size_t>(state)]
                                [static_cast<std::size_t>(u)][k];
            bracket[k] = model.cost[static_cast<std::size_t>(t)]
                                   [static_cast<std::size_t>(state)]
                                   [static_cast<std::size_t>(u)][k] +
                         discount * next_values[static_cast<std::size_t>(next)];
        }
        for (std::size_t p = 0; p < psi.cols; ++p)
            psi.at(static_cast<std::size_t>(u), p) =
                risk_of_weighted(risk, bracket, noise.candidates[p]);
    }
    return psi;
}

PsiMatrix build_psi_mdp(const MdpModel& model, int stage, int state,
                        const std::vector<double>& next_values,
                        const RiskSpec& risk) {
    validate(model);
    validate(risk);
    const int t = model.infinite() ? 0 : stage - 1;
    if (model.infinite() ? stage != 0 : (stage < 1 || stage > model.stages))
        fail(Errc::invalid_argument, "stage out of range");
    if (state < 0 || state >= model.num_states)
        fail(Errc::invalid_argument, "state out of range");
    if (static_cast<int>(next_values.size()) != model.num_states)
        fail(Errc::invalid_argument, "need a next value per state");
    const double discount = model.infinite() ? model.discount : 1.0;

    const auto& entries =
        model.kernels[static_cast<std::size_t>(t)][static_cast<std::size_t>(state)];
    const std::size_t n_actions = entries.size();
    const std::size_t n_cands = entries[0].candidates.size();
    for (const auto& entry : entries)
        if (entry.candidates.size() != n_cands)
            fail(Errc::invalid_model,
                 "candidate counts differ across the state's actions");

    PsiMatrix psi;
    psi.rows = n_actions;
    psi.cols = n_cands;
    psi.entries.resize(psi.rows * psi.cols);
    psi.entropic_risk = risk.kind == RiskKind::entropic;

    std::vector<double> bracket(static_cast<std::size_t>(model.num_states));
    for (std::size_t a = 0; a < n_actions; ++a) {
        const auto& cost_row =
            model.cost[static_cast<std::size_t>(t)][static_cast<std::size_t>(state)][a];
        for (int next = 0; next < model.num_states; ++next)
            bracket[static_cast<std::size_t>(next)] =
                cost_row[static_cast<std::size_t>(next)] +
                discount * next_values[static_cast<std::size_t>(next)];
        for (std::size_t p = 0; p < n_cands; ++p)
            psi.at(a, p) = risk_of_weighted(risk, bracket, entries[a].candidates[p]);
    }
    return psi;
}

MinimaxResult primal_minimax(const PsiMatrix& psi) {
    validate_matrix(psi);
    MinimaxResult best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t u = 0; u < psi.rows; ++u) {
        double row_max = -std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < psi.cols; ++p)
            row_max = std::max(row_max, psi.at(u, p));
        if (row_max < best.value) best = {row_max, u};
    }
    return best;
}

MinimaxResult dual_maximin(const PsiMatrix& psi) {
    validate_matrix(psi);
    MinimaxResult best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t p = 0; p < psi.cols; ++p) {
        double col_min = std::numeric_limits<double>::infinity();
        for (std::size_t u = 0; u < psi.rows; ++u)
            col_min = std::min(col_min, psi.at(u, p));
        if (col_min > best.value) best = {col_min, p};
    }
    return best;
}

MixedSolution randomized_value(const PsiMatrix& psi) {
    validate_matrix(psi);
    if (psi.rows > 16 || psi.cols > 16)
        fail(Errc::matrix_too_large,
             "support enumeration is budgeted for matrices up to 16x16");

    const double scale = matrix_scale(psi);
    const double feas_tol = 1e-11 * scale;
    const double opt_tol = 1e-9 * scale;

    Candidate best;

    // Square support pairs (I, J), |I| = |J| = k, in lexicographic order.
    // For each, the equalizing mixes solve
    //   [ B^T  -1 ] [q]   [0]        [ B  -1 ] [r]   [0]
    //   [ 1^T   0 ] [v] = [1]  and   [ 1^T  0 ] [w] = [1],
    // where B is the submatrix; a verified pair certifies the game value.
    const std::size_t kmax = std::min(psi.rows, psi.cols);
    for (std::size_t k = 1; k <= kmax; ++k) {
        std::vector<std::size_t> rows_idx(k), first(k);
        for (std::size_t i = 0; i < k; ++i) first[i] = i;

        rows_idx = first;
        do {
            std::vector<std::size_t> cols_idx = first;
            do {
                const std::size_t n = k + 1;
                std::vector<double> a(n * n, 0.0), b(n, 0.0), sol;

                // row mix: q^T B = v 1^T, sum q = 1
                for (std::size_t j = 0; j < k; ++j) {
                    for (std::size_t i = 0; i < k; ++i)
                        a[j * n + i] = psi.at(rows_idx[i], cols_idx[j]);
                    a[j * n + k] = -1.0;
                }
                for (std::size_t i = 0; i < k; ++i) a[k * n + i] = 1.0;
                b[k] = 1.0;
                if (!solve_linear(a, b, n, sol)) continue;
                std::vector<double> q(psi.rows, 0.0);
                bool feasible = true;
                for (std::size_t i = 0; i < k; ++i) {
                    if (sol[i] < -feas_tol) { feasible = false; break; }
                    q[rows_idx[i]] = std::max(sol[i], 0.0);
                }
                if (!feasible) continue;
                const double value = sol[k];

                // column mix: B r = v 1, sum r = 1
                std::fill(a.begin(), a.end(), 0.0);
                std::fill(b.begin(), b.end(), 0.0);
                for (std::size_t i = 0; i < k; ++i) {
                    for (std::size_t j = 0; j < k; ++j)
                        a[i * n + j] = psi.at(rows_idx[i], cols_idx[j]);
                    a[i * n + k] = -1.0;
                }
                for (std::size_t j = 0; j < k; ++j) a[k * n + j] = 1.0;
                b[k] = 1.0;
                if (!solve_linear(a, b, n, sol)) continue;
                std::vector<double> r(psi.cols, 0.0);
                for (std::size_t j = 0; j < k; ++j) {
                    if (sol[j] < -feas_tol) { feasible = false; break; }
                    r[cols_idx[j]] = std::max(sol[j], 0.0);
                }
                if (!feasible) continue;

                // normalize the clamped mixes
                double qs = 0.0, rs = 0.0;
                for (double x : q) qs += x;
                for (double x : r) rs += x;
                for (double& x : q) x /= qs;
                for (double& x : r) x /= rs;

                // optimality: q guarantees <= value against every column,
                // r guarantees >= value against every row
                double violation = 0.0;
                for (std::size_t p = 0; p < psi.cols; ++p) {
                    double payoff = 0.0;
                    for (std::size_t u = 0; u < psi.rows; ++u)
                        payoff += q[u] * psi.at(u, p);
                    violation = std::max(violation, payoff - value);
                }
                for (std::size_t u = 0; u < psi.rows; ++u) {
                    double payoff = 0.0;
                    for (std::size_t p = 0; p < psi.cols; ++p)
                        payoff += r[p] * psi.at(u, p);
                    violation = std::max(violation, value - payoff);
                }

                if (violation <= opt_tol) {
                    MixedSolution out;
                    out.value = value;
                    out.row_mix = std::move(q);
                    out.col_mix = std::move(r);
                    return out;
                }
                if (violation < best.violation) {
                    best.violation = violation;
                    best.value = value;
                    best.row_mix = q;
                    best.col_mix = r;
                }
            } while (next_subset(cols_idx, psi.cols));
        } while (next_subset(rows_idx, psi.rows));
    }

    // Every game has a square-kernel solution; reaching this point means the
    // arithmetic was too ill-conditioned for the exact tolerance. Accept the
    // least-violating candidate if it is plausibly a rounding artifact.
    if (best.violation <= 1e-7 * scale) {
        MixedSolution out;
        out.value = best.value;
        out.row_mix = std::move(best.row_mix);
        out.col_mix = std::move(best.col_mix);
        return out;
    }
    fail(Errc::invalid_argument, "no equalizing support verified; matrix is "
                                 "too ill-conditioned");
}

SaddleReport analyze(const PsiMatrix& psi, double tol) {
    validate_matrix(psi);
    if (tol < 0.0) fail(Errc::invalid_argument, "tol must be nonnegative");

    const MinimaxResult primal = primal_minimax(psi);
    const MinimaxResult dual = dual_maximin(psi);
    const MixedSolution mixed = randomized_value(psi);

    SaddleReport report;
    report.primal = primal.value;
    report.dual = dual.value;
    report.randomized = mixed.value;
    report.gap = primal.value - dual.value;
    report.mix = mixed.row_mix;
    if (psi.entropic_risk)
        report.warning =
            "entropic risk: concavity in the measure is not established, a "
            "positive gap does not certify that randomization helps";

    if (report.gap <= tol) {
        const std::size_t u_star = primal.index;
        const std::size_t p_star = dual.index;
        // row optimality of u* in column p* and column optimality of p* in
        // row u*, checked before reporting a saddle
        const double pivot = psi.at(u_star, p_star);
        for (std::size_t u = 0; u < psi.rows; ++u)
            if (psi.at(u, p_star) < pivot - tol)
                fail(Errc::invalid_argument, "saddle verification failed");
        for (std::size_t p = 0; p < psi.cols; ++p)
            if (psi.at(u_star, p) > pivot + tol)
                fail(Errc::invalid_argument, "saddle verification failed");
        report.saddle = std::make_pair(u_star, p_star);
    }
    return report;
}

} // namespace riskdp
