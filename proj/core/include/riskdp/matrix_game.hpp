#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskdp/mdp.hpp"
#include "riskdp/risk.hpp"
#include "riskdp/soc.hpp"

namespace riskdp {

/// Stagewise payoff matrix psi[u][P]: rows are controls, columns are
/// candidate measures, entries are the inner risk evaluations.
struct PsiMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;  // row-major
    /// Set when the entries came from an entropic risk, whose concavity in P
    /// is not established; analyze() then reports the gap without reading a
    /// positive gap as "no non-randomized optimum".
    bool entropic_risk = false;

    double at(std::size_t u, std::size_t p) const { return entries[u * cols + p]; }
    double& at(std::size_t u, std::size_t p) { return entries[u * cols + p]; }
};

PsiMatrix make_psi(std::size_t rows, std::size_t cols, std::vector<double> entries);

/// psi[u][P] = R^P[ c_t(x,u,xi) + V_next(Phi_t(x,u,xi)) ] for one state of a
/// finite-horizon model (stage t in 1..T), or the discounted bracket when the
/// model is infinite-horizon (pass stage 0).
PsiMatrix build_psi_soc(const SocModel& model, int stage, int state,
                        const std::vector<double>& next_values,
                        const RiskSpec& risk);

/// psi[a][P] = R^P[ c_t(s,a,s') + V_next(s') ]; requires every action of the
/// state to carry the same number of candidate kernels.
PsiMatrix build_psi_mdp(const MdpModel& model, int stage, int state,
                        const std::vector<double>& next_values,
                        const RiskSpec& risk);

struct MinimaxResult {
    double value = 0.0;
    std::size_t index = 0;  // smallest-index optimizer
};

/// min over rows of the row maximum.
MinimaxResult primal_minimax(const PsiMatrix& psi);

/// max over columns of the column minimum.
MinimaxResult dual_maximin(const PsiMatrix& psi);

struct MixedSolution {
    double value = 0.0;
    std::vector<double> row_mix;
    std::vector<double> col_mix;
};

/// Exact value of the zero-sum matrix game (rows minimize) with an optimal
/// mixed row strategy. Solved by support enumeration with square-subgame
/// equalization; matrices are capped at 16x16.
MixedSolution randomized_value(const PsiMatrix& psi);

struct SaddleReport {
    double primal = 0.0;
    double dual = 0.0;
    double randomized = 0.0;
    double gap = 0.0;  // primal - dual
    /// Present iff gap <= tol; the pair is re-verified against the row and
    /// column optimality conditions before being returned.
    std::optional<std::pair<std::size_t, std::size_t>> saddle;
    std::vector<double> mix;
    std::string warning;
};

SaddleReport analyze(const PsiMatrix& psi, double tol = 1e-9);

} // namespace riskdp
