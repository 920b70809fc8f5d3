#pragma once

#include <stdexcept>
#include <string>

namespace riskdp {

/// Machine-readable failure codes; names are stable and appear verbatim in
/// CLI error output.
enum class Errc {
    length_mismatch,
    negative_probability,
    mass_not_one,
    non_finite_value,
    empty_sample,
    alpha_out_of_range,
    tau_out_of_range,
    empty_ambiguity_set,
    leaf_node,
    member_out_of_range,
    child_value_missing,
    ambiguous_candidates,
    path_table_incomplete,
    kappa_not_positive,
    delta_out_of_range,
    eps_out_of_range,
    nonpositive_log_argument,
    beta_l_regime,
    growth_violated,
    infinite_horizon_model,
    finite_horizon_model,
    max_iter_exceeded,
    unresolved_ambiguity,
    enumeration_too_large,
    matrix_too_large,
    invalid_model,
    invalid_argument,
    parse_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace riskdp
