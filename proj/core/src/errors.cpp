#include "riskdp/errors.hpp"

namespace riskdp {

const char* errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::negative_probability: return "NegativeProbability";
    case Errc::mass_not_one: return "MassNotOne";
    case Errc::non_finite_value: return "NonFiniteValue";
    case Errc::empty_sample: return "EmptySample";
    case Errc::alpha_out_of_range: return "AlphaOutOfRange";
    case Errc::tau_out_of_range: return "TauOutOfRange";
    case Errc::empty_ambiguity_set: return "EmptyAmbiguitySet";
    case Errc::leaf_node: return "LeafNode";
    case Errc::member_out_of_range: return "MemberOutOfRange";
    case Errc::child_value_missing: return "ChildValueMissing";
    case Errc::ambiguous_candidates: return "AmbiguousCandidates";
    case Errc::path_table_incomplete: return "PathTableIncomplete";
    case Errc::kappa_not_positive: return "KappaNotPositive";
    case Errc::delta_out_of_range: return "DeltaOutOfRange";
    case Errc::eps_out_of_range: return "EpsOutOfRange";
    case Errc::nonpositive_log_argument: return "NonpositiveLogArgument";
    case Errc::beta_l_regime: return "BetaLRegime";
    case Errc::growth_violated: return "GrowthViolated";
    case Errc::infinite_horizon_model: return "InfiniteHorizonModel";
    case Errc::finite_horizon_model: return "FiniteHorizonModel";
    case Errc::max_iter_exceeded: return "MaxIterExceeded";
    case Errc::unresolved_ambiguity: return "UnresolvedAmbiguity";
    case Errc::enumeration_too_large: return "EnumerationTooLarge";
    case Errc::matrix_too_large: return "MatrixTooLarge";
    case Errc::invalid_model: return "InvalidModel";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

} // namespace riskdp
