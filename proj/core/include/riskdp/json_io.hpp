#pragma once

#include <string>

#include "riskdp/distribution.hpp"
#include "riskdp/experiments.hpp"
#include "riskdp/matrix_game.hpp"
#include "riskdp/mdp.hpp"
#include "riskdp/risk.hpp"
#include "riskdp/soc.hpp"
#include "riskdp/tree.hpp"

// JSON wire formats. Parsing throws Error(Errc::parse_error) on malformed
// input and the usual domain errors on well-formed input that fails
// validation. Serialization orders keys alphabetically and prints doubles
// with shortest round-trip precision, so equal inputs give byte-equal output.

namespace riskdp::io {

FiniteDistribution distribution_from_json(const std::string& text);
std::string to_json(const FiniteDistribution& dist, int indent = -1);

SampleBatch sample_batch_from_json(const std::string& text);
std::string to_json(const SampleBatch& batch, int indent = -1);

RiskSpec risk_spec_from_json(const std::string& text);
std::string to_json(const RiskSpec& risk, int indent = -1);

/// "expectation", "var:0.3", "avar:0.5", "entropic:1.0"; used by CLI flags.
RiskSpec risk_spec_from_flag(const std::string& flag);

/// Comma-separated flag list; a single entry is replicated to all stages.
StageRiskProfile profile_from_flag(const std::string& flag, int stages);

ScenarioTree tree_from_json(const std::string& text);
std::string to_json(const ScenarioTree& tree, int indent = -1);

SocModel soc_from_json(const std::string& text);
MdpModel mdp_from_json(const std::string& text);

enum class ModelKind { soc, mdp };

/// SOC models carry "noise"/"phi", MDPs carry "kernels"/"actions".
ModelKind detect_model_kind(const std::string& text);

PsiMatrix matrix_from_json(const std::string& text);

std::string to_json(const CoverageReport& report, int indent = -1);
std::string to_json(const SaddleReport& report, int indent = -1);
std::string to_json(const AxiomReport& report, int indent = -1);
std::string to_json(const FiniteSolution& solution, int indent = -1);
std::string to_json(const ValueIteration& vi, int indent = -1);
std::string to_json(const StaticRobustResult& result, int indent = -1);

} // namespace riskdp::io
