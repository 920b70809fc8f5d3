#include "riskdp/json_io.hpp"

#include <cmath>
#include <map>

#include <json.hpp>

#include "riskdp/errors.hpp"

namespace riskdp::io {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(Errc::parse_error, "input is not valid JSON");
    return j;
}

const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        fail(Errc::parse_error, std::string("missing field \"") + key + "\"");
    return *it;
}

std::vector<double> doubles(const json& j, const char* what) {
    if (!j.is_array())
        fail(Errc::parse_error, std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number())
            fail(Errc::parse_error, std::string(what) + " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<int> ints(const json& j, const char* what) {
    if (!j.is_array())
        fail(Errc::parse_error, std::string(what) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer())
            fail(Errc::parse_error, std::string(what) + " must hold integers");
        out.push_back(v.get<int>());
    }
    return out;
}

json dump_ce(const AxiomCounterexample& ce) {
    json j;
    j["probs"] = ce.probs;
    j["z"] = ce.z;
    if (!ce.z_prime.empty()) j["z_prime"] = ce.z_prime;
    j["scalar"] = ce.scalar;
    j["lhs"] = ce.lhs;
    j["rhs"] = ce.rhs;
    j["trial"] = ce.trial;
    return j;
}

json dump_axiom(const AxiomResult& r) {
    json j;
    j["pass"] = r.pass;
    if (r.counterexample) j["counterexample"] = dump_ce(*r.counterexample);
    return j;
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

} // namespace

FiniteDistribution distribution_from_json(const std::string& text) {
    json j = parse(text);
    return make_distribution(doubles(field(j, "atoms"), "atoms"),
                             doubles(field(j, "probs"), "probs"));
}

std::string to_json(const FiniteDistribution& dist, int indent) {
    json j;
    j["atoms"] = dist.atoms();
    j["probs"] = dist.probs();
    return dump(j, indent);
}

SampleBatch sample_batch_from_json(const std::string& text) {
    json j = parse(text);
    SampleBatch batch;
    batch.values = doubles(field(j, "values"), "values");
    if (j.contains("seed")) batch.seed = field(j, "seed").get<std::uint64_t>();
    validate(batch);
    return batch;
}

std::string to_json(const SampleBatch& batch, int indent) {
    json j;
    j["values"] = batch.values;
    j["seed"] = batch.seed;
    return dump(j, indent);
}

namespace {

RiskSpec risk_from_json_obj(const json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    RiskSpec risk;
    if (kind == "expectation") {
        risk = RiskSpec::expectation();
    } else if (kind == "var") {
        risk = RiskSpec::value_at_risk(field(j, "alpha").get<double>());
    } else if (kind == "avar") {
        risk = RiskSpec::average_value_at_risk(field(j, "alpha").get<double>());
    } else if (kind == "entropic") {
        risk = RiskSpec::entropic(field(j, "tau").get<double>());
    } else {
        fail(Errc::parse_error, "unknown risk kind \"" + kind + "\"");
    }
    validate(risk);
    return risk;
}

} // namespace

RiskSpec risk_spec_from_json(const std::string& text) {
    return risk_from_json_obj(parse(text));
}

std::string to_json(const RiskSpec& risk, int indent) {
    json j;
    j["kind"] = risk_kind_name(risk.kind);
    if (risk.kind == RiskKind::var || risk.kind == RiskKind::avar)
        j["alpha"] = risk.alpha;
    if (risk.kind == RiskKind::entropic) j["tau"] = risk.tau;
    return dump(j, indent);
}

RiskSpec risk_spec_from_flag(const std::string& flag) {
    const auto colon = flag.find(':');
    const std::string kind = flag.substr(0, colon);
    double param = 0.0;
    if (colon != std::string::npos) {
        try {
            param = std::stod(flag.substr(colon + 1));
        } catch (const std::exception&) {
            fail(Errc::parse_error, "bad risk parameter in \"" + flag + "\"");
        }
    }
    RiskSpec risk;
    if (kind == "expectation") {
        risk = RiskSpec::expectation();
    } else if (kind == "var") {
        risk = RiskSpec::value_at_risk(param);
    } else if (kind == "avar") {
        risk = RiskSpec::average_value_at_risk(param);
    } else if (kind == "entropic") {
        risk = RiskSpec::entropic(param);
    } else {
        fail(Errc::parse_error, "unknown risk \"" + flag + "\"");
    }
    validate(risk);
    return risk;
}

StageRiskProfile profile_from_flag(const std::string& flag, int stages) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto comma = flag.find(',', start);
        parts.push_back(flag.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    StageRiskProfile profile;
    if (parts.size() == 1) {
        profile.assign(static_cast<std::size_t>(stages),
                       risk_spec_from_flag(parts[0]));
    } else {
        if (static_cast<int>(parts.size()) != stages)
            fail(Errc::invalid_argument,
                 "profile lists " + std::to_string(parts.size()) +
                     " risks for " + std::to_string(stages) + " stages");
        for (const auto& p : parts) profile.push_back(risk_spec_from_flag(p));
    }
    return profile;
}

ScenarioTree tree_from_json(const std::string& text) {
    json j = parse(text);
    const int stages = field(j, "stages").get<int>();
    std::vector<TreeNode> nodes;
    for (const auto& nj : field(j, "nodes")) {
        TreeNode node;
        node.id = field(nj, "id").get<int>();
        node.stage = field(nj, "stage").get<int>();
        if (nj.contains("parent") && !nj["parent"].is_null())
            node.parent = nj["parent"].get<int>();
        if (nj.contains("children")) node.children = ints(nj["children"], "children");
        if (nj.contains("candidates"))
            for (const auto& cj : nj["candidates"])
                node.candidates.push_back(doubles(field(cj, "probs"), "probs"));
        nodes.push_back(std::move(node));
    }
    std::map<int, double> leaf_values;
    for (const auto& [key, value] : field(j, "leaf_values").items()) {
        try {
            leaf_values[std::stoi(key)] = value.get<double>();
        } catch (const std::exception&) {
            fail(Errc::parse_error, "leaf_values keys must be node ids");
        }
    }
    // sort by id so construction sees 0..n-1
    std::sort(nodes.begin(), nodes.end(),
              [](const TreeNode& a, const TreeNode& b) { return a.id < b.id; });
    return ScenarioTree(stages, std::move(nodes), std::move(leaf_values));
}

std::string to_json(const ScenarioTree& tree, int indent) {
    json j;
    j["stages"] = tree.stages();
    json nodes = json::array();
    json leaves;
    for (const auto& node : tree.nodes()) {
        json nj;
        nj["id"] = node.id;
        nj["stage"] = node.stage;
        if (node.parent < 0)
            nj["parent"] = nullptr;
        else
            nj["parent"] = node.parent;
        nj["children"] = node.children;
        json cands = json::array();
        for (const auto& cand : node.candidates) cands.push_back({{"probs", cand}});
        nj["candidates"] = cands;
        nodes.push_back(std::move(nj));
        if (node.children.empty())
            leaves[std::to_string(node.id)] = tree.leaf_value(node.id);
    }
    j["nodes"] = nodes;
    j["leaf_values"] = leaves;
    return dump(j, indent);
}

namespace {

NoiseStage noise_stage_from_json(const json& j) {
    NoiseStage stage;
    bool first = true;
    for (const auto& cj : field(j, "candidates")) {
        std::vector<double> atoms = doubles(field(cj, "atoms"), "atoms");
        std::vector<double> probs = doubles(field(cj, "probs"), "probs");
        if (first) {
            stage.atoms = atoms;
            first = false;
        } else if (atoms != stage.atoms) {
            fail(Errc::invalid_model,
                 "noise candidates must share one atom grid");
        }
        stage.candidates.push_back(std::move(probs));
    }
    return stage;
}

} // namespace

SocModel soc_from_json(const std::string& text) {
    json j = parse(text);
    SocModel model;
    if (j.contains("horizon")) {
        model.horizon = field(j, "horizon").get<int>();
    } else if (j.contains("discount")) {
        model.horizon = 0;
        model.discount = field(j, "discount").get<double>();
    } else {
        fail(Errc::parse_error, "model needs \"horizon\" or \"discount\"");
    }
    model.num_states = field(j, "states").get<int>();
    model.num_controls = field(j, "controls").get<int>();
    for (const auto& nj : field(j, "noise"))
        model.noise.push_back(noise_stage_from_json(nj));

    const int periods = model.infinite() ? 1 : model.horizon;
    const json& phi = field(j, "phi");
    const json& cost = field(j, "cost");
    // per-stage tables for finite horizon, a bare [x][u][k] table otherwise
    auto load_phi_stage = [&](const json& stage_j) {
        std::vector<std::vector<std::vector<int>>> stage;
        for (const auto& xj : stage_j) {
            std::vector<std::vector<int>> per_x;
            for (const auto& uj : xj) per_x.push_back(ints(uj, "phi"));
            stage.push_back(std::move(per_x));
        }
        return stage;
    };
    auto load_cost_stage = [&](const json& stage_j) {
        std::vector<std::vector<std::vector<double>>> stage;
        for (const auto& xj : stage_j) {
            std::vector<std::vector<double>> per_x;
            for (const auto& uj : xj) per_x.push_back(doubles(uj, "cost"));
            stage.push_back(std::move(per_x));
        }
        return stage;
    };
    if (model.infinite()) {
        model.phi.push_back(load_phi_stage(phi));
        model.cost.push_back(load_cost_stage(cost));
    } else {
        if (static_cast<int>(phi.size()) != periods ||
            static_cast<int>(cost.size()) != periods)
            fail(Errc::parse_error, "phi and cost must list one table per stage");
        for (const auto& sj : phi) model.phi.push_back(load_phi_stage(sj));
        for (const auto& sj : cost) model.cost.push_back(load_cost_stage(sj));
    }
    if (j.contains("terminal"))
        model.terminal = doubles(j["terminal"], "terminal");
    validate(model);
    return model;
}

MdpModel mdp_from_json(const std::string& text) {
    json j = parse(text);
    MdpModel model;
    if (j.contains("stages")) {
        model.stages = field(j, "stages").get<int>();
    } else if (j.contains("discount")) {
        model.stages = 0;
        model.discount = field(j, "discount").get<double>();
    } else {
        fail(Errc::parse_error, "model needs \"stages\" or \"discount\"");
    }
    model.num_states = field(j, "states").get<int>();
    const json& actions = field(j, "actions");
    for (const auto& aj : actions) {
        if (aj.is_array()) {
            model.actions.push_back(ints(aj, "actions"));
        } else if (aj.is_number_integer()) {
            // a count; label actions 0..n-1
            std::vector<int> labels(aj.get<std::size_t>());
            for (std::size_t i = 0; i < labels.size(); ++i)
                labels[i] = static_cast<int>(i);
            model.actions.push_back(std::move(labels));
        } else {
            fail(Errc::parse_error, "actions must be arrays or counts");
        }
    }

    auto load_kernel_stage = [&](const json& stage_j) {
        std::vector<std::vector<KernelEntry>> stage;
        for (const auto& sj : stage_j) {
            std::vector<KernelEntry> per_s;
            for (const auto& aj : sj) {
                KernelEntry entry;
                for (const auto& cj : field(aj, "candidates"))
                    entry.candidates.push_back(doubles(cj, "kernel candidate"));
                per_s.push_back(std::move(entry));
            }
            stage.push_back(std::move(per_s));
        }
        return stage;
    };
    auto load_cost_stage = [&](const json& stage_j) {
        std::vector<std::vector<std::vector<double>>> stage;
        for (const auto& sj : stage_j) {
            std::vector<std::vector<double>> per_s;
            for (const auto& aj : sj) per_s.push_back(doubles(aj, "cost"));
            stage.push_back(std::move(per_s));
        }
        return stage;
    };
    const json& kernels = field(j, "kernels");
    const json& cost = field(j, "cost");
    if (model.infinite()) {
        model.kernels.push_back(load_kernel_stage(kernels));
        model.cost.push_back(load_cost_stage(cost));
    } else {
        for (const auto& sj : kernels) model.kernels.push_back(load_kernel_stage(sj));
        for (const auto& sj : cost) model.cost.push_back(load_cost_stage(sj));
    }
    if (j.contains("terminal")) model.terminal = doubles(j["terminal"], "terminal");
    if (j.contains("initial_state"))
        model.initial_state = j["initial_state"].get<int>();
    validate(model);
    return model;
}

ModelKind detect_model_kind(const std::string& text) {
    json j = parse(text);
    if (j.contains("noise") || j.contains("phi")) return ModelKind::soc;
    if (j.contains("kernels") || j.contains("actions")) return ModelKind::mdp;
    fail(Errc::parse_error, "model is neither SOC (noise/phi) nor MDP (kernels)");
}

PsiMatrix matrix_from_json(const std::string& text) {
    json j = parse(text);
    const json& rows = j.is_array() ? j : field(j, "matrix");
    std::vector<double> entries;
    std::size_t n_rows = 0, n_cols = 0;
    for (const auto& row : rows) {
        std::vector<double> r = doubles(row, "matrix row");
        if (n_rows == 0) n_cols = r.size();
        if (r.size() != n_cols)
            fail(Errc::parse_error, "matrix rows must have equal length");
        entries.insert(entries.end(), r.begin(), r.end());
        ++n_rows;
    }
    return make_psi(n_rows, n_cols, std::move(entries));
}

std::string to_json(const CoverageReport& report, int indent) {
    json j;
    j["n_used"] = report.n_used;
    j["reps"] = report.reps;
    j["coverage"] = report.coverage;
    j["max_deviation"] = report.max_deviation;
    j["seed"] = report.seed;
    if (!std::isnan(report.subset_coverage))
        j["subset_coverage"] = report.subset_coverage;
    return dump(j, indent);
}

std::string to_json(const SaddleReport& report, int indent) {
    json j;
    j["primal"] = report.primal;
    j["dual"] = report.dual;
    j["randomized"] = report.randomized;
    j["gap"] = report.gap;
    if (report.saddle)
        j["saddle"] = {report.saddle->first, report.saddle->second};
    else
        j["saddle"] = nullptr;
    j["mix"] = report.mix;
    if (!report.warning.empty()) j["warning"] = report.warning;
    return dump(j, indent);
}

std::string to_json(const AxiomReport& report, int indent) {
    json j;
    j["risk"] = json::parse(to_json(report.risk));
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["axioms"] = {{"A1_monotonicity", dump_axiom(report.monotonicity)},
                   {"A2_convexity", dump_axiom(report.convexity)},
                   {"A3_translation", dump_axiom(report.translation)},
                   {"A4_homogeneity", dump_axiom(report.homogeneity)}};
    return dump(j, indent);
}

std::string to_json(const FiniteSolution& solution, int indent) {
    json j;
    j["V"] = solution.values;
    j["policy"] = solution.policy;
    return dump(j, indent);
}

std::string to_json(const ValueIteration& vi, int indent) {
    json j;
    j["V"] = vi.values;
    j["policy"] = vi.policy;
    j["iterations"] = vi.iterations;
    j["residuals"] = vi.residuals;
    j["converged"] = vi.converged;
    return dump(j, indent);
}

std::string to_json(const StaticRobustResult& result, int indent) {
    json j;
    j["static_value"] = result.static_value;
    j["dynamic_value"] = result.dynamic_value;
    j["gap"] = result.gap;
    j["kernel_choice"] = result.kernel_choice;
    return dump(j, indent);
}

} // namespace riskdp::io
