#include "riskdp/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "riskdp/errors.hpp"

namespace riskdp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_candidate_row(const std::vector<double>& probs,
                            std::size_t n_children, int node_id) {
    if (probs.size() != n_children)
        fail(Errc::invalid_model,
             "node " + std::to_string(node_id) +
                 ": candidate length does not match child count");
    double mass = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p))
            fail(Errc::non_finite_value, "candidate probabilities must be finite");
        if (p < 0.0)
            fail(Errc::negative_probability, "candidate probabilities must be nonnegative");
        mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-9)
        fail(Errc::mass_not_one,
             "node " + std::to_string(node_id) + ": candidate mass " +
                 std::to_string(mass));
}

} // namespace

ScenarioTree::ScenarioTree(int stages, std::vector<TreeNode> nodes,
                           std::map<int, double> leaf_values)
    : stages_(stages), nodes_(std::move(nodes)) {
    if (stages_ < 1) fail(Errc::invalid_model, "tree needs at least one stage");
    if (nodes_.empty()) fail(Errc::invalid_model, "tree has no nodes");

    const int n = static_cast<int>(nodes_.size());
    for (int i = 0; i < n; ++i) {
        if (nodes_[static_cast<std::size_t>(i)].id != i)
            fail(Errc::invalid_model, "node ids must be 0..n-1 in order");
    }

    for (auto& node : nodes_) {
        if (node.stage < 1 || node.stage > stages_ + 1)
            fail(Errc::invalid_model, "node stage out of range");
        if (node.parent == -1) {
            if (node.stage != 1)
                fail(Errc::invalid_model, "parentless node away from stage 1");
            if (root_ != -1) fail(Errc::invalid_model, "multiple roots");
            root_ = node.id;
        } else {
            if (node.parent < 0 || node.parent >= n)
                fail(Errc::invalid_model, "parent id out of range");
            const TreeNode& up = nodes_[static_cast<std::size_t>(node.parent)];
            if (up.stage + 1 != node.stage)
                fail(Errc::invalid_model, "child stage must be parent stage + 1");
            if (std::find(up.children.begin(), up.children.end(), node.id) ==
                up.children.end())
                fail(Errc::invalid_model, "parent/child links inconsistent");
        }
        for (int c : node.children) {
            if (c < 0 || c >= n)
                fail(Errc::invalid_model, "child id out of range");
            if (nodes_[static_cast<std::size_t>(c)].parent != node.id)
                fail(Errc::invalid_model, "parent/child links inconsistent");
        }
        if (node.children.empty()) {
            if (node.stage != stages_ + 1)
                fail(Errc::invalid_model, "leaf away from the final stage");
        } else {
            if (node.candidates.empty())
                fail(Errc::invalid_model,
                     "non-leaf node " + std::to_string(node.id) +
                         " has no candidate child law");
            for (const auto& cand : node.candidates)
                validate_candidate_row(cand, node.children.size(), node.id);
        }
    }
    if (root_ == -1) fail(Errc::invalid_model, "tree has no root");

    leaf_values_.assign(nodes_.size(), kNaN);
    for (const auto& [id, value] : leaf_values) {
        if (id < 0 || id >= n)
            fail(Errc::invalid_model, "leaf value for unknown node");
        if (!is_leaf(id))
            fail(Errc::invalid_model, "leaf value attached to an inner node");
        if (!std::isfinite(value))
            fail(Errc::non_finite_value, "leaf values must be finite");
        leaf_values_[static_cast<std::size_t>(id)] = value;
    }
    for (const auto& node : nodes_)
        if (node.children.empty() &&
            std::isnan(leaf_values_[static_cast<std::size_t>(node.id)]))
            fail(Errc::invalid_model,
                 "leaf " + std::to_string(node.id) + " has no value");
}

double ScenarioTree::leaf_value(int id) const {
    if (!is_leaf(id)) fail(Errc::invalid_argument, "node is not a leaf");
    return leaf_values_[static_cast<std::size_t>(id)];
}

std::vector<int> ScenarioTree::off_support_nodes() const {
    std::vector<int> out;
    std::vector<int> stack{root_};
    std::vector<char> on(nodes_.size(), 0);
    on[static_cast<std::size_t>(root_)] = 1;
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        const TreeNode& node = nodes_[static_cast<std::size_t>(id)];
        for (std::size_t j = 0; j < node.children.size(); ++j) {
            bool reachable = false;
            for (const auto& cand : node.candidates)
                if (cand[j] > 0.0) { reachable = true; break; }
            if (reachable) {
                on[static_cast<std::size_t>(node.children[j])] = 1;
                stack.push_back(node.children[j]);
            }
        }
    }
    for (const auto& node : nodes_)
        if (!on[static_cast<std::size_t>(node.id)]) out.push_back(node.id);
    return out;
}

double conditional_risk_at_node(const ScenarioTree& tree, int node_id,
                                const RiskSpec& risk, std::size_t member,
                                const std::vector<double>& node_values) {
    if (node_id < 0 || node_id >= static_cast<int>(tree.nodes().size()))
        fail(Errc::invalid_argument, "node id out of range");
    const TreeNode& node = tree.node(node_id);
    if (node.children.empty())
        fail(Errc::leaf_node, "conditional risk is defined at non-leaf nodes");
    if (member >= node.candidates.size())
        fail(Errc::member_out_of_range, "candidate index out of range");

    std::vector<double> child_values(node.children.size());
    for (std::size_t j = 0; j < node.children.size(); ++j) {
        double v = node_values[static_cast<std::size_t>(node.children[j])];
        if (std::isnan(v))
            fail(Errc::child_value_missing,
                 "child " + std::to_string(node.children[j]) + " has no value");
        child_values[j] = v;
    }
    return risk_of_weighted(risk, child_values, node.candidates[member]);
}

namespace {

double backward_pass(const ScenarioTree& tree, const StageRiskProfile& profile,
                     bool robust) {
    if (static_cast<int>(profile.size()) != tree.stages())
        fail(Errc::invalid_argument, "profile must list one risk per stage");
    for (const auto& risk : profile) validate(risk);

    std::vector<double> values(tree.nodes().size(), kNaN);
    // nodes are ordered by construction so that children follow parents only
    // stage-wise; process stages from the back
    for (int stage = tree.stages() + 1; stage >= 1; --stage) {
        for (const auto& node : tree.nodes()) {
            if (node.stage != stage) continue;
            if (node.children.empty()) {
                values[static_cast<std::size_t>(node.id)] = tree.leaf_value(node.id);
                continue;
            }
            if (!robust && node.candidates.size() != 1)
                fail(Errc::ambiguous_candidates,
                     "node " + std::to_string(node.id) +
                         " has several candidates; use the robust evaluation");
            const RiskSpec& risk = profile[static_cast<std::size_t>(stage - 1)];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t m = 0; m < node.candidates.size(); ++m)
                best = std::max(best, conditional_risk_at_node(tree, node.id, risk,
                                                               m, values));
            values[static_cast<std::size_t>(node.id)] = best;
        }
    }
    return values[static_cast<std::size_t>(tree.root())];
}

} // namespace

double nested_evaluate(const ScenarioTree& tree, const StageRiskProfile& profile) {
    return backward_pass(tree, profile, false);
}

double robust_nested_evaluate(const ScenarioTree& tree,
                              const StageRiskProfile& profile) {
    return backward_pass(tree, profile, true);
}

ScenarioTree build_product_tree(const std::vector<FiniteDistribution>& marginals,
                                const std::vector<double>& leaf_values_row_major) {
    if (marginals.empty())
        fail(Errc::invalid_argument, "need at least one marginal");
    const int stages = static_cast<int>(marginals.size());

    std::size_t n_paths = 1;
    for (const auto& m : marginals) n_paths *= m.size();
    if (leaf_values_row_major.size() != n_paths)
        fail(Errc::path_table_incomplete,
             "leaf table must cover all " + std::to_string(n_paths) +
                 " atom-index paths");

    std::vector<TreeNode> nodes;
    std::map<int, double> leaf_values;

    TreeNode root;
    root.id = 0;
    root.stage = 1;
    nodes.push_back(root);

    // breadth-first layers; every stage-t node carries the same child law
    std::vector<std::pair<int, std::size_t>> frontier{{0, 0}};  // (id, path offset)
    for (int t = 1; t <= stages; ++t) {
        const auto& law = marginals[static_cast<std::size_t>(t - 1)];
        std::size_t block = 1;
        for (int u = t; u < stages; ++u)
            block *= marginals[static_cast<std::size_t>(u)].size();

        std::vector<std::pair<int, std::size_t>> next;
        for (auto [id, offset] : frontier) {
            nodes[static_cast<std::size_t>(id)].candidates = {law.probs()};
            for (std::size_t k = 0; k < law.size(); ++k) {
                TreeNode child;
                child.id = static_cast<int>(nodes.size());
                child.stage = t + 1;
                child.parent = id;
                nodes[static_cast<std::size_t>(id)].children.push_back(child.id);
                std::size_t child_offset = offset + k * block;
                if (t == stages)
                    leaf_values[child.id] = leaf_values_row_major[child_offset];
                else
                    next.emplace_back(child.id, child_offset);
                nodes.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return ScenarioTree(stages, std::move(nodes), std::move(leaf_values));
}

} // namespace riskdp
