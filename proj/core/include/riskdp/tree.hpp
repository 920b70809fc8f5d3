#pragma once

#include <map>
#include <vector>

#include "riskdp/distribution.hpp"
#include "riskdp/risk.hpp"

namespace riskdp {

/// One risk functional per stage 1..T.
using StageRiskProfile = std::vector<RiskSpec>;

struct TreeNode {
    int id = -1;
    int stage = 1;
    int parent = -1;  // -1 for the root
    std::vector<int> children;
    /// Candidate child laws, one probability row per candidate, aligned with
    /// children. Non-leaf nodes carry at least one candidate; a list with
    /// several entries models per-node ambiguity.
    std::vector<std::vector<double>> candidates;
};

/// Staged scenario tree with per-node child distributions and leaf values.
/// Node ids are 0..n-1; the root sits at stage 1, every leaf at stage T+1.
class ScenarioTree {
public:
    ScenarioTree(int stages, std::vector<TreeNode> nodes,
                 std::map<int, double> leaf_values);

    int stages() const { return stages_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    int root() const { return root_; }

    bool is_leaf(int id) const { return node(id).children.empty(); }
    double leaf_value(int id) const;

    /// Nodes reachable only through zero-probability branches. Their values
    /// are still computed, deterministically, but callers may want to flag
    /// them in reports.
    std::vector<int> off_support_nodes() const;

private:
    int stages_ = 0;
    int root_ = -1;
    std::vector<TreeNode> nodes_;
    std::vector<double> leaf_values_;  // NaN on non-leaf ids
};

/// Risk of the children's values at one node under candidate `member`.
/// `node_values` is indexed by node id; entries for all children of the node
/// must be present (non-NaN).
double conditional_risk_at_node(const ScenarioTree& tree, int node_id,
                                const RiskSpec& risk, std::size_t member,
                                const std::vector<double>& node_values);

/// Backward nested recursion over a tree whose candidate lists are all
/// singletons. Returns the root value.
double nested_evaluate(const ScenarioTree& tree, const StageRiskProfile& profile);

/// Backward recursion taking, at every node, the worst candidate child law.
/// Coincides with nested_evaluate when every candidate list is a singleton.
double robust_nested_evaluate(const ScenarioTree& tree,
                              const StageRiskProfile& profile);

/// Tree for a product measure P_1 x ... x P_T: every stage-t node carries the
/// same child law P_t. Leaf values are supplied in row-major order over atom
/// index paths (i_1, ..., i_T).
ScenarioTree build_product_tree(const std::vector<FiniteDistribution>& marginals,
                                const std::vector<double>& leaf_values_row_major);

} // namespace riskdp
