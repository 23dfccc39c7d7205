#ifndef CHILLAX_PROBMODEL_HPP
#define CHILLAX_PROBMODEL_HPP

#include <Eigen/Core>
#include <vector>

#include "chillax/hierarchy.hpp"

namespace chillax {

/// Per-node conditional probabilities P(s present | input, some parent
/// present), indexed by node order. All components must lie in [0,1].
using ConditionalScores = Eigen::VectorXd;

/// Unconditional presence probabilities P(s present | input).
using UnconditionalScores = Eigen::VectorXd;

/// Noisy-OR propagation down the DAG: the root keeps its conditional value
/// (parent presence is certain there); every other node multiplies its
/// conditional by 1 - prod_parents (1 - parent unconditional), evaluated in
/// topological order.
UnconditionalScores unconditional_probs(const Hierarchy& h, const ConditionalScores& cond);

/// Leaf with maximal unconditional probability; ties go to the smallest node
/// index. Only leaves are ever predicted.
NodeId predict_leaf(const Hierarchy& h, const ConditionalScores& cond);

/// k leaves in decreasing unconditional probability, same tie rule.
std::vector<NodeId> top_k_leaves(const Hierarchy& h, const ConditionalScores& cond, int k);

/// Leaves ranked by a precomputed score vector (used by the softmax heads,
/// whose scores are already a leaf distribution spread over leaf positions).
std::vector<NodeId> rank_leaves(const Hierarchy& h, const Eigen::VectorXd& leaf_scores, int k);

}  // namespace chillax

#endif
