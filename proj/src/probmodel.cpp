#include "chillax/probmodel.hpp"

#include <algorithm>
#include <numeric>

#include "chillax/errors.hpp"

namespace chillax {

UnconditionalScores unconditional_probs(const Hierarchy& h, const ConditionalScores& cond) {
    if (static_cast<std::size_t>(cond.size()) != h.size())
        throw LengthMismatch("conditional score length does not match node count");
    UnconditionalScores u(cond.size());
    for (NodeId n : h.topological_order()) {
        if (n == h.root()) {
            u[n] = cond[n];
            continue;
        }
        double none_present = 1.0;
        for (NodeId p : h.parents(n)) none_present *= 1.0 - u[p];
        u[n] = cond[n] * (1.0 - none_present);
    }
    return u;
}

NodeId predict_leaf(const Hierarchy& h, const ConditionalScores& cond) {
    return top_k_leaves(h, cond, 1).front();
}

std::vector<NodeId> top_k_leaves(const Hierarchy& h, const ConditionalScores& cond, int k) {
    UnconditionalScores u = unconditional_probs(h, cond);
    Eigen::VectorXd leaf_scores(static_cast<Eigen::Index>(h.leaves().size()));
    for (std::size_t i = 0; i < h.leaves().size(); ++i)
        leaf_scores[static_cast<Eigen::Index>(i)] = u[h.leaves()[i]];
    return rank_leaves(h, leaf_scores, k);
}

std::vector<NodeId> rank_leaves(const Hierarchy& h, const Eigen::VectorXd& leaf_scores, int k) {
    const auto& leaves = h.leaves();
    if (static_cast<std::size_t>(leaf_scores.size()) != leaves.size())
        throw LengthMismatch("leaf score length does not match leaf count");
    if (k < 1 || static_cast<std::size_t>(k) > leaves.size())
        throw KTooLarge("k = " + std::to_string(k) + " outside 1..|leaves|");
    std::vector<std::size_t> order(leaves.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return leaf_scores[static_cast<Eigen::Index>(a)] > leaf_scores[static_cast<Eigen::Index>(b)];
    });
    std::vector<NodeId> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out.push_back(leaves[order[static_cast<std::size_t>(i)]]);
    return out;
}

}  // namespace chillax
