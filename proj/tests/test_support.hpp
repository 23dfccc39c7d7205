#ifndef CHILLAX_TEST_SUPPORT_HPP
#define CHILLAX_TEST_SUPPORT_HPP

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "chillax/hierarchy.hpp"
#include "chillax/rng.hpp"

namespace chillax::test {

// Two fixtures used throughout the suites: T1 is a 6-node tree, D1 adds a
// node c with parents A and B.
inline const char* kT1 = "A\tR\nB\tR\na1\tA\na2\tA\nb1\tB";
inline const char* kD1 = "A\tR\nB\tR\na1\tA\na2\tA\nb1\tB\nc\tA\nc\tB";

inline Hierarchy t1() { return load_hierarchy(kT1); }
inline Hierarchy d1() { return load_hierarchy(kD1); }

// Build a vector indexed by node order from name -> value pairs; unnamed
// components are zero.
inline Eigen::VectorXd by_name(const Hierarchy& h,
                               const std::map<std::string, double>& values) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.size()));
    for (const auto& [name, value] : values) v[h.id(name)] = value;
    return v;
}

inline std::set<std::string> names_of(const Hierarchy& h, const std::vector<NodeId>& ids) {
    std::set<std::string> out;
    for (NodeId n : ids) out.insert(h.name(n));
    return out;
}

// Random single-root DAG: node i > 0 picks 1..3 distinct parents among the
// earlier nodes, so the graph is acyclic with node 0 as the only root.
inline Hierarchy random_dag(std::mt19937_64& rng, int n_nodes) {
    std::ostringstream edges;
    for (int i = 1; i < n_nodes; ++i) {
        int max_parents = std::min(i, 3);
        int n_parents = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(max_parents)));
        std::set<int> parents;
        while (static_cast<int>(parents.size()) < n_parents)
            parents.insert(static_cast<int>(uniform_index(rng, static_cast<std::size_t>(i))));
        for (int p : parents) edges << "n" << i << "\tn" << p << "\n";
    }
    if (n_nodes == 1) edges << "n1\tn0\n";  // a lone root needs at least one edge
    return load_hierarchy(edges.str());
}

// Random tree: node i > 0 picks exactly one parent among the earlier nodes.
// Trees are what the root-ranking invariance needs; with multiple parents the
// root factor enters each noisy-OR nonlinearly and can reorder leaves.
inline Hierarchy random_tree(std::mt19937_64& rng, int n_nodes) {
    std::ostringstream edges;
    for (int i = 1; i < n_nodes; ++i)
        edges << "n" << i << "\tn"
              << uniform_index(rng, static_cast<std::size_t>(i)) << "\n";
    if (n_nodes == 1) edges << "n1\tn0\n";
    return load_hierarchy(edges.str());
}

// Brute-force ancestor closure: iterate parent-map substitution to a fixed
// point, independent of Hierarchy::ancestors.
inline std::set<NodeId> ancestors_oracle(const Hierarchy& h, NodeId n) {
    std::set<NodeId> closure;
    bool changed = true;
    std::set<NodeId> frontier{n};
    while (changed) {
        changed = false;
        std::set<NodeId> next;
        for (NodeId cur : frontier)
            for (NodeId p : h.parents(cur))
                if (closure.insert(p).second) {
                    next.insert(p);
                    changed = true;
                }
        frontier = std::move(next);
    }
    return closure;
}

// Unmemoized recursive evaluation of the noisy-OR propagation.
inline double unconditional_oracle(const Hierarchy& h, const Eigen::VectorXd& cond, NodeId n) {
    if (n == h.root()) return cond[n];
    double none = 1.0;
    for (NodeId p : h.parents(n)) none *= 1.0 - unconditional_oracle(h, cond, p);
    return cond[n] * (1.0 - none);
}

inline Eigen::VectorXd random_cond(const Hierarchy& h, std::mt19937_64& rng) {
    Eigen::VectorXd cond(static_cast<Eigen::Index>(h.size()));
    for (Eigen::Index i = 0; i < cond.size(); ++i) cond[i] = uniform01(rng);
    return cond;
}

}  // namespace chillax::test

#endif
