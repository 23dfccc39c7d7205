#ifndef CHILLAX_HIERARCHY_HPP
#define CHILLAX_HIERARCHY_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace chillax {

/// Dense index of a node inside one Hierarchy. Index 0..size()-1 in
/// first-appearance order of the edge list; this order defines the component
/// positions of every target/mask/score vector.
using NodeId = std::int32_t;

/// Immutable rooted DAG of class nodes. Edges point child -> parent
/// (child is-a parent). Built once by load_hierarchy, then shared freely
/// across threads.
class Hierarchy {
public:
    std::size_t size() const { return names_.size(); }
    NodeId root() const { return root_; }

    const std::string& name(NodeId n) const { return names_[check(n)]; }
    NodeId id(std::string_view name) const;         // throws UnknownNode
    bool contains(std::string_view name) const;

    /// Shortest upward path length to the root.
    int depth(NodeId n) const { return depths_[check(n)]; }
    int max_depth() const { return max_depth_; }

    const std::vector<NodeId>& parents(NodeId n) const { return parents_[check(n)]; }
    const std::vector<NodeId>& children(NodeId n) const { return children_[check(n)]; }

    bool is_leaf(NodeId n) const { return children_[check(n)].empty(); }
    /// Leaves in node_order; the precise label set.
    const std::vector<NodeId>& leaves() const { return leaves_; }
    /// Every node in an evaluation order where parents precede children;
    /// ties resolved by node index.
    const std::vector<NodeId>& topological_order() const { return topo_; }

    /// Strict transitive ancestors of n (n excluded); empty for the root.
    std::vector<NodeId> ancestors(NodeId n) const;
    bool is_ancestor(NodeId anc, NodeId n) const;   // strict

    /// All leaves reachable downward from n; {n} when n is itself a leaf.
    std::vector<NodeId> leaf_descendants(NodeId n) const;

    /// Depth of the deepest common ancestor of a and b, where a node counts
    /// as its own ancestor. 0 when only the root is shared.
    int lca_depth(NodeId a, NodeId b) const;

    /// Stable fingerprint of the node name sequence; stored in checkpoints
    /// so a model cannot silently be applied to a different hierarchy.
    std::uint64_t fingerprint() const;

    friend Hierarchy load_hierarchy(std::string_view text);

private:
    NodeId check(NodeId n) const;

    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<int> depths_;
    std::vector<NodeId> leaves_;
    std::vector<NodeId> topo_;
    NodeId root_ = -1;
    int max_depth_ = 0;
};

/// Parse an edge-list document: one "child<TAB>parent" pair per line,
/// UTF-8, lines starting with '#' ignored. Node order is first appearance.
/// Throws CycleDetected, MultipleRoots, NoRoot, DuplicateEdge, EmptyDocument,
/// FormatError.
Hierarchy load_hierarchy(std::string_view text);

/// Same, reading the document from a file. Throws IoError on read failure.
Hierarchy load_hierarchy_file(const std::string& path);

}  // namespace chillax

#endif
