#include "chillax/hierarchy.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

#include "chillax/errors.hpp"
#include "chillax/rng.hpp"

namespace chillax {

NodeId Hierarchy::check(NodeId n) const {
    if (n < 0 || static_cast<std::size_t>(n) >= names_.size())
        throw UnknownNode("unknown node id " + std::to_string(n));
    return n;
}

NodeId Hierarchy::id(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw UnknownNode("unknown node '" + std::string(name) + "'");
    return it->second;
}

bool Hierarchy::contains(std::string_view name) const {
    return index_.count(std::string(name)) > 0;
}

std::vector<NodeId> Hierarchy::ancestors(NodeId n) const {
    check(n);
    std::vector<bool> seen(size(), false);
    std::vector<NodeId> stack{n}, out;
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        for (NodeId p : parents_[cur]) {
            if (!seen[p]) {
                seen[p] = true;
                out.push_back(p);
                stack.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Hierarchy::is_ancestor(NodeId anc, NodeId n) const {
    check(anc);
    check(n);
    if (anc == n) return false;
    std::vector<bool> seen(size(), false);
    std::vector<NodeId> stack{n};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        for (NodeId p : parents_[cur]) {
            if (p == anc) return true;
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
        }
    }
    return false;
}

std::vector<NodeId> Hierarchy::leaf_descendants(NodeId n) const {
    check(n);
    std::vector<bool> seen(size(), false);
    std::vector<NodeId> stack{n}, out;
    seen[n] = true;
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        if (children_[cur].empty()) out.push_back(cur);
        for (NodeId c : children_[cur])
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int Hierarchy::lca_depth(NodeId a, NodeId b) const {
    check(a);
    check(b);
    auto closure = [&](NodeId n) {
        std::vector<bool> in(size(), false);
        in[n] = true;
        for (NodeId anc : ancestors(n)) in[anc] = true;
        return in;
    };
    std::vector<bool> anc_a = closure(a), anc_b = closure(b);
    int best = 0;
    for (std::size_t i = 0; i < size(); ++i)
        if (anc_a[i] && anc_b[i]) best = std::max(best, depths_[i]);
    return best;
}

std::uint64_t Hierarchy::fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const auto& name : names_) {
        h ^= fnv1a64(name);
        h *= 1099511628211ull;
    }
    return h;
}

Hierarchy load_hierarchy(std::string_view text) {
    Hierarchy h;
    auto intern = [&](std::string_view token) -> NodeId {
        auto it = h.index_.find(std::string(token));
        if (it != h.index_.end()) return it->second;
        NodeId id = static_cast<NodeId>(h.names_.size());
        h.names_.emplace_back(token);
        h.index_.emplace(std::string(token), id);
        h.parents_.emplace_back();
        h.children_.emplace_back();
        return id;
    };

    std::set<std::pair<NodeId, NodeId>> edges;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos || tab == 0 || tab + 1 == line.size() ||
            line.find('\t', tab + 1) != std::string_view::npos)
            throw FormatError("line " + std::to_string(lineno) + ": expected 'child<TAB>parent'");
        NodeId child = intern(line.substr(0, tab));
        NodeId parent = intern(line.substr(tab + 1));
        if (!edges.emplace(child, parent).second)
            throw DuplicateEdge("line " + std::to_string(lineno) + ": duplicate edge");
        h.parents_[child].push_back(parent);
        h.children_[parent].push_back(child);
    }
    if (h.names_.empty()) throw EmptyDocument("no edges in document");

    std::vector<NodeId> roots;
    for (std::size_t i = 0; i < h.names_.size(); ++i)
        if (h.parents_[i].empty()) roots.push_back(static_cast<NodeId>(i));
    // every node having a parent implies a directed cycle
    if (roots.empty()) throw CycleDetected("no parentless node: directed cycle in hierarchy");
    if (roots.size() > 1) {
        std::string msg = "multiple parentless nodes:";
        for (NodeId r : roots) msg += " " + h.names_[r];
        throw MultipleRoots(msg);
    }
    h.root_ = roots.front();

    // Kahn's algorithm over child->parent edges reversed; min node index first
    // so the order is deterministic. Leftover nodes mean a directed cycle.
    std::vector<int> remaining(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        remaining[i] = static_cast<int>(h.parents_[i].size());
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    ready.push(h.root_);
    while (!ready.empty()) {
        NodeId cur = ready.top();
        ready.pop();
        h.topo_.push_back(cur);
        for (NodeId c : h.children_[cur])
            if (--remaining[c] == 0) ready.push(c);
    }
    if (h.topo_.size() != h.size()) throw CycleDetected("directed cycle in hierarchy");

    // BFS from the root gives shortest upward path lengths.
    h.depths_.assign(h.size(), -1);
    h.depths_[h.root_] = 0;
    std::queue<NodeId> bfs;
    bfs.push(h.root_);
    while (!bfs.empty()) {
        NodeId cur = bfs.front();
        bfs.pop();
        h.max_depth_ = std::max(h.max_depth_, h.depths_[cur]);
        for (NodeId c : h.children_[cur])
            if (h.depths_[c] < 0) {
                h.depths_[c] = h.depths_[cur] + 1;
                bfs.push(c);
            }
    }

    for (std::size_t i = 0; i < h.size(); ++i)
        if (h.children_[i].empty()) h.leaves_.push_back(static_cast<NodeId>(i));
    return h;
}

Hierarchy load_hierarchy_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open hierarchy file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_hierarchy(buf.str());
}

}  // namespace chillax
