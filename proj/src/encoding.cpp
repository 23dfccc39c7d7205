#include "chillax/encoding.hpp"

namespace chillax {

Eigen::VectorXd encode(const Hierarchy& h, NodeId y) {
    const std::vector<NodeId> anc = h.ancestors(y);  // validates y
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.size()));
    e[y] = 1.0;
    for (NodeId a : anc) e[a] = 1.0;
    return e;
}

Eigen::VectorXd mask_original(const Hierarchy& h, NodeId y) {
    Eigen::VectorXd m = mask_chillax(h, y);
    for (NodeId c : h.children(y)) m[c] = 1.0;
    return m;
}

Eigen::VectorXd mask_chillax(const Hierarchy& h, NodeId y) {
    const std::vector<NodeId> anc = h.ancestors(y);  // validates y
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.size()));
    m[y] = 1.0;
    for (NodeId a : anc)
        for (NodeId c : h.children(a)) m[c] = 1.0;
    return m;
}

}  // namespace chillax
