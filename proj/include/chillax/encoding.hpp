#ifndef CHILLAX_ENCODING_HPP
#define CHILLAX_ENCODING_HPP

#include <Eigen/Core>

#include "chillax/hierarchy.hpp"

namespace chillax {

/// Target/mask pair for one training label, indexed by node order.
struct MaskedTarget {
    Eigen::VectorXd targets;  // e(y): 1 for y and its ancestors
    Eigen::VectorXd mask;     // m(y) or m'(y)
    NodeId label = -1;
};

/// e(y): component s is 1 iff s = y or s is a strict transitive ancestor of y.
Eigen::VectorXd encode(const Hierarchy& h, NodeId y);

/// Original loss mask m(y): train s iff s = y, s is a child of y, or s is a
/// child of a strict transitive ancestor of y.
Eigen::VectorXd mask_original(const Hierarchy& h, NodeId y);

/// CHILLAX loss mask m'(y): as m(y) but children of y are not trained, since
/// their truth value is unknown under an imprecise label.
Eigen::VectorXd mask_chillax(const Hierarchy& h, NodeId y);

inline MaskedTarget masked_target(const Hierarchy& h, NodeId y, bool chillax = true) {
    return {encode(h, y), chillax ? mask_chillax(h, y) : mask_original(h, y), y};
}

}  // namespace chillax

#endif
