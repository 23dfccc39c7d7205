#ifndef CHILLAX_DATASET_HPP
#define CHILLAX_DATASET_HPP

#include <Eigen/Core>
#include <string>
#include <vector>

#include "chillax/hierarchy.hpp"

namespace chillax {

/// One training/validation example: a feature vector with a label that may
/// sit anywhere in the hierarchy.
struct LabeledExample {
    std::string id;
    NodeId label = -1;
    Eigen::VectorXd features;
};

inline bool operator==(const LabeledExample& a, const LabeledExample& b) {
    return a.id == b.id && a.label == b.label && a.features.size() == b.features.size() &&
           (a.features.array() == b.features.array()).all();
}

using Dataset = std::vector<LabeledExample>;

/// JSON-Lines dataset I/O: one object per line with fields id, label (node
/// name) and features (array of numbers). Labels are resolved against h;
/// throws UnknownNode for labels outside the hierarchy, FormatError for bad
/// JSON, DimensionMismatch for ragged feature lengths.
Dataset load_dataset(const Hierarchy& h, const std::string& path);
void save_dataset(const Hierarchy& h, const Dataset& data, const std::string& path);

/// All labels leaves? Used to gate operations defined on precise data only.
bool leaf_labeled(const Hierarchy& h, const Dataset& data);

}  // namespace chillax

#endif
