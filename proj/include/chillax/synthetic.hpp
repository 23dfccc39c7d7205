#ifndef CHILLAX_SYNTHETIC_HPP
#define CHILLAX_SYNTHETIC_HPP

#include <cstdint>
#include <string>

#include "chillax/dataset.hpp"
#include "chillax/hierarchy.hpp"

namespace chillax {

/// Desk-scale synthetic benchmark: a root -> branches -> leaves hierarchy
/// with one Gaussian feature cluster per leaf. Cluster means are placed so
/// the closest pair is margin_sigmas standard deviations apart, with
/// sibling leaves being the closest pairs (branch membership is easier to
/// infer than the exact leaf, as in real taxonomies).
struct SyntheticSpec {
    int branches = 4;
    int leaves_per_branch = 2;
    int examples_per_leaf = 200;
    int feature_dim = 16;
    double margin_sigmas = 2.0;  // distance between closest cluster means, in sigma
    std::uint64_t seed = 0;
};

/// Edge-list text for the spec's hierarchy (nodes root, b0.., b0_l0..).
std::string synthetic_hierarchy_text(const SyntheticSpec& spec);

/// Leaf-labeled dataset of Gaussian clusters; deterministic given the seed.
Dataset synthetic_dataset(const Hierarchy& h, const SyntheticSpec& spec, const std::string& id_prefix = "ex");

}  // namespace chillax

#endif
