#ifndef CHILLAX_NOISE_HPP
#define CHILLAX_NOISE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <string>

#include "chillax/dataset.hpp"
#include "chillax/hierarchy.hpp"

namespace chillax {

/// Distribution over label depth used to degrade a precisely labeled dataset.
/// geometric models web crawling, poisson volunteer annotators, relabel the
/// Deng-style parent replacement, benchmark professionally curated data
/// (no imprecision at all).
struct DepthModel {
    enum class Kind { geometric, poisson, relabel, benchmark };
    Kind kind = Kind::benchmark;
    double q = 1.0;         // geometric success probability, (0,1]
    double lambda = 0.0;    // poisson rate, >= 0
    double fraction = 0.0;  // relabel fraction, [0,1]
    int shift = 0;          // layers near the root with zero probability

    static DepthModel geometric(double q, int shift = 0);
    static DepthModel poisson(double lambda, int shift = 0);
    static DepthModel relabel(double fraction);
    static DepthModel benchmark();

    static Kind parse_kind(const std::string& name);  // throws InvalidParameters
    std::string kind_name() const;
};

/// Probability mass over target depths 0..d_max after truncation and
/// renormalization. geometric places mass q(1-q)^k at depth d_max - k;
/// poisson places its pmf directly on depths shift..d_max; benchmark is a
/// point mass at d_max. Not defined for the relabel kind.
/// Throws InvalidParameters for bad parameters or shift > d_max.
Eigen::VectorXd depth_pmf(const DepthModel& model, int d_max);

/// Replace y by an ancestor of the requested depth, walking upward and
/// picking uniformly among parents at each step. Labels at or above the
/// target depth are returned unchanged; there is never a step downward.
NodeId imprecisify_label(const Hierarchy& h, NodeId y, int target_depth, std::mt19937_64& rng);

/// Replace the labels of exactly round(fraction * N) uniformly chosen
/// examples with a (uniformly chosen) parent label.
Dataset relabel_parents(const Hierarchy& h, const Dataset& data, double fraction,
                        std::uint64_t seed);

/// Replace the labels of exactly round(fraction * N) uniformly chosen
/// examples with a uniformly random *different* leaf. Input must be
/// leaf-labeled (inaccuracy is injected before imprecision).
Dataset inject_inaccuracy(const Hierarchy& h, const Dataset& data, double fraction,
                          std::uint64_t seed);

/// Full degradation pipeline: inaccuracy first, then per-example depth
/// sampling and imprecisification (or parent relabeling for the relabel
/// kind). Per-example randomness is derived from the seed and the example
/// id, so the result does not depend on iteration order.
Dataset degrade_dataset(const Hierarchy& h, const Dataset& data, const DepthModel& model,
                        double inaccuracy, std::uint64_t seed);

}  // namespace chillax

#endif
