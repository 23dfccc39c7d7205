#include "chillax/synthetic.hpp"

#include <cmath>
#include <sstream>

#include "chillax/errors.hpp"
#include "chillax/rng.hpp"

namespace chillax {

namespace {

constexpr std::uint64_t kStreamFeatures = 0xfea7ull;

double gauss(std::mt19937_64& rng) {
    // Box-Muller on our own uniforms; std::normal_distribution is not
    // reproducible across standard libraries.
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 <= 0.0) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::string leaf_name(int branch, int leaf) {
    return "b" + std::to_string(branch) + "_l" + std::to_string(leaf);
}

}  // namespace

std::string synthetic_hierarchy_text(const SyntheticSpec& spec) {
    if (spec.branches < 1 || spec.leaves_per_branch < 1)
        throw InvalidParameters("synthetic hierarchy needs at least one branch and leaf");
    std::ostringstream out;
    for (int b = 0; b < spec.branches; ++b) {
        out << "b" << b << "\troot\n";
        for (int l = 0; l < spec.leaves_per_branch; ++l)
            out << leaf_name(b, l) << "\tb" << b << "\n";
    }
    return out.str();
}

Dataset synthetic_dataset(const Hierarchy& h, const SyntheticSpec& spec,
                          const std::string& id_prefix) {
    if (spec.feature_dim < spec.branches + 1)
        throw InvalidParameters("feature_dim must be at least branches + 1");
    if (spec.examples_per_leaf < 1) throw InvalidParameters("examples_per_leaf must be positive");

    const double margin = spec.margin_sigmas;  // sigma = 1
    // Branch centers sit on orthogonal axes so inter-branch center distance
    // equals the margin; sibling leaves spread along one shared extra axis
    // at twice the margin. The closest cluster pair is therefore a
    // same-position cross-branch pair at exactly margin_sigmas sigmas, which
    // makes telling branches apart the data-limited part of the problem.
    const double branch_scale = margin / std::sqrt(2.0);
    Dataset data;
    data.reserve(static_cast<std::size_t>(spec.branches) * spec.leaves_per_branch *
                 spec.examples_per_leaf);
    for (int b = 0; b < spec.branches; ++b) {
        for (int l = 0; l < spec.leaves_per_branch; ++l) {
            Eigen::VectorXd mean = Eigen::VectorXd::Zero(spec.feature_dim);
            mean[b] = branch_scale;
            mean[spec.branches] = (l - (spec.leaves_per_branch - 1) / 2.0) * 2.0 * margin;
            const NodeId label = h.id(leaf_name(b, l));
            for (int i = 0; i < spec.examples_per_leaf; ++i) {
                LabeledExample ex;
                ex.id = id_prefix + "_" + leaf_name(b, l) + "_" + std::to_string(i);
                ex.label = label;
                auto rng = make_rng(mix_seed(spec.seed, fnv1a64(ex.id)), kStreamFeatures);
                ex.features.resize(spec.feature_dim);
                for (int d = 0; d < spec.feature_dim; ++d) ex.features[d] = mean[d] + gauss(rng);
                data.push_back(std::move(ex));
            }
        }
    }
    return data;
}

}  // namespace chillax
