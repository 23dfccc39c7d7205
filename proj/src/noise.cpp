#include "chillax/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chillax/errors.hpp"
#include "chillax/rng.hpp"

namespace chillax {

namespace {

// stream labels for deriving independent per-purpose rngs from one seed
constexpr std::uint64_t kStreamSubset = 0x5e1ec7ull;
constexpr std::uint64_t kStreamInaccuracy = 0x1acc0ull;
constexpr std::uint64_t kStreamRelabel = 0x9e1abull;
constexpr std::uint64_t kStreamDepth = 0xde97ull;

std::mt19937_64 example_rng(std::uint64_t seed, const std::string& id, std::uint64_t stream) {
    return make_rng(mix_seed(seed, fnv1a64(id)), stream);
}

// indices of exactly round(fraction * N) examples, drawn uniformly
std::vector<std::size_t> pick_subset(std::size_t n, double fraction, std::uint64_t seed) {
    auto k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto rng = make_rng(seed, kStreamSubset);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::size_t j = i + uniform_index(rng, n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

int sample_depth(const Eigen::VectorXd& pmf, std::mt19937_64& rng) {
    double u = uniform01(rng);
    double acc = 0.0;
    for (Eigen::Index d = 0; d < pmf.size(); ++d) {
        acc += pmf[d];
        if (u < acc) return static_cast<int>(d);
    }
    return static_cast<int>(pmf.size()) - 1;
}

}  // namespace

DepthModel DepthModel::geometric(double q, int shift) {
    DepthModel m;
    m.kind = Kind::geometric;
    m.q = q;
    m.shift = shift;
    return m;
}

DepthModel DepthModel::poisson(double lambda, int shift) {
    DepthModel m;
    m.kind = Kind::poisson;
    m.lambda = lambda;
    m.shift = shift;
    return m;
}

DepthModel DepthModel::relabel(double fraction) {
    DepthModel m;
    m.kind = Kind::relabel;
    m.fraction = fraction;
    return m;
}

DepthModel DepthModel::benchmark() { return DepthModel{}; }

DepthModel::Kind DepthModel::parse_kind(const std::string& name) {
    if (name == "geometric") return Kind::geometric;
    if (name == "poisson") return Kind::poisson;
    if (name == "relabel") return Kind::relabel;
    if (name == "benchmark") return Kind::benchmark;
    throw InvalidParameters("unknown noise model '" + name + "'");
}

std::string DepthModel::kind_name() const {
    switch (kind) {
        case Kind::geometric: return "geometric";
        case Kind::poisson: return "poisson";
        case Kind::relabel: return "relabel";
        case Kind::benchmark: return "benchmark";
    }
    return "?";
}

Eigen::VectorXd depth_pmf(const DepthModel& model, int d_max) {
    if (d_max < 0) throw InvalidParameters("d_max must be non-negative");
    if (model.shift < 0) throw InvalidParameters("shift must be non-negative");
    Eigen::VectorXd pmf = Eigen::VectorXd::Zero(d_max + 1);
    switch (model.kind) {
        case DepthModel::Kind::geometric: {
            if (!(model.q > 0.0) || model.q > 1.0)
                throw InvalidParameters("geometric q must be in (0,1]");
            if (model.shift > d_max) throw InvalidParameters("shift exceeds maximum depth");
            // mass q(1-q)^k at depth d_max - k: k steps of abstraction up
            // from the most precise layer
            for (int k = 0; k <= d_max - model.shift; ++k)
                pmf[d_max - k] = model.q * std::pow(1.0 - model.q, k);
            break;
        }
        case DepthModel::Kind::poisson: {
            if (model.lambda < 0.0) throw InvalidParameters("poisson lambda must be non-negative");
            if (model.shift > d_max) throw InvalidParameters("shift exceeds maximum depth");
            if (model.lambda == 0.0) {
                pmf[model.shift] = 1.0;
                return pmf;
            }
            for (int d = model.shift; d <= d_max; ++d)
                pmf[d] = std::exp(d * std::log(model.lambda) - model.lambda -
                                  std::lgamma(static_cast<double>(d) + 1.0));
            break;
        }
        case DepthModel::Kind::benchmark:
            pmf[d_max] = 1.0;
            return pmf;
        case DepthModel::Kind::relabel:
            throw InvalidParameters("relabel model has no depth pmf");
    }
    double total = pmf.sum();
    if (total <= 0.0) throw InvalidParameters("degenerate depth distribution");
    pmf /= total;
    return pmf;
}

NodeId imprecisify_label(const Hierarchy& h, NodeId y, int target_depth, std::mt19937_64& rng) {
    if (target_depth < 0) throw InvalidParameters("target depth must be non-negative");
    if (target_depth >= h.depth(y)) return y;  // never go down the hierarchy
    NodeId cur = y;
    // Every parent of a node at depth d has depth >= d - 1, so the walk can
    // never skip below the target depth and always terminates.
    while (h.depth(cur) != target_depth) {
        const auto& ps = h.parents(cur);
        cur = ps[uniform_index(rng, ps.size())];
    }
    return cur;
}

Dataset relabel_parents(const Hierarchy& h, const Dataset& data, double fraction,
                        std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw InvalidParameters("fraction must be in [0,1]");
    Dataset out = data;
    for (std::size_t i : pick_subset(data.size(), fraction, seed)) {
        const auto& ps = h.parents(out[i].label);
        if (ps.empty()) continue;  // root has no parent to relabel to
        auto rng = example_rng(seed, out[i].id, kStreamRelabel);
        out[i].label = ps[uniform_index(rng, ps.size())];
    }
    return out;
}

Dataset inject_inaccuracy(const Hierarchy& h, const Dataset& data, double fraction,
                          std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw InvalidParameters("fraction must be in [0,1]");
    if (!leaf_labeled(h, data)) throw NotLeafLabeled("inaccuracy requires leaf-labeled data");
    const auto& leaves = h.leaves();
    if (leaves.size() < 2 && fraction > 0.0)
        throw InvalidParameters("cannot confuse labels with fewer than two leaves");
    Dataset out = data;
    for (std::size_t i : pick_subset(data.size(), fraction, seed)) {
        auto rng = example_rng(seed, out[i].id, kStreamInaccuracy);
        auto cur = static_cast<std::size_t>(
            std::find(leaves.begin(), leaves.end(), out[i].label) - leaves.begin());
        std::size_t pick = uniform_index(rng, leaves.size() - 1);
        if (pick >= cur) ++pick;
        out[i].label = leaves[pick];
    }
    return out;
}

Dataset degrade_dataset(const Hierarchy& h, const Dataset& data, const DepthModel& model,
                        double inaccuracy, std::uint64_t seed) {
    if (!leaf_labeled(h, data)) throw NotLeafLabeled("degradation expects leaf-labeled data");
    Dataset cur = inaccuracy > 0.0 ? inject_inaccuracy(h, data, inaccuracy, seed) : data;
    switch (model.kind) {
        case DepthModel::Kind::benchmark:
            return cur;
        case DepthModel::Kind::relabel:
            return relabel_parents(h, cur, model.fraction, seed);
        case DepthModel::Kind::geometric:
        case DepthModel::Kind::poisson: {
            Eigen::VectorXd pmf = depth_pmf(model, h.max_depth());
            for (auto& ex : cur) {
                auto rng = example_rng(seed, ex.id, kStreamDepth);
                int target = sample_depth(pmf, rng);
                ex.label = imprecisify_label(h, ex.label, target, rng);
            }
            return cur;
        }
    }
    throw InvalidParameters("unhandled noise model kind");
}

}  // namespace chillax
