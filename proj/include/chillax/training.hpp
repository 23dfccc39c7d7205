#ifndef CHILLAX_TRAINING_HPP
#define CHILLAX_TRAINING_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "chillax/dataset.hpp"
#include "chillax/encoding.hpp"
#include "chillax/hierarchy.hpp"

namespace chillax {

/// Cosine-annealed learning rate with warm restarts, plus a constant warmup
/// phase. Cycles have fixed length t0 (T_mult = 1).
struct SgdrSchedule {
    double lr_max = 0.003;
    double lr_min = 1e-6;
    int t0 = 1000;
    int warmup_steps = 0;
    double warmup_lr = 0.01;
    int total_steps = 1000;
};

/// Learning rate at a step in [0, total_steps). Throws StepOutOfRange.
double sgdr_lr(const SgdrSchedule& s, int step);

enum class HeadKind { chillax, softmax_leaves };
enum class TrainMethod { chillax, leaves_only, random_leaf };

TrainMethod parse_method(const std::string& name);  // throws InvalidParameters
std::string method_name(TrainMethod m);

/// Sigmoid head over all hierarchy nodes (chillax) or softmax head over
/// leaves (baselines), with an optional tanh hidden layer.
struct HeadModel {
    HeadKind kind = HeadKind::chillax;
    Eigen::MatrixXd hidden_weights;  // empty when no hidden layer
    Eigen::VectorXd hidden_bias;
    Eigen::MatrixXd weights;  // output_nodes x (hidden size or feature dim)
    Eigen::VectorXd bias;
    std::uint64_t hierarchy_fingerprint = 0;

    bool has_hidden() const { return hidden_weights.size() > 0; }
    Eigen::Index feature_dim() const {
        return has_hidden() ? hidden_weights.cols() : weights.cols();
    }
    Eigen::Index output_dim() const { return weights.rows(); }

    /// Output-layer logits for one feature vector. Throws DimensionMismatch.
    Eigen::VectorXd logits(const Eigen::VectorXd& features) const;
};

struct TrainConfig {
    SgdrSchedule schedule;
    int batch_size = 32;
    int hidden_size = 0;  // 0 = plain affine head
    double momentum = 0.0;
    double weight_decay = 0.0;
    std::uint64_t seed = 0;
};

/// Masked binary cross-entropy: -sum_s mask[s] (e[s] ln p[s] +
/// (1-e[s]) ln(1-p[s])), probabilities clipped to [eps, 1-eps].
/// Throws LengthMismatch.
double masked_bce_loss(const Eigen::VectorXd& probs, const MaskedTarget& target);

/// Gradient of the masked BCE w.r.t. the logits feeding the sigmoids:
/// component s is mask[s] (p[s] - e[s]).
Eigen::VectorXd masked_bce_grad(const Eigen::VectorXd& probs, const MaskedTarget& target);

/// Baseline preprocessing: leaves_only drops non-leaf-labeled examples,
/// random_leaf projects them to a seeded uniform descendant leaf. chillax
/// passes the data through untouched.
Dataset preprocess_for_method(const Hierarchy& h, const Dataset& data, TrainMethod method,
                              std::uint64_t seed);

/// Mini-batch SGD for total_steps steps under the SGDR schedule.
/// Deterministic given the seed. Throws EmptyDataset, DimensionMismatch.
HeadModel train(const Hierarchy& h, const Dataset& data, TrainMethod method,
                const TrainConfig& config);

/// chillax: per-node sigmoid conditional scores (length = node count);
/// softmax head: leaf probability distribution (length = leaf count,
/// ordered like Hierarchy::leaves()).
Eigen::VectorXd score(const HeadModel& model, const Eigen::VectorXd& features);

/// JSON checkpoint with kind, dimensions, hierarchy fingerprint and
/// parameters; loading verifies the fingerprint against h.
void save_model(const HeadModel& model, const std::string& path);
HeadModel load_model(const Hierarchy& h, const std::string& path);

}  // namespace chillax

#endif
