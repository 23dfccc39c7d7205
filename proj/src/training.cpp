#include "chillax/training.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "chillax/errors.hpp"
#include "chillax/rng.hpp"

namespace chillax {

namespace {

constexpr double kProbEps = 1e-7;
constexpr std::uint64_t kStreamInit = 0x1417ull;
constexpr std::uint64_t kStreamShuffle = 0x5afull;
constexpr std::uint64_t kStreamLeafProject = 0x1eafull;

Eigen::MatrixXd init_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = (2.0 * uniform01(rng) - 1.0) * scale;
    return m;
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logits) {
    Eigen::VectorXd z = (logits.array() - logits.maxCoeff()).exp();
    return z / z.sum();
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return {};
    auto cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    return m;
}

}  // namespace

double sgdr_lr(const SgdrSchedule& s, int step) {
    if (step < 0 || step >= s.total_steps)
        throw StepOutOfRange("step " + std::to_string(step) + " outside 0.." +
                             std::to_string(s.total_steps - 1));
    if (step < s.warmup_steps) return s.warmup_lr;
    const int t = (step - s.warmup_steps) % s.t0;
    return s.lr_min + 0.5 * (s.lr_max - s.lr_min) *
                          (1.0 + std::cos(M_PI * static_cast<double>(t) / s.t0));
}

TrainMethod parse_method(const std::string& name) {
    if (name == "chillax") return TrainMethod::chillax;
    if (name == "leaves-only" || name == "leaves_only") return TrainMethod::leaves_only;
    if (name == "random-leaf" || name == "random_leaf") return TrainMethod::random_leaf;
    throw InvalidParameters("unknown method '" + name + "'");
}

std::string method_name(TrainMethod m) {
    switch (m) {
        case TrainMethod::chillax: return "chillax";
        case TrainMethod::leaves_only: return "leaves-only";
        case TrainMethod::random_leaf: return "random-leaf";
    }
    return "?";
}

Eigen::VectorXd HeadModel::logits(const Eigen::VectorXd& features) const {
    if (features.size() != feature_dim())
        throw DimensionMismatch("feature dimension " + std::to_string(features.size()) +
                                " does not match model " + std::to_string(feature_dim()));
    if (has_hidden()) {
        Eigen::VectorXd hidden = (hidden_weights * features + hidden_bias).array().tanh();
        return weights * hidden + bias;
    }
    return weights * features + bias;
}

double masked_bce_loss(const Eigen::VectorXd& probs, const MaskedTarget& target) {
    if (probs.size() != target.targets.size() || probs.size() != target.mask.size())
        throw LengthMismatch("probability/target length mismatch");
    const auto p = probs.array().min(1.0 - kProbEps).max(kProbEps);
    const auto e = target.targets.array();
    return -(target.mask.array() * (e * p.log() + (1.0 - e) * (1.0 - p).log())).sum();
}

Eigen::VectorXd masked_bce_grad(const Eigen::VectorXd& probs, const MaskedTarget& target) {
    if (probs.size() != target.targets.size() || probs.size() != target.mask.size())
        throw LengthMismatch("probability/target length mismatch");
    return (target.mask.array() * (probs.array() - target.targets.array())).matrix();
}

Dataset preprocess_for_method(const Hierarchy& h, const Dataset& data, TrainMethod method,
                              std::uint64_t seed) {
    if (method == TrainMethod::chillax) return data;
    Dataset out;
    out.reserve(data.size());
    for (const auto& ex : data) {
        if (h.is_leaf(ex.label)) {
            out.push_back(ex);
            continue;
        }
        if (method == TrainMethod::leaves_only) continue;
        auto leaves = h.leaf_descendants(ex.label);
        auto rng = make_rng(mix_seed(seed, fnv1a64(ex.id)), kStreamLeafProject);
        LabeledExample projected = ex;
        projected.label = leaves[uniform_index(rng, leaves.size())];
        out.push_back(std::move(projected));
    }
    return out;
}

HeadModel train(const Hierarchy& h, const Dataset& raw, TrainMethod method,
                const TrainConfig& config) {
    Dataset data = preprocess_for_method(h, raw, method, config.seed);
    if (data.empty()) throw EmptyDataset("no usable examples after preprocessing");
    const Eigen::Index dim = data.front().features.size();
    for (const auto& ex : data)
        if (ex.features.size() != dim) throw DimensionMismatch("ragged feature dimensions");

    const bool chillax_head = method == TrainMethod::chillax;
    const Eigen::Index out_dim = chillax_head ? static_cast<Eigen::Index>(h.size())
                                              : static_cast<Eigen::Index>(h.leaves().size());

    HeadModel model;
    model.kind = chillax_head ? HeadKind::chillax : HeadKind::softmax_leaves;
    model.hierarchy_fingerprint = h.fingerprint();
    auto init_rng = make_rng(config.seed, kStreamInit);
    if (config.hidden_size > 0) {
        model.hidden_weights = init_matrix(config.hidden_size, dim, init_rng);
        model.hidden_bias = Eigen::VectorXd::Zero(config.hidden_size);
        model.weights = init_matrix(out_dim, config.hidden_size, init_rng);
    } else {
        model.weights = init_matrix(out_dim, dim, init_rng);
    }
    model.bias = Eigen::VectorXd::Zero(out_dim);

    // fixed per-example targets
    std::vector<MaskedTarget> targets;
    std::vector<Eigen::Index> leaf_index;
    if (chillax_head) {
        targets.reserve(data.size());
        for (const auto& ex : data) targets.push_back(masked_target(h, ex.label));
    } else {
        const auto& leaves = h.leaves();
        leaf_index.reserve(data.size());
        for (const auto& ex : data) {
            auto it = std::find(leaves.begin(), leaves.end(), ex.label);
            if (it == leaves.end()) throw NotLeafLabeled("softmax head needs leaf labels");
            leaf_index.push_back(it - leaves.begin());
        }
    }

    auto shuffle_rng = make_rng(config.seed, kStreamShuffle);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    std::size_t cursor = order.size();  // forces a shuffle before the first step

    Eigen::MatrixXd grad_w(model.weights.rows(), model.weights.cols());
    Eigen::VectorXd grad_b(out_dim);
    Eigen::MatrixXd grad_hw, mom_w, mom_b, mom_hw;
    Eigen::VectorXd grad_hb, mom_hb;
    const bool use_momentum = config.momentum > 0.0;
    if (config.hidden_size > 0) {
        grad_hw.resize(model.hidden_weights.rows(), model.hidden_weights.cols());
        grad_hb.resize(config.hidden_size);
    }
    if (use_momentum) {
        mom_w = Eigen::MatrixXd::Zero(model.weights.rows(), model.weights.cols());
        mom_b = Eigen::MatrixXd::Zero(out_dim, 1);
        if (config.hidden_size > 0) {
            mom_hw = Eigen::MatrixXd::Zero(grad_hw.rows(), grad_hw.cols());
            mom_hb = Eigen::VectorXd::Zero(config.hidden_size);
        }
    }

    const int batch = std::max(1, config.batch_size);
    for (int step = 0; step < config.schedule.total_steps; ++step) {
        const double lr = sgdr_lr(config.schedule, step);
        grad_w.setZero();
        grad_b.setZero();
        if (config.hidden_size > 0) {
            grad_hw.setZero();
            grad_hb.setZero();
        }
        int taken = 0;
        for (; taken < batch; ++taken) {
            if (cursor >= order.size()) {
                for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                    std::size_t j = i + uniform_index(shuffle_rng, order.size() - i);
                    std::swap(order[i], order[j]);
                }
                cursor = 0;
            }
            const std::size_t idx = order[cursor++];
            const auto& x = data[idx].features;
            Eigen::VectorXd hidden;
            Eigen::VectorXd logits;
            if (config.hidden_size > 0) {
                hidden = (model.hidden_weights * x + model.hidden_bias).array().tanh();
                logits = model.weights * hidden + model.bias;
            } else {
                logits = model.weights * x + model.bias;
            }
            Eigen::VectorXd g;
            if (chillax_head) {
                Eigen::VectorXd probs = (1.0 / (1.0 + (-logits.array()).exp())).matrix();
                g = masked_bce_grad(probs, targets[idx]);
            } else {
                g = softmax(logits);
                g[leaf_index[idx]] -= 1.0;
            }
            const Eigen::VectorXd& input = config.hidden_size > 0 ? hidden : x;
            grad_w.noalias() += g * input.transpose();
            grad_b += g;
            if (config.hidden_size > 0) {
                Eigen::VectorXd dz =
                    (model.weights.transpose() * g).array() * (1.0 - hidden.array().square());
                grad_hw.noalias() += dz * x.transpose();
                grad_hb += dz;
            }
        }
        const double inv = 1.0 / taken;
        grad_w *= inv;
        grad_b *= inv;
        if (config.weight_decay > 0.0) grad_w += config.weight_decay * model.weights;
        if (config.hidden_size > 0) {
            grad_hw *= inv;
            grad_hb *= inv;
            if (config.weight_decay > 0.0) grad_hw += config.weight_decay * model.hidden_weights;
        }
        if (use_momentum) {
            mom_w = config.momentum * mom_w + grad_w;
            mom_b.col(0) = config.momentum * mom_b.col(0) + grad_b;
            model.weights -= lr * mom_w;
            model.bias -= lr * mom_b.col(0);
            if (config.hidden_size > 0) {
                mom_hw = config.momentum * mom_hw + grad_hw;
                mom_hb = config.momentum * mom_hb + grad_hb;
                model.hidden_weights -= lr * mom_hw;
                model.hidden_bias -= lr * mom_hb;
            }
        } else {
            model.weights -= lr * grad_w;
            model.bias -= lr * grad_b;
            if (config.hidden_size > 0) {
                model.hidden_weights -= lr * grad_hw;
                model.hidden_bias -= lr * grad_hb;
            }
        }
    }
    if (!model.weights.allFinite() || !model.bias.allFinite())
        throw Error("non-finite parameters after training; reduce the learning rate");
    return model;
}

Eigen::VectorXd score(const HeadModel& model, const Eigen::VectorXd& features) {
    Eigen::VectorXd logits = model.logits(features);
    if (model.kind == HeadKind::chillax)
        return (1.0 / (1.0 + (-logits.array()).exp())).matrix();
    return softmax(logits);
}

void save_model(const HeadModel& model, const std::string& path) {
    nlohmann::json j;
    j["format"] = "chillax-head";
    j["version"] = 1;
    j["kind"] = model.kind == HeadKind::chillax ? "chillax" : "softmax_leaves";
    j["hierarchy_fingerprint"] = model.hierarchy_fingerprint;
    j["weights"] = matrix_to_json(model.weights);
    auto bias = nlohmann::json::array();
    for (Eigen::Index i = 0; i < model.bias.size(); ++i) bias.push_back(model.bias[i]);
    j["bias"] = std::move(bias);
    if (model.has_hidden()) {
        j["hidden_weights"] = matrix_to_json(model.hidden_weights);
        auto hb = nlohmann::json::array();
        for (Eigen::Index i = 0; i < model.hidden_bias.size(); ++i)
            hb.push_back(model.hidden_bias[i]);
        j["hidden_bias"] = std::move(hb);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failure: " + path);
}

HeadModel load_model(const Hierarchy& h, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || j.value("format", "") != "chillax-head")
        throw FormatError("not a model checkpoint: " + path);
    HeadModel model;
    model.kind = j["kind"] == "chillax" ? HeadKind::chillax : HeadKind::softmax_leaves;
    model.hierarchy_fingerprint = j["hierarchy_fingerprint"].get<std::uint64_t>();
    if (model.hierarchy_fingerprint != h.fingerprint())
        throw FormatError("model was trained on a different hierarchy");
    model.weights = matrix_from_json(j["weights"]);
    model.bias.resize(static_cast<Eigen::Index>(j["bias"].size()));
    for (Eigen::Index i = 0; i < model.bias.size(); ++i) model.bias[i] = j["bias"][i].get<double>();
    if (j.contains("hidden_weights")) {
        model.hidden_weights = matrix_from_json(j["hidden_weights"]);
        model.hidden_bias.resize(static_cast<Eigen::Index>(j["hidden_bias"].size()));
        for (Eigen::Index i = 0; i < model.hidden_bias.size(); ++i)
            model.hidden_bias[i] = j["hidden_bias"][i].get<double>();
    }
    const Eigen::Index expected = model.kind == HeadKind::chillax
                                      ? static_cast<Eigen::Index>(h.size())
                                      : static_cast<Eigen::Index>(h.leaves().size());
    if (model.output_dim() != expected)
        throw DimensionMismatch("checkpoint output dimension does not match hierarchy");
    return model;
}

}  // namespace chillax
