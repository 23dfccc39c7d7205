#ifndef CHILLAX_EXPERIMENT_HPP
#define CHILLAX_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chillax/eval.hpp"
#include "chillax/noise.hpp"
#include "chillax/training.hpp"

namespace chillax {

/// Everything one experiment run needs: data locations, noise model,
/// methods, hyperparameters, and the seeds to repeat over.
struct ExperimentConfig {
    std::string hierarchy_path;
    std::string train_path;
    std::string val_path;
    std::vector<TrainMethod> methods = {TrainMethod::chillax, TrainMethod::leaves_only,
                                        TrainMethod::random_leaf};
    DepthModel noise;
    double inaccuracy = 0.0;
    TrainConfig train;
    std::vector<int> ks = {1};
    std::vector<std::uint64_t> seeds = {0};
    std::string out_dir = ".";
};

/// Parse a JSON config document. Unknown keys are rejected so typos fail
/// loudly. Throws FormatError / InvalidParameters.
ExperimentConfig load_experiment_config(const std::string& path);

/// Degrade a leaf-labeled dataset and write it next to a depth histogram of
/// the produced labels ("depth,count" CSV). Returns the degraded data.
Dataset run_degrade(const Hierarchy& h, const Dataset& train, const DepthModel& model,
                    double inaccuracy, std::uint64_t seed, const std::string& out_dataset,
                    const std::string& out_histogram);

struct ExperimentRow {
    std::string method;
    std::uint64_t seed = 0;
    EvalReport report;
};

/// Full protocol: for every (method, seed) degrade the training data with
/// the seed, train, and evaluate on the untouched validation set. Returns
/// per-cell rows in (method, seed) order.
std::vector<ExperimentRow> run_experiment(const Hierarchy& h, const Dataset& train,
                                          const Dataset& val, const ExperimentConfig& config);

/// Per-seed rows followed by mean/stddev aggregate rows per method;
/// byte-stable for identical inputs.
std::string experiment_csv(const std::vector<ExperimentRow>& rows, const std::vector<int>& ks);

/// Histogram CSV for the textdepth pipeline: "field,depth,count" rows.
std::string histogram_csv(const std::map<std::string, std::vector<long>>& hist);

void write_file(const std::string& path, const std::string& content);

}  // namespace chillax

#endif
