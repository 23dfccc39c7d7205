#include "chillax/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "chillax/errors.hpp"

namespace chillax {

namespace {

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

// sample standard deviation, 0 for a single run
double stddev_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

void format_value(std::ostream& out, double v, bool defined) {
    if (defined)
        out << v;
    else
        out << "nan";
}

}  // namespace

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw FormatError("config is not a JSON object: " + path);

    static const std::set<std::string> known = {
        "hierarchy", "train",       "val",        "methods", "model",   "q",
        "lambda",    "fraction",    "shift",      "inaccuracy", "lr_max", "lr_min",
        "t0",        "warmup_steps", "warmup_lr", "steps",   "batch_size", "hidden_size",
        "momentum",  "weight_decay", "ks",        "seeds",   "out_dir"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw FormatError("unknown config key '" + key + "'");

    ExperimentConfig cfg;
    cfg.hierarchy_path = j.value("hierarchy", "");
    cfg.train_path = j.value("train", "");
    cfg.val_path = j.value("val", "");
    if (j.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : j["methods"]) cfg.methods.push_back(parse_method(m.get<std::string>()));
    }
    cfg.noise.kind = DepthModel::parse_kind(j.value("model", "benchmark"));
    cfg.noise.q = j.value("q", cfg.noise.q);
    cfg.noise.lambda = j.value("lambda", cfg.noise.lambda);
    cfg.noise.fraction = j.value("fraction", cfg.noise.fraction);
    cfg.noise.shift = j.value("shift", cfg.noise.shift);
    cfg.inaccuracy = j.value("inaccuracy", 0.0);
    cfg.train.schedule.lr_max = j.value("lr_max", cfg.train.schedule.lr_max);
    cfg.train.schedule.lr_min = j.value("lr_min", cfg.train.schedule.lr_min);
    cfg.train.schedule.t0 = j.value("t0", cfg.train.schedule.t0);
    cfg.train.schedule.warmup_steps = j.value("warmup_steps", cfg.train.schedule.warmup_steps);
    cfg.train.schedule.warmup_lr = j.value("warmup_lr", cfg.train.schedule.warmup_lr);
    cfg.train.schedule.total_steps = j.value("steps", cfg.train.schedule.total_steps);
    cfg.train.batch_size = j.value("batch_size", cfg.train.batch_size);
    cfg.train.hidden_size = j.value("hidden_size", cfg.train.hidden_size);
    cfg.train.momentum = j.value("momentum", cfg.train.momentum);
    cfg.train.weight_decay = j.value("weight_decay", cfg.train.weight_decay);
    if (j.contains("ks")) {
        cfg.ks.clear();
        for (const auto& k : j["ks"]) cfg.ks.push_back(k.get<int>());
    }
    if (j.contains("seeds")) {
        cfg.seeds.clear();
        for (const auto& s : j["seeds"]) cfg.seeds.push_back(s.get<std::uint64_t>());
    }
    if (cfg.seeds.empty()) throw InvalidParameters("at least one seed is required");
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    return cfg;
}

Dataset run_degrade(const Hierarchy& h, const Dataset& train, const DepthModel& model,
                    double inaccuracy, std::uint64_t seed, const std::string& out_dataset,
                    const std::string& out_histogram) {
    Dataset degraded = degrade_dataset(h, train, model, inaccuracy, seed);
    if (!out_dataset.empty()) save_dataset(h, degraded, out_dataset);
    if (!out_histogram.empty()) {
        std::vector<long> counts(static_cast<std::size_t>(h.max_depth()) + 1, 0);
        for (const auto& ex : degraded) ++counts[static_cast<std::size_t>(h.depth(ex.label))];
        std::ostringstream csv;
        csv << "depth,count\n";
        for (std::size_t d = 0; d < counts.size(); ++d) csv << d << "," << counts[d] << "\n";
        write_file(out_histogram, csv.str());
    }
    return degraded;
}

std::vector<ExperimentRow> run_experiment(const Hierarchy& h, const Dataset& train,
                                          const Dataset& val, const ExperimentConfig& config) {
    std::vector<ExperimentRow> rows;
    for (TrainMethod method : config.methods) {
        for (std::uint64_t seed : config.seeds) {
            Dataset degraded = degrade_dataset(h, train, config.noise, config.inaccuracy, seed);
            TrainConfig tc = config.train;
            tc.seed = seed;
            HeadModel model = chillax::train(h, degraded, method, tc);
            ExperimentRow row;
            row.method = method_name(method);
            row.seed = seed;
            row.report = evaluate(h, model, val, config.ks);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows, const std::vector<int>& ks) {
    std::vector<int> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    out << "method,seed";
    for (int k : sorted_ks) out << ",top" << k;
    out << ",mean_mispred_lca_depth\n";
    for (const auto& row : rows) {
        out << row.method << "," << row.seed;
        for (int k : sorted_ks) out << "," << row.report.topk.at(k);
        out << ",";
        format_value(out, row.report.mean_mispred_lca_depth, row.report.n_mispredicted > 0);
        out << "\n";
    }
    // aggregates per method, in first-appearance order
    std::vector<std::string> methods;
    for (const auto& row : rows)
        if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
            methods.push_back(row.method);
    for (const auto& method : methods) {
        std::map<int, std::vector<double>> topk;
        std::vector<double> lca;
        bool lca_defined = true;
        for (const auto& row : rows) {
            if (row.method != method) continue;
            for (int k : sorted_ks) topk[k].push_back(row.report.topk.at(k));
            if (row.report.n_mispredicted > 0)
                lca.push_back(row.report.mean_mispred_lca_depth);
            else
                lca_defined = false;
        }
        for (const char* stat : {"mean", "stddev"}) {
            const bool is_mean = std::string(stat) == "mean";
            out << method << "," << stat;
            for (int k : sorted_ks)
                out << "," << (is_mean ? mean_of(topk[k]) : stddev_of(topk[k]));
            out << ",";
            format_value(out, is_mean ? mean_of(lca.empty() ? std::vector<double>{0.0} : lca)
                                      : stddev_of(lca),
                         lca_defined && !lca.empty());
            out << "\n";
        }
    }
    return out.str();
}

std::string histogram_csv(const std::map<std::string, std::vector<long>>& hist) {
    std::ostringstream out;
    out << "field,depth,count\n";
    for (const auto& [field, counts] : hist)
        for (std::size_t d = 0; d < counts.size(); ++d)
            out << field << "," << d << "," << counts[d] << "\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failure: " + path);
}

}  // namespace chillax
