// Command-line front end: degrade datasets, train and evaluate heads, run
// seeded experiment sweeps, analyze text metadata depth, and dump the SGDR
// schedule. All outputs are deterministic given the inputs and seeds.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chillax/errors.hpp"
#include "chillax/experiment.hpp"
#include "chillax/synthetic.hpp"
#include "chillax/textdepth.hpp"

namespace {

using namespace chillax;

struct NoiseFlags {
    std::string model = "benchmark";
    double q = 0.95;
    double lambda = 1.0;
    double fraction = 0.5;
    int shift = 0;

    DepthModel build() const {
        DepthModel m;
        m.kind = DepthModel::parse_kind(model);
        m.q = q;
        m.lambda = lambda;
        m.fraction = fraction;
        m.shift = shift;
        return m;
    }
};

void add_noise_flags(CLI::App* cmd, NoiseFlags& f) {
    cmd->add_option("--model", f.model, "noise model: geometric|poisson|relabel|benchmark");
    cmd->add_option("--q", f.q, "geometric success probability (0,1]");
    cmd->add_option("--lambda", f.lambda, "poisson rate");
    cmd->add_option("--fraction", f.fraction, "relabel fraction [0,1]");
    cmd->add_option("--shift", f.shift, "layers near the root with zero probability");
}

void add_train_flags(CLI::App* cmd, TrainConfig& tc) {
    cmd->add_option("--lr-max", tc.schedule.lr_max, "SGDR maximum learning rate");
    cmd->add_option("--lr-min", tc.schedule.lr_min, "SGDR minimum learning rate");
    cmd->add_option("--t0", tc.schedule.t0, "SGDR cycle length in steps");
    cmd->add_option("--warmup-steps", tc.schedule.warmup_steps, "constant-lr warmup steps");
    cmd->add_option("--warmup-lr", tc.schedule.warmup_lr, "warmup learning rate");
    cmd->add_option("--steps", tc.schedule.total_steps, "total SGD steps");
    cmd->add_option("--batch-size", tc.batch_size, "mini-batch size");
    cmd->add_option("--hidden-size", tc.hidden_size, "hidden layer width (0 = affine head)");
    cmd->add_option("--momentum", tc.momentum, "SGD momentum");
    cmd->add_option("--weight-decay", tc.weight_decay, "L2 weight decay");
}

int run(int argc, char** argv) {
    CLI::App app{"CHILLAX: hierarchical classification from imprecisely labeled data"};
    app.require_subcommand(1);

    // ---- degrade ----
    auto* degrade = app.add_subcommand("degrade", "apply an imprecision model to a dataset");
    std::string hierarchy_path, train_path, out_path, hist_path;
    NoiseFlags noise;
    double inaccuracy = 0.0;
    std::uint64_t seed = 0;
    degrade->add_option("--hierarchy", hierarchy_path, "edge-list TSV")->required();
    degrade->add_option("--train", train_path, "JSON-Lines dataset")->required();
    degrade->add_option("--out", out_path, "degraded dataset path")->required();
    degrade->add_option("--histogram", hist_path, "label depth histogram CSV");
    add_noise_flags(degrade, noise);
    degrade->add_option("--inaccuracy", inaccuracy, "fraction of leaf labels confused first");
    degrade->add_option("--seed", seed, "random seed");
    degrade->callback([&] {
        Hierarchy h = load_hierarchy_file(hierarchy_path);
        Dataset train = load_dataset(h, train_path);
        run_degrade(h, train, noise.build(), inaccuracy, seed, out_path, hist_path);
    });

    // ---- train ----
    auto* train_cmd = app.add_subcommand("train", "train a head on a (degraded) dataset");
    std::string method_name_flag = "chillax";
    TrainConfig tc;
    train_cmd->add_option("--hierarchy", hierarchy_path, "edge-list TSV")->required();
    train_cmd->add_option("--train", train_path, "JSON-Lines dataset")->required();
    train_cmd->add_option("--out", out_path, "model checkpoint path")->required();
    train_cmd->add_option("--method", method_name_flag, "chillax|leaves-only|random-leaf");
    add_train_flags(train_cmd, tc);
    train_cmd->add_option("--seed", seed, "random seed");
    train_cmd->callback([&] {
        Hierarchy h = load_hierarchy_file(hierarchy_path);
        Dataset train = load_dataset(h, train_path);
        tc.seed = seed;
        HeadModel model = chillax::train(h, train, parse_method(method_name_flag), tc);
        save_model(model, out_path);
    });

    // ---- eval ----
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint on a precise set");
    std::string model_path, val_path;
    std::vector<int> ks = {1};
    eval_cmd->add_option("--hierarchy", hierarchy_path, "edge-list TSV")->required();
    eval_cmd->add_option("--checkpoint", model_path, "model checkpoint")->required();
    eval_cmd->add_option("--val", val_path, "leaf-labeled validation set")->required();
    eval_cmd->add_option("--out", out_path, "report CSV path")->required();
    eval_cmd->add_option("--k", ks, "top-k values to report");
    eval_cmd->callback([&] {
        Hierarchy h = load_hierarchy_file(hierarchy_path);
        HeadModel model = load_model(h, model_path);
        Dataset val = load_dataset(h, val_path);
        emit_report(evaluate(h, model, val, ks), out_path);
    });

    // ---- experiment ----
    auto* exp_cmd = app.add_subcommand("experiment", "run the full protocol over methods and seeds");
    std::string config_path, methods_flag, seeds_flag;
    exp_cmd->add_option("--config", config_path, "JSON experiment config")->required();
    exp_cmd->add_option("--hierarchy", hierarchy_path, "override hierarchy path");
    exp_cmd->add_option("--train", train_path, "override training dataset path");
    exp_cmd->add_option("--val", val_path, "override validation dataset path");
    exp_cmd->add_option("--method", methods_flag, "override methods (comma separated)");
    exp_cmd->add_option("--seeds", seeds_flag, "override seeds (comma separated)");
    exp_cmd->add_option("--out", out_path, "override results CSV path");
    exp_cmd->callback([&] {
        ExperimentConfig cfg = load_experiment_config(config_path);
        if (!hierarchy_path.empty()) cfg.hierarchy_path = hierarchy_path;
        if (!train_path.empty()) cfg.train_path = train_path;
        if (!val_path.empty()) cfg.val_path = val_path;
        if (!methods_flag.empty()) {
            cfg.methods.clear();
            std::istringstream ss(methods_flag);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.methods.push_back(parse_method(tok));
        }
        if (!seeds_flag.empty()) {
            cfg.seeds.clear();
            std::istringstream ss(seeds_flag);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.seeds.push_back(std::stoull(tok));
        }
        Hierarchy h = load_hierarchy_file(cfg.hierarchy_path);
        Dataset train = load_dataset(h, cfg.train_path);
        Dataset val = load_dataset(h, cfg.val_path);
        auto rows = run_experiment(h, train, val, cfg);
        std::string csv = experiment_csv(rows, cfg.ks);
        write_file(out_path.empty() ? cfg.out_dir + "/results.csv" : out_path, csv);
    });

    // ---- textdepth ----
    auto* text_cmd = app.add_subcommand("textdepth", "best-label depth histogram of text records");
    std::string lexicon_path, records_path;
    text_cmd->add_option("--hierarchy", hierarchy_path, "edge-list TSV")->required();
    text_cmd->add_option("--lexicon", lexicon_path, "lemma TSV")->required();
    text_cmd->add_option("--records", records_path, "JSON-Lines text records")->required();
    text_cmd->add_option("--out", out_path, "histogram CSV path")->required();
    text_cmd->callback([&] {
        Hierarchy h = load_hierarchy_file(hierarchy_path);
        Lexicon lex = load_lexicon(h, lexicon_path);
        auto records = load_text_records(records_path);
        write_file(out_path, histogram_csv(depth_histogram(h, lex, records)));
    });

    // ---- schedule-dump ----
    auto* sched_cmd = app.add_subcommand("schedule-dump", "print the SGDR learning rate per step");
    SgdrSchedule sched;
    sched_cmd->add_option("--lr-max", sched.lr_max, "maximum learning rate");
    sched_cmd->add_option("--lr-min", sched.lr_min, "minimum learning rate");
    sched_cmd->add_option("--t0", sched.t0, "cycle length in steps");
    sched_cmd->add_option("--warmup-steps", sched.warmup_steps, "warmup steps");
    sched_cmd->add_option("--warmup-lr", sched.warmup_lr, "warmup learning rate");
    sched_cmd->add_option("--steps", sched.total_steps, "total steps");
    sched_cmd->callback([&] {
        std::ostringstream out;
        out << "step,lr\n";
        out.precision(12);
        for (int step = 0; step < sched.total_steps; ++step)
            out << step << "," << sgdr_lr(sched, step) << "\n";
        std::cout << out.str();
    });

    // ---- synth ----
    auto* synth_cmd = app.add_subcommand(
        "synth", "generate the built-in Gaussian-cluster benchmark (hierarchy + datasets)");
    SyntheticSpec spec;
    std::string synth_hier, synth_train, synth_val;
    int val_per_leaf = 50;
    synth_cmd->add_option("--branches", spec.branches, "inner nodes under the root");
    synth_cmd->add_option("--leaves-per-branch", spec.leaves_per_branch, "leaves per branch");
    synth_cmd->add_option("--examples-per-leaf", spec.examples_per_leaf, "training examples per leaf");
    synth_cmd->add_option("--val-per-leaf", val_per_leaf, "validation examples per leaf");
    synth_cmd->add_option("--dim", spec.feature_dim, "feature dimension");
    synth_cmd->add_option("--margin", spec.margin_sigmas, "closest cluster distance in sigmas");
    synth_cmd->add_option("--seed", spec.seed, "random seed");
    synth_cmd->add_option("--hierarchy-out", synth_hier, "hierarchy TSV path")->required();
    synth_cmd->add_option("--train-out", synth_train, "training set path")->required();
    synth_cmd->add_option("--val-out", synth_val, "validation set path")->required();
    synth_cmd->callback([&] {
        std::string text = synthetic_hierarchy_text(spec);
        write_file(synth_hier, text);
        Hierarchy h = load_hierarchy(text);
        save_dataset(h, synthetic_dataset(h, spec, "train"), synth_train);
        SyntheticSpec val_spec = spec;
        val_spec.examples_per_leaf = val_per_leaf;
        val_spec.seed = spec.seed + 1;
        save_dataset(h, synthetic_dataset(h, val_spec, "val"), synth_val);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const chillax::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
