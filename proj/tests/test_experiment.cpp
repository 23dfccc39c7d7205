#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chillax/errors.hpp"
#include "chillax/experiment.hpp"
#include "chillax/synthetic.hpp"
#include "test_support.hpp"

using namespace chillax;
using namespace chillax::test;

namespace {

struct SmallBench {
    Hierarchy h;
    Dataset train;
    Dataset val;
};

SmallBench small_bench() {
    SyntheticSpec spec;
    spec.branches = 2;
    spec.leaves_per_branch = 2;
    spec.examples_per_leaf = 40;
    spec.feature_dim = 4;
    spec.seed = 7;
    Hierarchy h = load_hierarchy(synthetic_hierarchy_text(spec));
    Dataset train = synthetic_dataset(h, spec, "train");
    SyntheticSpec val_spec = spec;
    val_spec.examples_per_leaf = 20;
    val_spec.seed = 8;
    Dataset val = synthetic_dataset(h, val_spec, "val");
    return {std::move(h), std::move(train), std::move(val)};
}

ExperimentConfig fast_config() {
    ExperimentConfig cfg;
    cfg.noise = DepthModel::benchmark();
    cfg.train.schedule = {0.3, 1e-4, 60, 0, 0.01, 60};
    cfg.train.batch_size = 16;
    return cfg;
}

}  // namespace

TEST_CASE("config parsing with overrides and unknown-key rejection") {
    auto path = (std::filesystem::temp_directory_path() / "chillax_cfg_test.json").string();
    {
        std::ofstream out(path);
        out << R"({"hierarchy":"h.tsv","train":"t.jsonl","val":"v.jsonl",
                   "model":"poisson","lambda":2.5,"inaccuracy":0.1,
                   "methods":["chillax","leaves-only"],
                   "lr_max":0.01,"steps":500,"seeds":[1,2,3],"ks":[1,5]})";
    }
    ExperimentConfig cfg = load_experiment_config(path);
    CHECK(cfg.noise.kind == DepthModel::Kind::poisson);
    CHECK(cfg.noise.lambda == 2.5);
    CHECK(cfg.inaccuracy == 0.1);
    CHECK(cfg.methods.size() == 2);
    CHECK(cfg.train.schedule.lr_max == 0.01);
    CHECK(cfg.train.schedule.total_steps == 500);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
    std::filesystem::remove(path);

    {
        std::ofstream out(path);
        out << R"({"seeds":[1],"learning_rate":0.1})";
    }
    CHECK_THROWS_AS(load_experiment_config(path), FormatError);
    std::filesystem::remove(path);

    {
        std::ofstream out(path);
        out << R"({"seeds":[]})";
    }
    CHECK_THROWS_AS(load_experiment_config(path), InvalidParameters);
    std::filesystem::remove(path);
}

TEST_CASE("degrade run writes dataset and histogram; benchmark is an identity") {
    SmallBench bench = small_bench();
    auto dir = std::filesystem::temp_directory_path();
    auto data_path = (dir / "chillax_degraded_test.jsonl").string();
    auto hist_path = (dir / "chillax_hist_test.csv").string();
    Dataset out = run_degrade(bench.h, bench.train, DepthModel::benchmark(), 0.0, 1, data_path,
                              hist_path);
    CHECK(out == bench.train);
    CHECK(load_dataset(bench.h, data_path) == bench.train);

    std::ifstream hist(hist_path);
    std::string line;
    std::getline(hist, line);
    CHECK(line == "depth,count");
    long total = 0;
    while (std::getline(hist, line)) {
        auto comma = line.find(',');
        total += std::stol(line.substr(comma + 1));
    }
    CHECK(total == static_cast<long>(bench.train.size()));
    std::filesystem::remove(data_path);
    std::filesystem::remove(hist_path);
}

TEST_CASE("row accounting: methods x seeds rows plus two aggregate rows each") {
    SmallBench bench = small_bench();
    ExperimentConfig cfg = fast_config();
    cfg.methods = {TrainMethod::chillax, TrainMethod::leaves_only};
    cfg.seeds = {1, 2, 3};
    auto rows = run_experiment(bench.h, bench.train, bench.val, cfg);
    CHECK(rows.size() == 6);
    std::string csv = experiment_csv(rows, cfg.ks);
    long lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == 1 + 6 + 2 * 2);  // header + cells + mean/stddev per method
}

TEST_CASE("experiment output is byte-identical across runs") {
    SmallBench bench = small_bench();
    ExperimentConfig cfg = fast_config();
    cfg.methods = {TrainMethod::chillax};
    cfg.seeds = {4, 5};
    auto rows1 = run_experiment(bench.h, bench.train, bench.val, cfg);
    auto rows2 = run_experiment(bench.h, bench.train, bench.val, cfg);
    CHECK(experiment_csv(rows1, cfg.ks) == experiment_csv(rows2, cfg.ks));
}

TEST_CASE("aggregate stddev equals a recount over the per-seed rows") {
    SmallBench bench = small_bench();
    ExperimentConfig cfg = fast_config();
    cfg.noise = DepthModel::poisson(1.0);
    cfg.methods = {TrainMethod::chillax};
    cfg.seeds = {1, 2, 3, 4};
    auto rows = run_experiment(bench.h, bench.train, bench.val, cfg);
    double mean = 0.0;
    for (const auto& row : rows) mean += row.report.top1;
    mean /= static_cast<double>(rows.size());
    double var = 0.0;
    for (const auto& row : rows) var += (row.report.top1 - mean) * (row.report.top1 - mean);
    double sd = std::sqrt(var / static_cast<double>(rows.size() - 1));

    std::string csv = experiment_csv(rows, cfg.ks);
    std::ostringstream expect_mean, expect_sd;
    expect_mean.setf(std::ios::fixed);
    expect_mean.precision(4);
    expect_mean << "chillax,mean," << mean;
    expect_sd.setf(std::ios::fixed);
    expect_sd.precision(4);
    expect_sd << "chillax,stddev," << sd;
    CHECK(csv.find(expect_mean.str()) != std::string::npos);
    CHECK(csv.find(expect_sd.str()) != std::string::npos);
}

TEST_CASE("under benchmark noise the two baselines produce identical rows") {
    SmallBench bench = small_bench();
    ExperimentConfig cfg = fast_config();
    cfg.methods = {TrainMethod::leaves_only, TrainMethod::random_leaf};
    cfg.seeds = {11, 12};
    auto rows = run_experiment(bench.h, bench.train, bench.val, cfg);
    REQUIRE(rows.size() == 4);
    for (int i = 0; i < 2; ++i) {
        CHECK(rows[i].report.top1 == rows[i + 2].report.top1);
        CHECK(rows[i].report.n_mispredicted == rows[i + 2].report.n_mispredicted);
    }
}

TEST_CASE("field histogram csv layout") {
    std::map<std::string, std::vector<long>> hist{{"title", {0, 2, 1}}};
    CHECK(histogram_csv(hist) == "field,depth,count\ntitle,0,0\ntitle,1,2\ntitle,2,1\n");
}
