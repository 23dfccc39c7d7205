#ifndef CHILLAX_EVAL_HPP
#define CHILLAX_EVAL_HPP

#include <map>
#include <string>
#include <vector>

#include "chillax/dataset.hpp"
#include "chillax/hierarchy.hpp"
#include "chillax/training.hpp"

namespace chillax {

struct EvalReport {
    double top1 = 0.0;
    std::map<int, double> topk;
    double mean_mispred_lca_depth = 0.0;  // meaningful only when n_mispredicted > 0
    long n_examples = 0;
    long n_mispredicted = 0;
};

/// Score a model on a precise validation set: top-k accuracy over the
/// requested ks plus the mean LCA depth between truth and prediction over
/// mispredicted examples (higher is better — deeper shared ancestry means
/// a semantically closer mistake).
/// Throws NotLeafLabeled, EmptyValidationSet, KTooLarge.
EvalReport evaluate(const Hierarchy& h, const HeadModel& model, const Dataset& valset,
                    const std::vector<int>& ks = {1});

/// CSV with one "metric,value" row per metric, 4 decimal places, topk rows
/// in ascending k, "nan" when the LCA metric is undefined.
void emit_report(const EvalReport& report, const std::string& path);
std::string report_csv(const EvalReport& report);

}  // namespace chillax

#endif
