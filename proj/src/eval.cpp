#include "chillax/eval.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "chillax/errors.hpp"
#include "chillax/probmodel.hpp"

namespace chillax {

EvalReport evaluate(const Hierarchy& h, const HeadModel& model, const Dataset& valset,
                    const std::vector<int>& ks) {
    if (valset.empty()) throw EmptyValidationSet("empty validation set");
    if (!leaf_labeled(h, valset)) throw NotLeafLabeled("validation labels must be leaves");
    std::vector<int> sorted_ks = ks;
    std::sort(sorted_ks.begin(), sorted_ks.end());
    if (sorted_ks.empty() || sorted_ks.front() < 1 ||
        static_cast<std::size_t>(sorted_ks.back()) > h.leaves().size())
        throw KTooLarge("k outside 1..|leaves|");
    const int k_max = sorted_ks.back();

    EvalReport report;
    report.n_examples = static_cast<long>(valset.size());
    std::map<int, long> hits;
    for (int k : sorted_ks) hits[k] = 0;
    double lca_sum = 0.0;

    for (const auto& ex : valset) {
        Eigen::VectorXd scores = score(model, ex.features);
        std::vector<NodeId> ranked = model.kind == HeadKind::chillax
                                         ? top_k_leaves(h, scores, k_max)
                                         : rank_leaves(h, scores, k_max);
        for (int k : sorted_ks) {
            auto end = ranked.begin() + k;
            if (std::find(ranked.begin(), end, ex.label) != end) ++hits[k];
        }
        if (ranked.front() != ex.label) {
            ++report.n_mispredicted;
            lca_sum += h.lca_depth(ex.label, ranked.front());
        }
    }
    for (int k : sorted_ks)
        report.topk[k] = static_cast<double>(hits[k]) / static_cast<double>(report.n_examples);
    report.top1 = report.topk.count(1) ? report.topk[1]
                                       : 1.0 - static_cast<double>(report.n_mispredicted) /
                                                   static_cast<double>(report.n_examples);
    if (report.n_mispredicted > 0)
        report.mean_mispred_lca_depth = lca_sum / static_cast<double>(report.n_mispredicted);
    return report;
}

std::string report_csv(const EvalReport& report) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(4);
    out << "metric,value\n";
    out << "top1," << report.top1 << "\n";
    for (const auto& [k, v] : report.topk) out << "top" << k << "," << v << "\n";
    out << "mean_mispred_lca_depth,";
    if (report.n_mispredicted > 0)
        out << report.mean_mispred_lca_depth;
    else
        out << "nan";
    out << "\n";
    out << "n_examples," << report.n_examples << "\n";
    out << "n_mispredicted," << report.n_mispredicted << "\n";
    return out.str();
}

void emit_report(const EvalReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write report file: " + path);
    out << report_csv(report);
    if (!out) throw IoError("write failure: " + path);
}

}  // namespace chillax
