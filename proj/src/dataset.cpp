#include "chillax/dataset.hpp"

#include <fstream>

#include <json.hpp>

#include "chillax/errors.hpp"

namespace chillax {

Dataset load_dataset(const Hierarchy& h, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset file: " + path);
    Dataset data;
    std::string line;
    std::size_t lineno = 0;
    Eigen::Index dim = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("label") ||
            !j.contains("features") || !j["features"].is_array())
            throw FormatError(path + ":" + std::to_string(lineno) + ": bad example record");
        LabeledExample ex;
        ex.id = j["id"].get<std::string>();
        ex.label = h.id(j["label"].get<std::string>());
        const auto& feats = j["features"];
        ex.features.resize(static_cast<Eigen::Index>(feats.size()));
        for (std::size_t i = 0; i < feats.size(); ++i)
            ex.features[static_cast<Eigen::Index>(i)] = feats[i].get<double>();
        if (dim < 0) dim = ex.features.size();
        if (ex.features.size() != dim)
            throw DimensionMismatch(path + ":" + std::to_string(lineno) + ": feature dimension changed");
        data.push_back(std::move(ex));
    }
    return data;
}

void save_dataset(const Hierarchy& h, const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write dataset file: " + path);
    for (const auto& ex : data) {
        nlohmann::json j;
        j["id"] = ex.id;
        j["label"] = h.name(ex.label);
        auto feats = nlohmann::json::array();
        for (Eigen::Index i = 0; i < ex.features.size(); ++i) feats.push_back(ex.features[i]);
        j["features"] = std::move(feats);
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failure: " + path);
}

bool leaf_labeled(const Hierarchy& h, const Dataset& data) {
    for (const auto& ex : data)
        if (!h.is_leaf(ex.label)) return false;
    return true;
}

}  // namespace chillax
