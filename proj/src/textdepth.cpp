#include "chillax/textdepth.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "chillax/errors.hpp"

namespace chillax {

std::vector<std::string> lemmas_of(const std::string& text, const Lexicon& lexicon) {
    std::vector<std::string> lemmas;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        if (!lexicon.count(token)) {
            // plural fallback: "buntings" -> "bunting", "finches" -> "finch"
            for (std::size_t strip : {std::size_t{2}, std::size_t{1}}) {
                if (token.size() > strip && token.compare(token.size() - strip, strip,
                                                          strip == 2 ? "es" : "s") == 0) {
                    std::string singular = token.substr(0, token.size() - strip);
                    if (lexicon.count(singular)) {
                        token = singular;
                        break;
                    }
                }
            }
        }
        lemmas.push_back(token);
        token.clear();
    };
    for (unsigned char c : text) {
        if (std::isalnum(c))
            token.push_back(static_cast<char>(std::tolower(c)));
        else
            flush();
    }
    flush();
    return lemmas;
}

std::optional<int> best_depth(const Hierarchy& h, const Lexicon& lexicon,
                              const std::string& text) {
    std::optional<int> best;
    for (const auto& lemma : lemmas_of(text, lexicon)) {
        auto it = lexicon.find(lemma);
        if (it == lexicon.end() || it->second.empty()) continue;
        // candidate closest to the root; ties go to the smallest node index,
        // which std::set order already delivers
        int shallow = h.max_depth() + 1;
        for (NodeId n : it->second) shallow = std::min(shallow, h.depth(n));
        if (!best || shallow > *best) best = shallow;
    }
    return best;
}

std::map<std::string, std::vector<long>> depth_histogram(const Hierarchy& h,
                                                         const Lexicon& lexicon,
                                                         const std::vector<TextRecord>& records) {
    std::map<std::string, std::vector<long>> hist;
    for (const auto& rec : records) {
        for (const auto& [field, text] : rec.fields) {
            auto& counts = hist.try_emplace(field, h.max_depth() + 1, 0).first->second;
            if (auto d = best_depth(h, lexicon, text)) ++counts[static_cast<std::size_t>(*d)];
        }
    }
    return hist;
}

Lexicon load_lexicon(const Hierarchy& h, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file: " + path);
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw FormatError(path + ":" + std::to_string(lineno) +
                              ": expected 'lemma<TAB>node[,node...]'");
        std::string lemma = line.substr(0, tab);
        std::transform(lemma.begin(), lemma.end(), lemma.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        auto& nodes = lex[lemma];
        std::size_t pos = tab + 1;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            std::string name = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
            if (name.empty())
                throw FormatError(path + ":" + std::to_string(lineno) + ": empty node name");
            nodes.insert(h.id(name));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return lex;
}

std::vector<TextRecord> load_text_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open records file: " + path);
    std::vector<TextRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") || !j.contains("fields") ||
            !j["fields"].is_object())
            throw FormatError(path + ":" + std::to_string(lineno) + ": bad text record");
        TextRecord rec;
        rec.id = j["id"].get<std::string>();
        for (const auto& [name, value] : j["fields"].items())
            rec.fields[name] = value.get<std::string>();
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace chillax
