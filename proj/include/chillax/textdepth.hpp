#ifndef CHILLAX_TEXTDEPTH_HPP
#define CHILLAX_TEXTDEPTH_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chillax/hierarchy.hpp"

namespace chillax {

/// lemma (lowercase) -> candidate hierarchy nodes
using Lexicon = std::map<std::string, std::set<NodeId>>;

/// Free-text record; fields (title, description, tags, ...) are analyzed
/// separately.
struct TextRecord {
    std::string id;
    std::map<std::string, std::string> fields;
};

/// Lowercase alphanumeric tokens, split on everything else. Tokens not in
/// the lexicon fall back to a singular form (strip "es", then "s") when
/// that form is a lexicon entry.
std::vector<std::string> lemmas_of(const std::string& text, const Lexicon& lexicon);

/// Depth of the most descriptive label of a text: per matching lemma the
/// candidate closest to the root is selected (over-interpretation is
/// avoided), then the deepest of those selections wins. Absent when no
/// lemma matches.
std::optional<int> best_depth(const Hierarchy& h, const Lexicon& lexicon,
                              const std::string& text);

/// Per field, counts of best_depth over all records carrying that field;
/// records without a match contribute nothing.
std::map<std::string, std::vector<long>> depth_histogram(const Hierarchy& h,
                                                         const Lexicon& lexicon,
                                                         const std::vector<TextRecord>& records);

/// Lexicon TSV: "lemma<TAB>node[,node...]" per line, '#' comments ignored.
Lexicon load_lexicon(const Hierarchy& h, const std::string& path);

/// Records as JSON-Lines: {"id": ..., "fields": {name: text, ...}}.
std::vector<TextRecord> load_text_records(const std::string& path);

}  // namespace chillax

#endif
