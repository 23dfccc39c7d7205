#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "chillax/errors.hpp"
#include "chillax/textdepth.hpp"
#include "test_support.hpp"

using namespace chillax;
using namespace chillax::test;

namespace {

// depth-3 path to "bird" plus a deeper "bunting" branch
Hierarchy bird_hierarchy() {
    return load_hierarchy(
        "organism\tentity\nanimal\torganism\nbird\tanimal\n"
        "passerine\tbird\nfinch\tpasserine\nbunting\tfinch\n"
        "plant\torganism\n");
}

}  // namespace

TEST_CASE("tokenization lowercases and splits on non-alphanumerics") {
    Lexicon empty;
    auto lemmas = lemmas_of("this beautiful #bird i saw", empty);
    CHECK(lemmas == std::vector<std::string>{"this", "beautiful", "bird", "i", "saw"});
    CHECK(lemmas_of("", empty).empty());
    CHECK(lemmas_of("Hello, World!", empty) == std::vector<std::string>{"hello", "world"});
}

TEST_CASE("plural stripping only applies when the singular is known") {
    Hierarchy h = bird_hierarchy();
    Lexicon lex{{"bird", {h.id("bird")}}};
    CHECK(lemmas_of("Birds!", lex) == std::vector<std::string>{"bird"});
    CHECK(lemmas_of("birdss", lex) == std::vector<std::string>{"birdss"});
    Lexicon finches{{"finch", {h.id("finch")}}};
    CHECK(lemmas_of("finches", finches) == std::vector<std::string>{"finch"});
}

TEST_CASE("best depth: shallowest candidate per lemma, deepest lemma per text") {
    Hierarchy h = bird_hierarchy();
    Lexicon lex{{"bird", {h.id("bird")}}, {"bunting", {h.id("bunting")}}};
    CHECK(best_depth(h, lex, "a bird") == h.depth(h.id("bird")));
    CHECK(best_depth(h, lex, "bunting bird") == h.depth(h.id("bunting")));
    CHECK(best_depth(h, lex, "nothing matches here") == std::nullopt);
    // ambiguous lemma: candidate closest to the root wins
    Lexicon ambiguous{{"bird", {h.id("bird"), h.id("bunting")}}};
    CHECK(best_depth(h, ambiguous, "bird") == h.depth(h.id("bird")));
}

TEST_CASE("best depth is invariant under token order") {
    Hierarchy h = bird_hierarchy();
    Lexicon lex{{"bird", {h.id("bird")}}, {"plant", {h.id("plant")}},
                {"bunting", {h.id("bunting")}}};
    CHECK(best_depth(h, lex, "bird plant bunting") == best_depth(h, lex, "bunting plant bird"));
}

TEST_CASE("adding a deeper match never decreases best depth") {
    Hierarchy h = bird_hierarchy();
    Lexicon lex{{"bird", {h.id("bird")}}, {"bunting", {h.id("bunting")}}};
    auto base = best_depth(h, lex, "bird");
    auto extended = best_depth(h, lex, "bird bunting");
    REQUIRE(base.has_value());
    REQUIRE(extended.has_value());
    CHECK(*extended >= *base);
}

TEST_CASE("histograms count per field, skipping missing fields and non-matches") {
    Hierarchy h = bird_hierarchy();
    Lexicon lex{{"bird", {h.id("bird")}}};
    std::vector<TextRecord> records;
    for (int i = 0; i < 3; ++i)
        records.push_back({"r" + std::to_string(i), {{"title", "a bird"}}});
    records.push_back({"r3", {{"title", "no match"}, {"tags", "bird bird"}}});
    auto hist = depth_histogram(h, lex, records);
    const int bird_depth = h.depth(h.id("bird"));
    CHECK(hist.at("title")[bird_depth] == 3);
    CHECK(hist.at("tags")[bird_depth] == 1);
    long title_total = 0;
    for (long c : hist.at("title")) title_total += c;
    CHECK(title_total == 3);  // the non-matching record contributes nothing
}

TEST_CASE("lexicon and record files") {
    Hierarchy h = bird_hierarchy();
    auto dir = std::filesystem::temp_directory_path();
    auto lex_path = (dir / "chillax_lex_test.tsv").string();
    {
        std::ofstream out(lex_path);
        out << "# comment\nBird\tbird\nbunting\tbunting,finch\n";
    }
    Lexicon lex = load_lexicon(h, lex_path);
    CHECK(lex.at("bird") == std::set<NodeId>{h.id("bird")});
    CHECK(lex.at("bunting") == std::set<NodeId>{h.id("bunting"), h.id("finch")});
    std::filesystem::remove(lex_path);

    auto rec_path = (dir / "chillax_rec_test.jsonl").string();
    {
        std::ofstream out(rec_path);
        out << R"({"id":"r0","fields":{"title":"a bird","tags":"bunting"}})" << "\n";
    }
    auto records = load_text_records(rec_path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].fields.at("title") == "a bird");
    std::filesystem::remove(rec_path);

    CHECK_THROWS_AS(load_lexicon(h, "/nonexistent/lex.tsv"), IoError);
}
