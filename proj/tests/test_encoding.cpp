#include <doctest.h>

#include "chillax/encoding.hpp"
#include "chillax/errors.hpp"
#include "test_support.hpp"

using namespace chillax;
using namespace chillax::test;

TEST_CASE("encode marks the label and its ancestors") {
    Hierarchy h = t1();
    CHECK(encode(h, h.id("a1")) == by_name(h, {{"R", 1}, {"A", 1}, {"a1", 1}}));
    CHECK(encode(h, h.id("A")) == by_name(h, {{"R", 1}, {"A", 1}}));
    CHECK(encode(h, h.id("R")) == by_name(h, {{"R", 1}}));
}

TEST_CASE("original mask trains label, its children and its ancestors' children") {
    Hierarchy h = t1();
    CHECK(mask_original(h, h.id("A")) ==
          by_name(h, {{"A", 1}, {"B", 1}, {"a1", 1}, {"a2", 1}}));
    CHECK(mask_original(h, h.id("a1")) ==
          by_name(h, {{"A", 1}, {"B", 1}, {"a1", 1}, {"a2", 1}}));
    CHECK(mask_original(h, h.id("R")) == by_name(h, {{"R", 1}, {"A", 1}, {"B", 1}}));
}

TEST_CASE("chillax mask leaves the label's children untrained") {
    Hierarchy h = t1();
    CHECK(mask_chillax(h, h.id("A")) == by_name(h, {{"A", 1}, {"B", 1}}));
    CHECK(mask_chillax(h, h.id("a1")) ==
          by_name(h, {{"A", 1}, {"B", 1}, {"a1", 1}, {"a2", 1}}));
    CHECK(mask_chillax(h, h.id("R")) == by_name(h, {{"R", 1}}));
}

TEST_CASE("animal/cat/dog scenario: cat and dog untrained under the chillax mask") {
    Hierarchy h = load_hierarchy("animal\troot\ncat\tanimal\ndog\tanimal");
    NodeId animal = h.id("animal");
    Eigen::VectorXd m = mask_original(h, animal);
    Eigen::VectorXd m_prime = mask_chillax(h, animal);
    Eigen::VectorXd e = encode(h, animal);
    for (const char* child : {"cat", "dog"}) {
        CHECK(m[h.id(child)] == 1.0);       // trained to 0 originally
        CHECK(e[h.id(child)] == 0.0);
        CHECK(m_prime[h.id(child)] == 0.0);  // not trained at all
    }
    CHECK(m_prime[animal] == 1.0);
}

TEST_CASE("unknown label is rejected") {
    Hierarchy h = t1();
    CHECK_THROWS_AS(encode(h, 42), UnknownNode);
    CHECK_THROWS_AS(mask_original(h, -1), UnknownNode);
    CHECK_THROWS_AS(mask_chillax(h, 42), UnknownNode);
}

TEST_CASE("mask algebra on random DAGs") {
    auto rng = make_rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        Hierarchy h = random_dag(rng, 4 + static_cast<int>(uniform_index(rng, 9)));
        for (NodeId y = 0; y < static_cast<NodeId>(h.size()); ++y) {
            Eigen::VectorXd m = mask_original(h, y);
            Eigen::VectorXd mp = mask_chillax(h, y);
            Eigen::VectorXd e = encode(h, y);
            // componentwise m' <= m; difference is children(y) not already
            // selected via an ancestor's child list
            for (Eigen::Index s = 0; s < m.size(); ++s) {
                CHECK(mp[s] <= m[s]);
                bool child_of_y = false;
                for (NodeId c : h.children(y))
                    if (c == s) child_of_y = true;
                if (m[s] != mp[s]) CHECK(child_of_y);
            }
            if (h.is_leaf(y)) CHECK(m == mp);
            CHECK(mp[y] == 1.0);
            // masked positives are exactly y plus its ancestors below the root
            for (Eigen::Index s = 0; s < m.size(); ++s) {
                bool masked_positive = mp[s] == 1.0 && e[s] == 1.0;
                bool on_path = s == y || (e[s] == 1.0 && s != h.root());
                CHECK(masked_positive == on_path);
            }
        }
    }
}
