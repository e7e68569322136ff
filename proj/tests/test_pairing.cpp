#include <catch2/catch_amalgamated.hpp>

#include "flype/pairing.hpp"

using namespace flype;

static Matching match(std::initializer_list<std::pair<int, int>> pairs, int n) {
    Matching m(static_cast<size_t>(n), 0);
    for (auto [a, b] : pairs) {
        m[size_t(a - 1)] = uint8_t(b - 1);
        m[size_t(b - 1)] = uint8_t(a - 1);
    }
    return m;
}

TEST_CASE("dihedral orbit counts 1,2,5,17,79") {
    const int expected[] = {1, 2, 5, 17, 79};
    for (int l = 1; l <= 5; ++l) CHECK(pairing_class_count(l) == expected[l - 1]);
}

TEST_CASE("four-leg calibration: crossing pairing is class 1") {
    PairingClassTable table(2);
    CHECK(table.classify(match({{1, 3}, {2, 4}}, 4)).class_id == 1);
    CHECK(table.classify(match({{1, 2}, {3, 4}}, 4)).class_id == 2);
    CHECK(table.classify(match({{1, 4}, {2, 3}}, 4)).class_id == 2);
}

TEST_CASE("six legs: five classes, fifteen matchings") {
    PairingClassTable table(3);
    CHECK(table.num_classes() == 5);
    CHECK(all_matchings(3).size() == 15);
    size_t total = 0;
    for (int id = 1; id <= 5; ++id) total += table.orbit(id).size();
    CHECK(total == 15);
    // class 1 is the triple-crossing pairing, alone in its orbit
    CHECK(table.classify(match({{1, 4}, {2, 5}, {3, 6}}, 6)).class_id == 1);
    CHECK(table.orbit(1).size() == 1);
}

TEST_CASE("crossing_number") {
    CHECK(crossing_number(match({{1, 3}, {2, 4}}, 4)) == 1);
    CHECK(crossing_number(match({{1, 2}, {3, 4}}, 4)) == 0);
    CHECK(crossing_number(match({{1, 4}, {2, 5}, {3, 6}}, 6)) == 3);
}

TEST_CASE("classify_pairing rejects malformed input") {
    Matching bad(3);
    CHECK_THROWS(classify_pairing(bad));
}

TEST_CASE("orbit members classify identically") {
    PairingClassTable table(3);
    for (auto& m : all_matchings(3)) {
        auto pc = table.classify(m);
        CHECK(pc.representative == dihedral_representative(m));
        for (int id = 1; id <= table.num_classes(); ++id) {
            bool in_orbit = false;
            for (auto& o : table.orbit(id)) in_orbit |= (o == m);
            CHECK(in_orbit == (id == pc.class_id));
        }
    }
}
