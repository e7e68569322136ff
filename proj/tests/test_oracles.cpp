#include <catch2/catch_amalgamated.hpp>

#include "flype/oracles.hpp"
#include "flype/engine.hpp"
#include "reference_counts.hpp"

using namespace flype;

TEST_CASE("closed-form row sums") {
    CHECK(tutte_count(0) == 1);
    CHECK(tutte_count(2) == 9);
    CHECK(tutte_count(3) == 54);
    auto& ref = refdata::two_leg_counts();
    for (size_t p = 0; p < ref.size(); ++p) {
        BigInt sum = 0;
        for (auto& v : ref[p]) sum += v;
        CHECK(sum == tutte_count(int(p)));
    }
}

TEST_CASE("tree-limit diagonal formulas") {
    CHECK(ninf_even(0) == 1);
    CHECK(ninf_even(2) == 4);
    CHECK(ninf_odd(1) == 12);
    auto& ref = refdata::two_leg_counts();
    for (size_t p = 0; p < ref.size(); ++p) {
        BigInt last = ref[p].back();
        int k = int(p) / 2;
        CHECK(last == (p % 2 == 0 ? ninf_even(k) : ninf_odd(k)));
    }
}

TEST_CASE("tree series solves its functional equation") {
    auto [he, ho] = h_series(9);
    CHECK(he[0] == 1);
    CHECK(he[1] == 1);
    CHECK(he[2] == 4);
    CHECK(he[3] == 22);
    CHECK(ho[0] == 2);
    for (size_t k = 0; k < he.size(); ++k) CHECK(he[k] == ninf_even(int(k)));
    for (size_t k = 0; k < ho.size(); ++k) CHECK(ho[k] == ninf_odd(int(k)));
}

TEST_CASE("elliptic series at n = 2") {
    auto g2 = n2_series(8);
    CHECK(g2[0] == 1);
    CHECK(g2[1] == 2);
    CHECK(g2[2] == 10);
    CHECK(g2[3] == 66);
    auto& ref = refdata::two_leg_counts();
    for (int p = 0; p <= 8; ++p) {
        BigInt expect = 0;
        BigInt pw = 1;
        for (auto& v : ref[size_t(p)]) {
            expect += v * pw;
            pw *= 2;
        }
        CHECK(g2[size_t(p)] == expect);
    }
}

TEST_CASE("exhaustive oracle matches the reference table") {
    RunConfig cfg;
    cfg.legs = 1;
    cfg.max_order = 5;
    auto rows = dfs_oracle(cfg).raw.rows_p2zero();
    auto& ref = refdata::two_leg_counts();
    for (int p = 0; p <= 5; ++p) CHECK(rows[size_t(p)] == ref[size_t(p)]);
    CHECK(rows[5] == std::vector<BigInt>{1796, 1030, 90});
}

TEST_CASE("exhaustive oracle equals the transfer engine") {
    for (int legs : {1, 2, 3}) {
        for (bool tang : {false, true}) {
            RunConfig cfg;
            cfg.legs = legs;
            cfg.max_order = legs == 1 ? 4 : 3;
            cfg.tangencies = tang;
            CAPTURE(legs, tang);
            auto oracle = dfs_oracle(cfg);
            auto engine = enumerate_single_step(cfg);
            CHECK(oracle.raw == engine);
        }
    }
}

TEST_CASE("oracle refuses oversized orders") {
    RunConfig cfg;
    cfg.legs = 1;
    cfg.max_order = 12;
    CHECK_THROWS_AS(dfs_oracle(cfg), std::invalid_argument);
}
