#include <catch2/catch_amalgamated.hpp>

#include "flype/engine.hpp"
#include "reference_counts.hpp"

using namespace flype;

static StateCode st(const std::string& text) { return parse_state(text); }

TEST_CASE("T1 worked examples") {
    CHECK(apply_T1(st("1,1")) == st("1,2,1,2"));
    CHECK(apply_T1(st("1,2,1,2")) == st("1,2,1,3,2,3"));
    CHECK(apply_T1(st("X1,X2")) == st("1,X1,1,X2"));
    CHECK_THROWS_AS(apply_T1(StateCode{}), StateError);
}

TEST_CASE("tangency insertions") {
    CHECK(apply_T1a(st("1,1")) == st("1,1,2,2"));
    CHECK(apply_T1b(st("1,1")) == st("1,2,2,1"));
}

TEST_CASE("T2 basics") {
    // both descendants of the one-crossing state coincide
    auto [r1, e1] = apply_T2(st("1,2,1,2"), 2);
    CHECK(normalize(simplify_delimiters(r1)) == st("1,1"));
    CHECK(e1.kind == ClosureEvent::Bond);
    auto [r2, e2] = apply_T2(st("1,2,1,2"), 4);
    CHECK(normalize(simplify_delimiters(r2)) == st("1,1"));

    auto [r3, e3] = apply_T2(st("1,1"), 2);
    CHECK(simplify_delimiters(r3).empty());
    CHECK(e3.kind == ClosureEvent::Loop);

    auto [r4, e4] = apply_T2(st("X1,X2"), 2);
    CHECK(simplify_delimiters(r4).empty());
    CHECK(e4.kind == ClosureEvent::LegPair);
    CHECK(e4.leg_i == 1);
    CHECK(e4.leg_j == 2);

    CHECK_THROWS_AS(apply_T2(st("1,2,1,2"), 3), StateError);
    CHECK_THROWS_AS(apply_T2(st("1,2,0,1,2"), 4), StateError);
}

TEST_CASE("transfer trace of the worked six-crossing tangle") {
    // the published sequence of intermediate states, replayed move by move
    StateCode s = st("1,1");
    s = apply_T1(s);
    CHECK(s == st("1,2,1,2"));
    s = apply_T1(s);
    CHECK(s == st("1,2,1,3,2,3"));
    s = apply_T1(s);
    CHECK(s == st("1,2,1,3,2,4,3,4"));
    s = normalize(simplify_delimiters(apply_T2(s, 6).first));
    CHECK(s == st("1,2,3,1,0,3,2"));
    s = apply_T1(s);
    CHECK(s == st("1,2,1,3,4,2,0,4,3"));
    s = normalize(simplify_delimiters(apply_T2(s, 6).first));
    CHECK(s == st("1,1,2,3,0,3,2"));
    s = normalize(simplify_delimiters(apply_T2(s, 2).first));
    CHECK(s == st("1,2,0,2,1"));
    s = normalize(simplify_delimiters(apply_T2(s, 2).first));
    CHECK(s == st("1,1"));
    s = apply_T1(s);
    CHECK(s == st("1,2,1,2"));
    s = apply_T1(s);
    CHECK(s == st("1,2,1,3,2,3"));
    s = normalize(simplify_delimiters(apply_T2(s, 6).first));
    CHECK(s == st("1,2,2,1"));
    s = normalize(simplify_delimiters(apply_T2(s, 2).first));
    CHECK(s == st("1,1"));
}

TEST_CASE("two-leg enumeration reproduces the reference table up to p = 8") {
    RunConfig cfg;
    cfg.legs = 1;
    cfg.max_order = 8;
    auto tensor = enumerate_single_step(cfg);
    auto rows = tensor.rows_p2zero();
    auto& ref = refdata::two_leg_counts();
    for (int p = 0; p <= 8; ++p) {
        CAPTURE(p);
        REQUIRE(rows[size_t(p)].size() == ref[size_t(p)].size());
        CHECK(rows[size_t(p)] == ref[size_t(p)]);
    }
}

TEST_CASE("tangency counts at one vertex match the hand enumeration") {
    RunConfig cfg;
    cfg.legs = 1;
    cfg.max_order = 2;
    cfg.tangencies = true;
    auto tensor = enumerate_single_step(cfg);
    CHECK(tensor.a(0, 0, 1) == 2);
    CHECK(tensor.a(1, 0, 1) == 2);
    CHECK(tensor.a(0, 1, 0) == 2);
    CHECK(tensor.a(0, 0, 0) == 1);
}

TEST_CASE("canonicalization level never changes the counts") {
    for (bool tang : {false, true}) {
        RunConfig cfg;
        cfg.legs = 1;
        cfg.max_order = tang ? 4 : 6;
        cfg.tangencies = tang;
        cfg.canon = CanonVersion::V1;
        auto t1 = enumerate_single_step(cfg);
        cfg.canon = CanonVersion::V2;
        auto t2 = enumerate_single_step(cfg);
        cfg.canon = CanonVersion::V3;
        auto t3 = enumerate_single_step(cfg);
        CHECK(t1 == t2);
        CHECK(t2 == t3);
    }
}

TEST_CASE("state profile matches the published maxima for small p") {
    for (auto& row : refdata::single_step_state_maxima()) {
        int p = int(row[0]);
        if (p > 8) continue;
        RunConfig cfg;
        cfg.legs = 1;
        cfg.max_order = p;
        cfg.canon = CanonVersion::V1;
        CHECK(profile_single_step(cfg).max_states == row[1]);
        cfg.canon = CanonVersion::V2;
        CHECK(profile_single_step(cfg).max_states == row[2]);
        cfg.canon = CanonVersion::V3;
        CHECK(profile_single_step(cfg).max_states == row[3]);
    }
}

TEST_CASE("four legs: one crossing splits by boundary type") {
    RunConfig cfg;
    cfg.legs = 2;
    cfg.max_order = 1;
    auto tensor = enumerate_single_step(cfg);
    PairingClassTable table(2);
    auto classes = tensor.class_counts(table);
    // type 1 (opposite legs): the single crossing
    CHECK(classes[0][Mono::pack(0, 1, 0)] == 1);
    CHECK(classes[0].count(Mono::pack(0, 0, 0)) == 0);
    // type 2 (adjacent legs): the crossingless diagram, and four kinks
    CHECK(classes[1][Mono::pack(0, 0, 0)] == 1);
    CHECK(classes[1][Mono::pack(0, 1, 0)] == 4);
}

TEST_CASE("canonicalize is idempotent on every generated state") {
    RunConfig cfg;
    cfg.legs = 1;
    cfg.max_order = 6;
    cfg.tangencies = true;
    size_t checked = 0;
    run_single_step(cfg, [&](int, const Layer& layer, const CountTensor&) {
        StateCode state;
        PairRecord pairs;
        for (auto& [key, w] : layer) {
            split_key(key, state, pairs);
            for (auto v : {CanonVersion::V1, CanonVersion::V2, CanonVersion::V3}) {
                StateCode c = canonicalize(state, v);
                if (v == cfg.canon) CHECK(c == state);
                CHECK(canonicalize(c, v) == c);
            }
            ++checked;
        }
    });
    CHECK(checked > 500);
}

TEST_CASE("threaded evolution is deterministic") {
    RunConfig cfg;
    cfg.legs = 1;
    cfg.max_order = 6;
    cfg.threads = 1;
    auto t1 = enumerate_single_step(cfg);
    cfg.threads = 4;
    auto t4 = enumerate_single_step(cfg);
    CHECK(t1 == t4);
}

TEST_CASE("initial layer shapes") {
    RunConfig cfg;
    cfg.legs = 1;
    cfg.max_order = 0;
    auto layer = initial_layer(cfg);
    REQUIRE(layer.size() == 1);
    CHECK(layer.begin()->first == LayerKey{1, 1});
    cfg.legs = 0;
    CHECK_THROWS_AS(initial_layer(cfg), std::invalid_argument);
}
