#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "flype/state.hpp"

using namespace flype;

static StateCode st(const std::string& text) { return parse_state(text); }

TEST_CASE("normalize picks minimal digits by first occurrence") {
    CHECK(normalize(st("13,4,0,13,4")) == st("1,2,0,1,2"));
    CHECK(normalize(StateCode{}) == StateCode{});
    CHECK(normalize(st("2,1,1,2")) == st("1,2,2,1"));
    CHECK(normalize(st("1,2,0,1,2")) == st("1,2,0,1,2"));  // idempotent
}

TEST_CASE("normalize keeps legs and delimiters") {
    CHECK(normalize(st("X1,7,7,X2")) == st("X1,1,1,X2"));
    CHECK(to_text(normalize(st("X2,5,X1,5"))) == "X2,1,X1,1");
}

TEST_CASE("normalize rejects malformed matchings") {
    CHECK_THROWS_AS(normalize(st("1,1,1,2,2")), StateError);
    CHECK_THROWS_AS(normalize(st("1,2,2")), StateError);
}

TEST_CASE("simplify_delimiters") {
    CHECK(simplify_delimiters(st("0,1,1,0,0,2,2,0")) == st("1,1,0,2,2"));
    CHECK(simplify_delimiters(st("1,1")) == st("1,1"));
    CHECK(simplify_delimiters(st("1,2,1,2,0")) == st("1,2,1,2"));
    CHECK(simplify_delimiters(StateCode{}) == StateCode{});
}

TEST_CASE("canonicalize V1 is normal form") {
    CHECK(canonicalize(st("1,2,1,2,0,3,3"), CanonVersion::V1) == st("1,2,1,2,0,3,3"));
}

TEST_CASE("canonicalize V2 sorts blocks by size, stable") {
    CHECK(canonicalize(st("1,2,1,2,0,3,3"), CanonVersion::V2) == st("1,1,0,2,3,2,3"));
    // descending puts the big block first
    CHECK(canonicalize(st("1,1,0,2,3,2,3"), CanonVersion::V2, BlockOrder::Descending) ==
          st("1,2,1,2,0,3,3"));
    // equal sizes keep input order
    CHECK(canonicalize(st("1,2,0,1,2"), CanonVersion::V2) == st("1,2,0,1,2"));
}

TEST_CASE("canonicalize V3 minimizes blocks over dihedral moves") {
    CHECK(canonicalize(st("1,2,2,1"), CanonVersion::V3) == st("1,1,2,2"));
    CHECK(canonicalize(st("1,1"), CanonVersion::V3) == st("1,1"));
    // the two-block states that merge under V3
    CHECK(canonicalize(st("1,2,0,1,3,2,3"), CanonVersion::V3) ==
          canonicalize(st("1,2,1,3,0,2,3"), CanonVersion::V3));
}

TEST_CASE("canonicalize V1 and V2 are idempotent on random states") {
    std::mt19937 rng(42);
    for (int iter = 0; iter < 200; ++iter) {
        int pairs = 1 + int(rng() % 5);
        StateCode raw;
        for (int d = 1; d <= pairs; ++d) {
            raw.push_back(uint8_t(d));
            raw.push_back(uint8_t(d));
        }
        std::shuffle(raw.begin(), raw.end(), rng);
        for (size_t i = 1; i + 1 < raw.size(); i += 2)
            if (rng() % 3 == 0) raw.insert(raw.begin() + long(i), kDelimiter);
        for (auto v : {CanonVersion::V1, CanonVersion::V2}) {
            StateCode c = canonicalize(raw, v);
            CHECK(canonicalize(c, v) == c);
        }
    }
}

TEST_CASE("V3 maps a whole dihedral orbit to one code") {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        int pairs = 2 + int(rng() % 3);
        StateCode raw;
        for (int d = 1; d <= pairs; ++d) {
            raw.push_back(uint8_t(d));
            raw.push_back(uint8_t(d));
        }
        std::shuffle(raw.begin(), raw.end(), rng);
        StateCode canon = canonicalize(raw, CanonVersion::V3);
        // every rotation/reflection of the single block lands on the same code
        for (size_t rot = 0; rot < raw.size(); ++rot) {
            StateCode r;
            for (size_t i = 0; i < raw.size(); ++i) r.push_back(raw[(i + rot) % raw.size()]);
            CHECK(canonicalize(r, CanonVersion::V3) == canon);
            std::reverse(r.begin(), r.end());
            CHECK(canonicalize(r, CanonVersion::V3) == canon);
        }
    }
}

TEST_CASE("encode_key round-trips and is injective on distinct states") {
    std::set<std::string> keys;
    std::vector<StateCode> states = {st("1,2,0,1,2"), st("1,2,1,2"), st("1,1,2,2"),
                                     st("X1,1,1,X2"), StateCode{}};
    for (auto& s : states) {
        std::string k = encode_key(s);
        CHECK(decode_key(k) == s);
        CHECK(keys.insert(k).second);
    }
    CHECK(encode_key(st("1,2,0,1,2")) == std::string("\x01\x02\x00\x01\x02", 5));
}

TEST_CASE("text round-trip") {
    for (auto* t : {"1,2,0,1,2", "X1,1,1,X2", "1,1"}) CHECK(to_text(parse_state(t)) == t);
}
