#include <catch2/catch_amalgamated.hpp>

#include "flype/oracles.hpp"
#include "flype/renorm.hpp"
#include "flype/engine.hpp"
#include "reference_counts.hpp"

using namespace flype;

namespace {

struct Pipeline {
    CountTensor tensor;
    Series2 G;
    TwoPointDecomposition dec;
    FourPointFunctions fp;
};

const Pipeline& pipeline() {
    static Pipeline p = [] {
        Pipeline r;
        RunConfig cfg;
        cfg.legs = 1;
        cfg.max_order = 7;
        cfg.tangencies = true;
        r.tensor = enumerate_single_step(cfg);
        r.G = build_series2(r.tensor, 7);
        r.dec = decompose_two_point(r.G);
        r.fp = four_point(r.dec.F1, r.dec.F2, r.G);
        return r;
    }();
    return p;
}

void check_equal_to_degree(const Series2& a, const Series2& b, int deg) {
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) {
            CAPTURE(i, j);
            CHECK(a.at(i, j) == b.at(i, j));
        }
}

}  // namespace

TEST_CASE("two-point split reconstructs G and is symmetric") {
    auto& P = pipeline();
    const int O = P.G.order();
    // g1 F1 + g2 F2 = G - 1 at every computed degree
    Series2 lhs(O);
    for (int i = 1; i <= O; ++i)
        for (int j = 0; i + j <= O; ++j) lhs.at(i, j) += P.dec.F1.at(i - 1, j);
    for (int j = 1; j <= O; ++j)
        for (int i = 0; i + j <= O; ++i) lhs.at(i, j) += P.dec.F2.at(i, j - 1);
    Series2 rhs = P.G;
    rhs.at(0, 0) -= NRat(1);
    check_equal_to_degree(lhs, rhs, O);
    // integrability: dF1/dg2 = dF2/dg1 wherever both sides are computed
    check_equal_to_degree(P.dec.F1.d_dg2(), P.dec.F2.d_dg1(), O - 2);
}

TEST_CASE("two-point split of toy series") {
    Series2 G(4);
    G.at(0, 0) = NRat(1);
    SECTION("G = 1") {
        auto d = decompose_two_point(G);
        check_equal_to_degree(d.F1, Series2(4), 3);
        check_equal_to_degree(d.F2, Series2(4), 3);
    }
    SECTION("G = 1 + c g1^2") {
        G.at(2, 0) = NRat(7);
        auto d = decompose_two_point(G);
        CHECK(d.F1.at(1, 0) == NRat(7));
        CHECK(d.F2.at(0, 0) == NRat());
        CHECK(d.F1.at(0, 0) == NRat());
    }
    SECTION("rejects wrong constant") {
        G.at(0, 0) = NRat(2);
        CHECK_THROWS_AS(decompose_two_point(G), SeriesError);
    }
}

TEST_CASE("four-point inversion round-trips") {
    auto& P = pipeline();
    NRat n = NRat::variable();
    const int D = P.G.order() - 1;
    check_equal_to_degree(n * P.fp.G1 + NRat(2) * P.fp.G2, P.dec.F1, D);
    check_equal_to_degree(NRat(2) * P.fp.G1 + NRat(2) * (n + NRat(1)) * P.fp.G2, P.dec.F2, D);
}

TEST_CASE("four-point functions start with the expected diagrams") {
    auto& P = pipeline();
    CHECK(P.fp.G1.at(0, 0) == NRat());
    CHECK(P.fp.G1.at(1, 0) == NRat(1));  // the single crossing
    CHECK(P.fp.G2.at(0, 0) == NRat(1));  // two bare strands
    CHECK(P.fp.G2.at(1, 0) == NRat(4));  // one kink on either strand
    CHECK(P.fp.Gamma2.at(0, 0) == NRat());
    CHECK(P.fp.Gamma2.at(1, 0) == NRat());
}

TEST_CASE("four-point functions equal the direct four-leg enumeration") {
    auto& P = pipeline();
    RunConfig cfg;
    cfg.legs = 2;
    cfg.max_order = 5;
    cfg.tangencies = true;
    auto tensor2 = enumerate_single_step(cfg);
    PairingClassTable table(2);
    Series2 R1 = build_series2(tensor2, 5, table.representative(1));
    Series2 R2 = build_series2(tensor2, 5, table.representative(2));
    check_equal_to_degree(P.fp.G1, R1, 5);
    check_equal_to_degree(P.fp.G2, R2, 5);
}

TEST_CASE("renormalization reproduces the prime tangle tables") {
    auto& P = pipeline();
    auto sol = renormalize(P.G, P.fp, 6);
    auto& t1 = refdata::prime_tangles_type1();
    auto& t2 = refdata::prime_tangles_type2();
    for (int p = 1; p <= 6; ++p) {
        CAPTURE(p);
        CHECK(sol.table1[size_t(p - 1)] == t1[size_t(p - 1)]);
        CHECK(sol.table2[size_t(p - 1)] == t2[size_t(p - 1)]);
    }
    CHECK(renorm_residuals(P.G, P.fp, sol).all_zero());
    // couplings behave as expected at low order
    CHECK(sol.g1[1] == NRat(1));
    CHECK(sol.g2[0].is_zero());
    CHECK(sol.g2[1].is_zero());
    CHECK(sol.t[0] == NRat(1));
    CHECK(sol.t[1] == NRat(2));
}

TEST_CASE("six-leg tables: connectedness filter against the exhaustive oracle") {
    RunConfig cfg;
    cfg.legs = 3;
    cfg.max_order = 2;
    cfg.tangencies = false;
    auto t3 = enumerate_single_step(cfg);
    cfg.legs = 2;
    auto t2 = enumerate_single_step(cfg);
    cfg.legs = 1;
    auto t1 = enumerate_single_step(cfg);
    auto tables = six_leg_tables(t1, t2, t3, 2);

    cfg.legs = 3;
    auto oracle = dfs_oracle(cfg);
    PairingClassTable table(3);
    auto conn_classes = oracle.connected.class_counts(table);
    for (int id = 1; id <= 5; ++id) {
        CAPTURE(id);
        Series2 expect(2);
        for (auto& [mono, c] : conn_classes[size_t(id - 1)]) {
            if (Mono::degree(mono) > 2) continue;
            std::vector<BigInt> coeffs(size_t(Mono::k(mono)) + 1);
            coeffs.back() = c;
            expect.at(Mono::p1(mono), Mono::p2(mono)) += NRat(NPoly(coeffs));
        }
        check_equal_to_degree(tables.connected[size_t(id - 1)], expect, 2);
    }
}

TEST_CASE("two-leg connected series drops the disconnected square") {
    RunConfig cfg;
    cfg.legs = 2;
    cfg.max_order = 4;
    auto t2 = enumerate_single_step(cfg);
    cfg.legs = 1;
    auto t1 = enumerate_single_step(cfg);
    RawSeriesBank bank(4);
    bank.add_tensor(t1);
    bank.add_tensor(t2);
    PairingClassTable table(2);
    // crossing class: nothing can be pulled apart
    Matching cross = table.representative(1);
    check_equal_to_degree(bank.connected(cross), bank.raw(cross), 4);
    // adjacent class: subtracting G^2 kills the crossingless diagram
    Matching adj = table.representative(2);
    Series2 conn = bank.connected(adj);
    CHECK(conn.at(0, 0) == NRat());
    CHECK(conn.at(1, 0) == NRat());
    // and the exhaustive oracle agrees
    cfg.legs = 2;
    auto oracle = dfs_oracle(cfg);
    auto conn_classes = oracle.connected.class_counts(table);
    Series2 expect(4);
    for (auto& [mono, c] : conn_classes[1]) {
        if (Mono::degree(mono) > 4) continue;
        std::vector<BigInt> coeffs(size_t(Mono::k(mono)) + 1);
        coeffs.back() = c;
        expect.at(Mono::p1(mono), Mono::p2(mono)) += NRat(NPoly(coeffs));
    }
    check_equal_to_degree(conn, expect, 4);
}
