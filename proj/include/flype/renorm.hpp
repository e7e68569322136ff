#pragma once

#include <map>
#include <optional>
#include <vector>

#include "flype/pairing.hpp"
#include "flype/series.hpp"
#include "flype/weight.hpp"

namespace flype {

// Generating function of one completion-matching slot of a tensor:
// sum over (k, p1, p2) of a_{k,p1,p2} n^k g1^p1 g2^p2, total degree <= order.
inline Series2 build_series2(const CountTensor& tensor, int order, const Matching& m = {}) {
    if (order > tensor.max_order)
        throw SeriesError("build_series2: tensor holds fewer orders than requested");
    Series2 G(order);
    auto it = tensor.by_matching.find(m);
    if (it == tensor.by_matching.end()) return G;
    for (auto& [mono, c] : it->second) {
        int p1 = Mono::p1(mono), p2 = Mono::p2(mono), k = Mono::k(mono);
        if (p1 + p2 > order) continue;
        std::vector<BigInt> coeffs(size_t(k) + 1);
        coeffs[size_t(k)] = c;
        G.at(p1, p2) += NRat(NPoly(std::move(coeffs)));
    }
    return G;
}

struct TwoPointDecomposition {
    Series2 F1, F2;
};

// Unique split G = 1 + g1 F1 + g2 F2 with dF1/dg2 = dF2/dg1, via the Euler
// potential whose (p1, p2) coefficient is c_{p1,p2} / (p1 + p2). The F's are
// exact to total degree order-1.
inline TwoPointDecomposition decompose_two_point(const Series2& G) {
    if (!(G.at(0, 0) == NRat(1)))
        throw SeriesError("decompose_two_point: G(0,0) must equal 1");
    Series2 phi(G.order());
    for (int i = 0; i <= G.order(); ++i)
        for (int j = 0; i + j <= G.order(); ++j) {
            if (i + j == 0) continue;
            phi.at(i, j) = G.at(i, j) / NRat(BigInt(i + j));
        }
    return {phi.d_dg1(), phi.d_dg2()};
}

struct FourPointFunctions {
    Series2 G1, G2;          // four-leg functions by boundary type
    Series2 Gamma1, Gamma2;  // tangle functions: Gamma1 = G1, Gamma2 = G2 - G^2
};

// Invert the linear relations tying the marked two-leg functions to the
// four-leg ones. The determinant carries the factor (n-1)(n+2), so this
// works over rational functions; every final count must reduce back to a
// polynomial in n.
inline FourPointFunctions four_point(const Series2& F1, const Series2& F2, const Series2& G) {
    NPoly n = NPoly::variable();
    NRat det((n - NPoly(1)) * (n + NPoly(2)));
    FourPointFunctions out;
    out.G1 = (NRat(1) / det) * ((NRat(n + NPoly(1)) * F1) - F2);
    out.G2 = (NRat(1) / (NRat(2) * det)) * ((NRat(n) * F2) - NRat(2) * F1);
    out.Gamma1 = out.G1;
    out.Gamma2 = out.G2 - G * G;
    return out;
}

namespace detail {

// t^{-legpow} X(g1 / t^2, g2 / t^2) for one-symbol coupling series.
inline Series1 scale_eval(const Series2& X, const Series1& g1, const Series1& g2,
                          const Series1& t, int legpow) {
    Series1 tinv2 = (t * t).inverse();
    Series1 r = X.substitute(g1 * tinv2, g2 * tinv2);
    Series1 tl = Series1::constant(t.order(), NRat(1));
    for (int i = 0; i < legpow; ++i) tl *= t;
    return r * tl.inverse();
}

struct CountertermSet {
    Series1 H1, H2, V2;
};

// The auxiliary chain quantities: X/(1+X) combinations of the evaluated
// tangle functions, split by symmetry, plus the n-divided piece. In the
// third combination the color factor n+1 weights the type-2 function; with
// the weight on type 1 the two-crossing clasp is cancelled away and no
// coupling choice reproduces the known prime counts.
inline CountertermSet counterterms(const Series1& gamma1, const Series1& gamma2) {
    int Q = gamma1.order();
    Series1 one = Series1::constant(Q, NRat(1));
    Series1 g = Series1::identity(Q);
    NPoly n = NPoly::variable();

    auto ratio = [&](const Series1& x) { return x * (one + x).inverse(); };
    Series1 sp = (one - g) * (gamma2 + gamma1) - g;
    Series1 sm = (one + g) * (gamma2 - gamma1) + g;
    Series1 A = ratio(sp);
    Series1 B = ratio(sm);
    NRat half(NPoly(1), NPoly(2));
    CountertermSet cs;
    cs.H2 = half * (A + B);
    cs.H1 = half * (A - B);
    Series1 c = (one - g) * (NRat(n + NPoly(1)) * gamma2 + gamma1) - g;
    cs.V2 = NRat(NPoly(1), n) * (ratio(c) - A);
    return cs;
}

}  // namespace detail

struct RenormSolution {
    Series1 g1, g2, t;       // renormalized couplings as series in g
    Series1 Gamma1, Gamma2;  // prime alternating tangle generating functions
    std::vector<std::vector<BigInt>> table1, table2;  // rows p >= 1, columns k
};

namespace detail {

inline std::vector<std::vector<BigInt>> prime_table(const Series1& s, bool require_nonneg = true) {
    std::vector<std::vector<BigInt>> rows;
    for (int p = 1; p <= s.order(); ++p) {
        NPoly poly = s[p].as_polynomial();
        std::vector<BigInt> row(poly.coeffs());
        if (row.empty()) row.push_back(0);
        if (require_nonneg)
            for (auto& c : row)
                if (c < 0) throw std::logic_error("prime_table: negative count");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

// Solve the coupled renormalization system for g1(n,g), g2(n,g), t(n,g) and
// evaluate the tangle functions at the renormalized point. Requires G of
// total degree >= order + 1 so the four-point data is exact through `order`.
inline RenormSolution renormalize(const Series2& G, const FourPointFunctions& fp, int order) {
    if (order < 1) throw SeriesError("renormalize: order must be >= 1");
    if (G.order() < order + 1)
        throw SeriesError("renormalize: G must carry total degree order+1");
    const int Q = order;
    Series1 g = Series1::identity(Q);

    auto sweep = [&](const std::vector<Series1>& u) {
        const Series1 &g1 = u[0], &g2 = u[1], &t = u[2];
        Series1 gamma1 = detail::scale_eval(fp.Gamma1, g1, g2, t, 2);
        Series1 gamma2 = detail::scale_eval(fp.Gamma2, g1, g2, t, 2);
        auto cs = detail::counterterms(gamma1, gamma2);
        Series1 one = Series1::constant(Q, NRat(1));
        Series1 g1n = g * (one - NRat(2) * cs.H2);
        Series1 g2n = -(g * (cs.H1 + cs.V2));
        Series1 tinv2 = (t * t).inverse();
        Series1 tn = G.substitute(g1n * tinv2, g2n * tinv2);
        return std::vector<Series1>{g1n, g2n, tn};
    };

    auto sol = solve_fixed_point(sweep, {g, Series1(Q), Series1::constant(Q, NRat(1))}, Q);

    RenormSolution out;
    out.g1 = sol[0];
    out.g2 = sol[1];
    out.t = sol[2];
    out.Gamma1 = detail::scale_eval(fp.Gamma1, out.g1, out.g2, out.t, 2);
    out.Gamma2 = detail::scale_eval(fp.Gamma2, out.g1, out.g2, out.t, 2);
    if (!out.Gamma1[0].is_zero() || !out.Gamma2[0].is_zero())
        throw std::logic_error("renormalize: tangle functions must vanish at g = 0");
    out.table1 = detail::prime_table(out.Gamma1);
    out.table2 = detail::prime_table(out.Gamma2);
    return out;
}

// Residuals of the three coupled equations at a claimed solution; all must
// vanish identically to the solve order.
struct RenormResiduals {
    Series1 eq_a, eq_b, eq_c;
    bool all_zero() const {
        auto zero = [](const Series1& s) {
            for (int k = 0; k <= s.order(); ++k)
                if (!s[k].is_zero()) return false;
            return true;
        };
        return zero(eq_a) && zero(eq_b) && zero(eq_c);
    }
};

inline RenormResiduals renorm_residuals(const Series2& G, const FourPointFunctions& fp,
                                        const RenormSolution& sol) {
    int Q = sol.g1.order();
    Series1 one = Series1::constant(Q, NRat(1));
    Series1 g = Series1::identity(Q);
    Series1 gamma1 = detail::scale_eval(fp.Gamma1, sol.g1, sol.g2, sol.t, 2);
    Series1 gamma2 = detail::scale_eval(fp.Gamma2, sol.g1, sol.g2, sol.t, 2);
    auto cs = detail::counterterms(gamma1, gamma2);
    RenormResiduals res;
    res.eq_a = detail::scale_eval(G, sol.g1, sol.g2, sol.t, 1) - one;
    res.eq_b = sol.g1 - g * (one - NRat(2) * cs.H2);
    res.eq_c = sol.g2 + g * (cs.H1 + cs.V2);
    return res;
}

// ---------------------------------------------------------------------------
// Connected correlations over boundary matchings: planarity decomposes every
// raw completion into sub-diagrams on a non-crossing partition of the legs,
// so the connected series follow by Moebius inversion over those partitions.

namespace detail {

inline bool subsets_noncrossing(uint32_t s, uint32_t t, int n) {
    // t must sit inside a single gap of s on the cycle 0..n-1
    int prev_s = -1, first_s = -1;
    std::vector<int> spts;
    for (int i = 0; i < n; ++i)
        if (s >> i & 1) spts.push_back(i);
    if (spts.empty()) return true;
    (void)prev_s;
    (void)first_s;
    int gaps = 0;
    for (size_t a = 0; a < spts.size(); ++a) {
        int lo = spts[a], hi = spts[(a + 1) % spts.size()];
        bool any = false;
        for (int i = (lo + 1) % n; i != (hi + n) % n; i = (i + 1) % n)
            if (t >> i & 1) any = true;
        gaps += any;
    }
    return gaps <= 1;
}

inline Matching induced_matching(const Matching& m, uint32_t legset) {
    std::vector<int> legs;
    for (size_t i = 0; i < m.size(); ++i)
        if (legset >> i & 1) legs.push_back(int(i));
    Matching sub(legs.size(), 0);
    for (size_t a = 0; a < legs.size(); ++a) {
        int p = m[size_t(legs[a])];
        auto it = std::find(legs.begin(), legs.end(), p);
        if (it == legs.end()) throw std::logic_error("induced_matching: legset splits a pair");
        sub[a] = uint8_t(it - legs.begin());
    }
    return sub;
}

inline void pair_partitions(const std::vector<uint32_t>& pair_masks, size_t idx,
                            std::vector<uint32_t>& groups,
                            std::vector<std::vector<uint32_t>>& out) {
    if (idx == pair_masks.size()) {
        out.push_back(groups);
        return;
    }
    const size_t ngroups = groups.size();  // recursion grows the vector
    for (size_t gi = 0; gi < ngroups; ++gi) {
        groups[gi] |= pair_masks[idx];
        pair_partitions(pair_masks, idx + 1, groups, out);
        groups[gi] &= ~pair_masks[idx];
    }
    groups.push_back(pair_masks[idx]);
    pair_partitions(pair_masks, idx + 1, groups, out);
    groups.pop_back();
}

}  // namespace detail

// Per-matching raw series across leg counts, with connected counterparts.
class RawSeriesBank {
  public:
    RawSeriesBank(int order) : order_(order) {}

    void add_tensor(const CountTensor& t) { tensors_[t.legs] = &t; }

    Series2 raw(const Matching& m) const {
        int legs = int(m.size()) / 2;
        auto it = tensors_.find(legs);
        if (it == tensors_.end()) throw std::logic_error("RawSeriesBank: missing tensor");
        return build_series2(*it->second, order_, legs == 1 ? Matching{} : m);
    }

    // Raw minus all splittings into independent sub-diagrams on non-crossing
    // leg groups.
    Series2 connected(const Matching& m) const {
        auto key = m;
        auto found = cache_.find(key);
        if (found != cache_.end()) return found->second;
        int n = int(m.size());
        std::vector<uint32_t> pair_masks;
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > i) pair_masks.push_back((1u << i) | (1u << m[i]));
        Series2 result = raw(m);
        if (pair_masks.size() > 1) {
            std::vector<std::vector<uint32_t>> partitions;
            std::vector<uint32_t> groups;
            detail::pair_partitions(pair_masks, 0, groups, partitions);
            for (auto& parts : partitions) {
                if (parts.size() < 2) continue;
                bool ok = true;
                for (size_t a = 0; a < parts.size() && ok; ++a)
                    for (size_t b = a + 1; b < parts.size() && ok; ++b)
                        ok = detail::subsets_noncrossing(parts[a], parts[b], n) &&
                             detail::subsets_noncrossing(parts[b], parts[a], n);
                if (!ok) continue;
                Series2 prod(order_);
                prod.at(0, 0) = NRat(1);
                for (auto grp : parts) prod = prod * connected(detail::induced_matching(m, grp));
                result -= prod;
            }
        }
        cache_.emplace(std::move(key), result);
        return result;
    }

  private:
    int order_;
    std::map<int, const CountTensor*> tensors_;
    mutable std::map<Matching, Series2> cache_;
};

// Six-leg output: raw and connected class series, plus the exploratory prime
// extrapolation using the two-leg renormalized couplings with the t^{-3}
// scaling. The extrapolation is emitted as-is, flagged unverified.
struct SixLegTables {
    std::vector<Series2> raw;        // one per boundary class
    std::vector<Series2> connected;  // connectedness filter applied
    std::vector<Series1> prime_extrapolated;
};

inline SixLegTables six_leg_tables(const CountTensor& t1, const CountTensor& t2,
                                   const CountTensor& t3, int order,
                                   const RenormSolution* sol = nullptr) {
    RawSeriesBank bank(order);
    bank.add_tensor(t1);
    bank.add_tensor(t2);
    bank.add_tensor(t3);
    PairingClassTable table(3);
    SixLegTables out;
    for (int id = 1; id <= table.num_classes(); ++id) {
        const Matching& rep = table.representative(id);
        out.raw.push_back(bank.raw(rep));
        out.connected.push_back(bank.connected(rep));
        if (sol) {
            int Q = sol->g1.order();
            if (Q > order) throw SeriesError("six_leg_tables: solution order exceeds data");
            Series1 g1 = sol->g1.truncated(Q), g2 = sol->g2.truncated(Q), t = sol->t.truncated(Q);
            Series2 conn = out.connected.back();
            out.prime_extrapolated.push_back(detail::scale_eval(conn, g1, g2, t, 3));
        }
    }
    return out;
}

}  // namespace flype
