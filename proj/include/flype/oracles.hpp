#pragma once

#include <string>
#include <vector>

#include "flype/bigint.hpp"
#include "flype/layer.hpp"
#include "flype/series.hpp"
#include "flype/weight.hpp"

namespace flype {

// Closed form for the row sums at n = 1: 2 (2p)! / (p! (p+2)!) 3^p.
inline BigInt tutte_count(int p) {
    if (p < 0) throw std::invalid_argument("tutte_count: negative order");
    BigInt num = 2 * factorial(unsigned(2 * p));
    BigInt den = factorial(unsigned(p)) * factorial(unsigned(p + 2));
    BigInt pow3 = 1;
    for (int i = 0; i < p; ++i) pow3 *= 3;
    return exact_div(num * pow3, den);
}

// Last nonzero row entries: the n -> infinity tree limits.
inline BigInt ninf_even(int k) {
    if (k < 0) throw std::invalid_argument("ninf_even: negative index");
    return exact_div(factorial(unsigned(4 * k)),
                     factorial(unsigned(3 * k + 1)) * factorial(unsigned(k)));
}

inline BigInt ninf_odd(int k) {
    if (k < 0) throw std::invalid_argument("ninf_odd: negative index");
    return exact_div(2 * factorial(unsigned(4 * k + 2)),
                     factorial(unsigned(3 * k + 2)) * factorial(unsigned(k)));
}

namespace detail {

inline std::vector<BigInt> integer_coeffs(const Series1& s) {
    std::vector<BigInt> out;
    for (int k = 0; k <= s.order(); ++k) {
        NPoly p = s[k].as_polynomial();
        if (p.degree() > 0) throw std::logic_error("integer_coeffs: coefficient depends on n");
        out.push_back(p.coeff(0));
    }
    return out;
}

}  // namespace detail

// Even/odd tree series: H_even solves H = 1 + x H^4, H_odd = 2 d/dx(x H^3).
// Coefficients reproduce ninf_even / ninf_odd.
inline std::pair<std::vector<BigInt>, std::vector<BigInt>> h_series(int order) {
    Series1 h = Series1::constant(order, NRat(1));
    Series1 x = Series1::identity(order);
    for (int it = 0; it <= order; ++it) h = Series1::constant(order, NRat(1)) + x * h.pow(4);
    Series1 residual = h - (Series1::constant(order, NRat(1)) + x * h.pow(4));
    for (int k = 0; k <= order; ++k)
        if (!residual[k].is_zero()) throw std::logic_error("h_series: functional equation fails");
    Series1 hodd = (x * h.pow(3)).derivative();
    std::vector<BigInt> he = detail::integer_coeffs(h);
    std::vector<BigInt> ho = detail::integer_coeffs(NRat(2) * hodd);
    ho.resize(size_t(order));  // top derivative coefficient is beyond the truncation
    return {he, ho};
}

// Exact n = 2 series from the complete elliptic integrals, modulus convention
// K(k) = Int_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta), fixed by requiring
// a unit constant term. Returns the coefficients of G(2, g, 0).
inline std::vector<BigInt> n2_series(int order) {
    const int N = order + 2;
    Series1 Kn(N), En(N);  // normalized by 2/pi
    Kn[0] = NRat(1);
    En[0] = NRat(1);
    NRat c = NRat(1);
    for (int m = 1; 2 * m <= N; ++m) {
        // c_m = binom(2m, m) / 4^m, added at power k^(2m)
        c = c * NRat(NPoly(BigInt(2 * m - 1)), NPoly(BigInt(2 * m)));
        Kn[2 * m] = c * c;
        En[2 * m] = -(c * c) / NRat(BigInt(2 * m - 1));
    }
    Series1 one = Series1::constant(N, NRat(1));
    Series1 k = Series1::identity(N);
    Series1 g_of_k = (En - (one - k) * Kn) / (NRat(4) * (one + k));
    Series1 k_of_g = g_of_k.reversion();

    Series1 inner = k_of_g * (one + k_of_g).inverse().pow(2);
    Series1 half_g = NRat(NPoly(1), NPoly(2)) * Series1::identity(N);
    Series1 numer = half_g - NRat(NPoly(1), NPoly(8)) * inner;  // = g^2 G(2,g)
    std::vector<BigInt> out;
    for (int p = 0; p <= order; ++p) {
        NPoly coeff = numer[p + 2].as_polynomial();
        if (coeff.degree() > 0) throw std::logic_error("n2_series: non-constant coefficient");
        out.push_back(coeff.coeff(0));
    }
    if (!numer[0].is_zero() || !numer[1].is_zero())
        throw std::logic_error("n2_series: normalization failed");
    return out;
}

// Exhaustive depth-first enumeration over raw transformation sequences with
// a direct linked representation: no normal forms, no state merging.
// Components are tracked explicitly so the connected counts come out too.
struct DfsResult {
    CountTensor raw;
    CountTensor connected;
};

namespace detail {

struct DfsState {
    std::vector<int16_t> seq;  // -1 delimiter, else point id
    std::vector<int16_t> partner;
    std::vector<int8_t> leg;
    std::vector<int16_t> comp;
    std::vector<uint32_t> legmask;  // by component id; kDead when absorbed
    int p1 = 0, p2 = 0, loops = 0;
    PairRecord pairs;

    static constexpr uint32_t kDead = 0xffffffffu;

    int new_point(int16_t partner_id, int8_t leg_id, int16_t comp_id) {
        partner.push_back(partner_id);
        leg.push_back(leg_id);
        comp.push_back(comp_id);
        return int(partner.size()) - 1;
    }

    void unite(int16_t a, int16_t b) {
        if (a == b) return;
        for (auto& ci : comp)
            if (ci == b) ci = a;
        legmask[size_t(a)] |= legmask[size_t(b)];
        legmask[size_t(b)] = kDead;
    }

    void simplify() {
        std::vector<int16_t> out;
        out.reserve(seq.size());
        for (int16_t t : seq) {
            if (t < 0 && (out.empty() || out.back() < 0)) continue;
            out.push_back(t);
        }
        while (!out.empty() && out.back() < 0) out.pop_back();
        seq = std::move(out);
    }

    int alive_components() const {
        int c = 0;
        for (uint32_t m : legmask) c += (m != kDead);
        return c;
    }
};

template <typename OnDone>
void dfs_walk(const DfsState& s, const RunConfig& cfg, const OnDone& done) {
    if (s.seq.empty()) {
        done(s);
        return;
    }
    const int P = cfg.max_order;
    int16_t top = s.seq[0];

    auto spawn_t1 = [&](int variant) {  // 0: crossing, 1: above, 2: below
        DfsState t = s;
        int16_t tc = t.comp[size_t(top)];
        int a = t.new_point(-1, 0, tc);
        int b = t.new_point(int16_t(a), 0, tc);
        t.partner[size_t(a)] = int16_t(b);
        std::vector<int16_t> head;
        if (variant == 0)
            head = {int16_t(a), top, int16_t(b)};
        else if (variant == 1)
            head = {int16_t(a), int16_t(b), top};
        else
            head = {top, int16_t(a), int16_t(b)};
        t.seq.erase(t.seq.begin());
        t.seq.insert(t.seq.begin(), head.begin(), head.end());
        variant == 0 ? ++t.p1 : ++t.p2;
        dfs_walk(t, cfg, done);
    };
    if (s.p1 + s.p2 < P) {
        spawn_t1(0);
        if (cfg.tangencies) {
            spawn_t1(1);
            spawn_t1(2);
        }
    }

    size_t first_block = 0;
    while (first_block < s.seq.size() && s.seq[first_block] >= 0) ++first_block;
    for (size_t q = 2; q <= first_block; q += 2) {
        DfsState t = s;
        size_t pos_b = q - 1;
        int16_t a = t.seq[0], b = t.seq[pos_b];
        t.seq.erase(t.seq.begin() + long(pos_b));
        t.seq.erase(t.seq.begin());
        t.seq.insert(t.seq.begin() + long(pos_b) - 1, int16_t(-1));
        t.simplify();
        bool a_leg = t.leg[size_t(a)] != 0, b_leg = t.leg[size_t(b)] != 0;
        if (a_leg && b_leg) {
            t.pairs = with_pair(t.pairs, uint8_t(t.leg[size_t(a)]), uint8_t(t.leg[size_t(b)]));
        } else if (a_leg || b_leg) {
            int16_t lg = a_leg ? a : b;
            int16_t in = a_leg ? b : a;
            int16_t target = t.partner[size_t(in)];
            t.leg[size_t(target)] = t.leg[size_t(lg)];
            t.partner[size_t(target)] = -1;
        } else if (t.partner[size_t(a)] == b) {
            ++t.loops;
        } else {
            int16_t ra = t.partner[size_t(a)], rb = t.partner[size_t(b)];
            t.partner[size_t(ra)] = rb;
            t.partner[size_t(rb)] = ra;
        }
        t.unite(t.comp[size_t(a)], t.comp[size_t(b)]);
        dfs_walk(t, cfg, done);
    }
}

}  // namespace detail

inline DfsResult dfs_oracle(const RunConfig& cfg) {
    cfg.validate();
    static const int kMaxOrder[] = {7, 6, 5};
    if (cfg.legs > 3 || cfg.max_order > kMaxOrder[cfg.legs - 1])
        throw std::invalid_argument("dfs_oracle: order too large for exhaustive enumeration");

    DfsResult res;
    for (CountTensor* t : {&res.raw, &res.connected}) {
        t->legs = cfg.legs;
        t->max_order = cfg.max_order;
        t->tangencies = cfg.tangencies;
    }

    detail::DfsState init;
    if (cfg.legs == 1) {
        init.legmask.push_back(0b11);
        int a = init.new_point(-1, 0, 0);
        int b = init.new_point(int16_t(a), 0, 0);
        init.partner[size_t(a)] = int16_t(b);
        init.seq = {int16_t(a), int16_t(b)};
    } else {
        for (int i = 1; i <= 2 * cfg.legs; ++i) {
            init.legmask.push_back(1u << (i - 1));
            int id = init.new_point(-1, int8_t(i), int16_t(i - 1));
            init.seq.push_back(int16_t(id));
        }
    }

    detail::dfs_walk(init, cfg, [&](const detail::DfsState& s) {
        Matching m = cfg.legs == 1 ? Matching{} : record_to_matching(s.pairs, cfg.legs);
        int k = cfg.legs == 1 ? s.loops - 1 : s.loops;
        if (k < 0) throw std::logic_error("dfs_oracle: missing external loop");
        Weight w;
        w.add_term(Mono::pack(k, s.p1, s.p2), 1);
        res.raw.accumulate(m, w);
        if (s.alive_components() == 1) res.connected.accumulate(m, w);
    });
    return res;
}

struct OracleReport {
    std::string name;
    bool pass = false;
    std::string detail;
};

}  // namespace flype
