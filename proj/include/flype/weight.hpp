#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "flype/bigint.hpp"
#include "flype/pairing.hpp"

namespace flype {

// Monomial n^k g1^p1 g2^p2 packed into 10-bit fields.
struct Mono {
    static constexpr uint32_t kFieldMax = 1023;

    static uint32_t pack(int k, int p1, int p2) {
        if (k < 0 || p1 < 0 || p2 < 0 || k > int(kFieldMax) || p1 > int(kFieldMax) ||
            p2 > int(kFieldMax))
            throw std::overflow_error("Mono: exponent out of range");
        return (uint32_t(k) << 20) | (uint32_t(p1) << 10) | uint32_t(p2);
    }
    static int k(uint32_t m) { return int(m >> 20); }
    static int p1(uint32_t m) { return int((m >> 10) & kFieldMax); }
    static int p2(uint32_t m) { return int(m & kFieldMax); }
    static int degree(uint32_t m) { return p1(m) + p2(m); }
};

// Sparse exact tally over monomials, kept sorted by packed value.
class Weight {
  public:
    using Term = std::pair<uint32_t, BigInt>;

    Weight() = default;
    static Weight unit() {
        Weight w;
        w.terms_.emplace_back(Mono::pack(0, 0, 0), 1);
        return w;
    }

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    void add_term(uint32_t mono, const BigInt& c) {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), mono,
                                   [](const Term& t, uint32_t m) { return t.first < m; });
        if (it != terms_.end() && it->first == mono)
            it->second += c;
        else
            terms_.insert(it, {mono, c});
    }

    void add(const Weight& o) {
        if (o.empty()) return;
        if (empty()) {
            terms_ = o.terms_;
            return;
        }
        std::vector<Term> merged;
        merged.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            if (terms_[i].first < o.terms_[j].first)
                merged.push_back(std::move(terms_[i++]));
            else if (terms_[i].first > o.terms_[j].first)
                merged.push_back(o.terms_[j++]);
            else {
                merged.emplace_back(terms_[i].first, terms_[i].second + o.terms_[j].second);
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) merged.push_back(std::move(terms_[i]));
        for (; j < o.terms_.size(); ++j) merged.push_back(o.terms_[j]);
        terms_ = std::move(merged);
    }

    // Terms with p1+p2 <= max_total, shifted by (dk, dp1, dp2). Shifting by a
    // monomial keeps the packed ordering, so the result stays sorted.
    Weight shifted_filtered(int dk, int dp1, int dp2, int max_total) const {
        Weight out;
        out.terms_.reserve(terms_.size());
        uint32_t shift = Mono::pack(dk, dp1, dp2);
        for (auto& [m, c] : terms_) {
            if (Mono::degree(m) + dp1 + dp2 > max_total) continue;
            out.terms_.emplace_back(m + shift, c);
        }
        return out;
    }

    Weight times_n(int dk = 1) const { return shifted_filtered(dk, 0, 0, int(Mono::kFieldMax)); }

    int min_degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) {
            int deg = Mono::degree(m);
            if (d < 0 || deg < d) d = deg;
        }
        return d;
    }

    bool operator==(const Weight& o) const { return terms_ == o.terms_; }

  private:
    std::vector<Term> terms_;
};

// Exact counts a^{(pi)}_{k,p1,p2}, held per completion matching so that the
// dihedral-orbit equality can be checked before aggregating per class.
struct CountTensor {
    int legs = 1;
    int max_order = 0;
    bool tangencies = false;
    std::map<Matching, std::map<uint32_t, BigInt>> by_matching;

    void accumulate(const Matching& m, const Weight& w) {
        auto& slot = by_matching[m];
        for (auto& [mono, c] : w.terms()) slot[mono] += c;
    }

    const std::map<uint32_t, BigInt>* matching_counts(const Matching& m) const {
        auto it = by_matching.find(m);
        return it == by_matching.end() ? nullptr : &it->second;
    }

    BigInt coeff(const Matching& m, int k, int p1, int p2) const {
        auto it = by_matching.find(m);
        if (it == by_matching.end()) return 0;
        auto jt = it->second.find(Mono::pack(k, p1, p2));
        return jt == it->second.end() ? BigInt(0) : jt->second;
    }

    // Two-leg accessors (single empty matching key).
    BigInt a(int k, int p1, int p2 = 0) const { return coeff(Matching{}, k, p1, p2); }

    // Rows of the no-tangency table: row p lists k = 0.. up to the last nonzero.
    std::vector<std::vector<BigInt>> rows_p2zero(const Matching& m = {}) const {
        std::vector<std::vector<BigInt>> rows(size_t(max_order) + 1);
        auto it = by_matching.find(m);
        if (it == by_matching.end()) return rows;
        for (auto& [mono, c] : it->second) {
            if (Mono::p2(mono) != 0 || c == 0) continue;
            int p = Mono::p1(mono), k = Mono::k(mono);
            if (p > max_order) continue;
            auto& row = rows[size_t(p)];
            if (int(row.size()) <= k) row.resize(size_t(k) + 1);
            row[size_t(k)] = c;
        }
        return rows;
    }

    bool operator==(const CountTensor& o) const {
        if (legs != o.legs) return false;
        auto nonzero = [](const std::map<Matching, std::map<uint32_t, BigInt>>& bm) {
            std::map<Matching, std::map<uint32_t, BigInt>> out;
            for (auto& [m, counts] : bm) {
                std::map<uint32_t, BigInt> c;
                for (auto& [mono, v] : counts)
                    if (v != 0) c[mono] = v;
                if (!c.empty()) out[m] = c;
            }
            return out;
        };
        return nonzero(by_matching) == nonzero(o.by_matching);
    }

    // Per-class counts; verifies all matchings within an orbit carry equal
    // tallies, then reports the representative's value.
    std::vector<std::map<uint32_t, BigInt>> class_counts(const PairingClassTable& table) const {
        std::vector<std::map<uint32_t, BigInt>> out(size_t(table.num_classes()));
        for (int id = 1; id <= table.num_classes(); ++id) {
            auto members = table.orbit(id);
            const std::map<uint32_t, BigInt>* first = nullptr;
            for (auto& m : members) {
                auto it = by_matching.find(m);
                static const std::map<uint32_t, BigInt> kEmpty;
                const auto& counts = (it == by_matching.end()) ? kEmpty : it->second;
                if (!first) {
                    out[size_t(id - 1)] = counts;
                    first = &out[size_t(id - 1)];
                } else if (counts != *first) {
                    throw std::logic_error("class_counts: orbit members disagree");
                }
            }
        }
        return out;
    }
};

}  // namespace flype
