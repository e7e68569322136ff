#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace flype {

// Perfect matching on boundary legs 1..2L, stored as a 0-based partner array.
using Matching = std::vector<uint8_t>;

inline bool is_perfect_matching(const Matching& m) {
    size_t n = m.size();
    if (n == 0 || n % 2) return false;
    for (size_t i = 0; i < n; ++i)
        if (m[i] >= n || m[i] == i || m[m[i]] != i) return false;
    return true;
}

// Number of chord crossings of the matching drawn on a circle. Each crossing
// is seen from both chords, hence the final halving.
inline int crossing_number(const Matching& m) {
    int c = 0;
    size_t n = m.size();
    for (size_t a = 0; a < n; ++a) {
        size_t b = m[a];
        if (b < a) continue;
        for (size_t x = a + 1; x < b; ++x) {
            size_t y = m[x];
            if (y < a || y > b) ++c;
        }
    }
    return c / 2;
}

namespace detail {

inline Matching rotate_matching(const Matching& m) {
    size_t n = m.size();
    Matching r(n);
    for (size_t i = 0; i < n; ++i) r[(i + 1) % n] = uint8_t((m[i] + 1) % n);
    return r;
}

inline Matching reflect_matching(const Matching& m) {
    size_t n = m.size();
    Matching r(n);
    for (size_t i = 0; i < n; ++i) r[n - 1 - i] = uint8_t(n - 1 - m[i]);
    return r;
}

inline void all_matchings_rec(Matching& m, std::vector<bool>& used, size_t n,
                              std::vector<Matching>& out) {
    size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
        out.push_back(m);
        return;
    }
    used[i] = true;
    for (size_t j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = true;
        m[i] = uint8_t(j);
        m[j] = uint8_t(i);
        all_matchings_rec(m, used, n, out);
        used[j] = false;
    }
    used[i] = false;
}

}  // namespace detail

inline std::vector<Matching> all_matchings(int legs_pairs) {
    size_t n = size_t(2 * legs_pairs);
    Matching m(n);
    std::vector<bool> used(n, false);
    std::vector<Matching> out;
    detail::all_matchings_rec(m, used, n, out);
    return out;
}

// Minimum over the dihedral orbit, compared as byte arrays.
inline Matching dihedral_representative(const Matching& m) {
    Matching best = m;
    Matching cur = m;
    for (int refl = 0; refl < 2; ++refl) {
        for (size_t r = 0; r < m.size(); ++r) {
            if (cur < best) best = cur;
            cur = detail::rotate_matching(cur);
        }
        cur = detail::reflect_matching(m);
    }
    return best;
}

struct PairingClass {
    Matching representative;
    int class_id;  // 1-based
};

// Classes are ordered by chord-crossing count descending, then by
// representative bytes. For four legs this puts the crossing pairing
// {(1,3),(2,4)} first, as class 1.
class PairingClassTable {
  public:
    explicit PairingClassTable(int pairs) : pairs_(pairs) {
        std::map<Matching, int> seen;
        std::vector<Matching> reps;
        for (auto& m : all_matchings(pairs)) {
            Matching rep = dihedral_representative(m);
            if (seen.emplace(rep, 0).second) reps.push_back(rep);
        }
        std::stable_sort(reps.begin(), reps.end(), [](const Matching& a, const Matching& b) {
            int ca = crossing_number(a), cb = crossing_number(b);
            if (ca != cb) return ca > cb;
            return a < b;
        });
        reps_ = reps;
        for (size_t i = 0; i < reps_.size(); ++i) id_of_rep_[reps_[i]] = int(i) + 1;
    }

    int num_classes() const { return int(reps_.size()); }
    const Matching& representative(int class_id) const { return reps_.at(size_t(class_id - 1)); }

    PairingClass classify(const Matching& m) const {
        if (!is_perfect_matching(m) || m.size() != size_t(2 * pairs_))
            throw std::invalid_argument("classify: not a perfect matching on 2L points");
        Matching rep = dihedral_representative(m);
        return {rep, id_of_rep_.at(rep)};
    }

    std::vector<Matching> orbit(int class_id) const {
        std::vector<Matching> out;
        for (auto& m : all_matchings(pairs_))
            if (dihedral_representative(m) == reps_.at(size_t(class_id - 1))) out.push_back(m);
        return out;
    }

  private:
    int pairs_;
    std::vector<Matching> reps_;
    std::map<Matching, int> id_of_rep_;
};

inline PairingClass classify_pairing(const Matching& m) {
    if (!is_perfect_matching(m)) throw std::invalid_argument("classify_pairing: malformed matching");
    PairingClassTable table(int(m.size() / 2));
    return table.classify(m);
}

inline int pairing_class_count(int pairs) { return PairingClassTable(pairs).num_classes(); }

}  // namespace flype
