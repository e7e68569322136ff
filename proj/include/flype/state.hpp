#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flype {

// A connectivity state is an ordered token list read top to bottom.
// Byte bands: 0 is a delimiter, 1..191 are pairing digits (each occurring
// exactly twice), 192..250 are external-leg marks. 0xFE separates the state
// from the recorded leg pairing inside composite hash keys.
using StateCode = std::vector<uint8_t>;

inline constexpr uint8_t kDelimiter = 0;
inline constexpr uint8_t kMaxPairDigit = 191;
inline constexpr uint8_t kLegBand = 191;  // Leg(i) = kLegBand + i
inline constexpr uint8_t kMaxLegIndex = 59;
inline constexpr uint8_t kKeySeparator = 0xFE;

struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EncodingOverflow : StateError {
    using StateError::StateError;
};

inline bool is_delimiter(uint8_t t) { return t == kDelimiter; }
inline bool is_pair_digit(uint8_t t) { return t >= 1 && t <= kMaxPairDigit; }
inline bool is_leg(uint8_t t) { return t > kLegBand && t <= kLegBand + kMaxLegIndex; }
inline int leg_index(uint8_t t) { return int(t) - int(kLegBand); }

inline uint8_t make_leg(int i) {
    if (i < 1 || i > kMaxLegIndex) throw EncodingOverflow("leg index out of band");
    return uint8_t(kLegBand + i);
}

// Renumber pairing digits so that each first occurrence, scanning left to
// right, takes the smallest unused positive value. Delimiters and leg marks
// pass through unchanged. Rejects digits that do not occur exactly twice.
inline StateCode normalize(const StateCode& raw) {
    StateCode out(raw.size());
    std::array<uint8_t, 256> seen{};   // old digit -> new digit (0 = unseen)
    std::array<uint8_t, 256> count{};
    uint8_t next = 1;
    for (size_t i = 0; i < raw.size(); ++i) {
        uint8_t t = raw[i];
        if (is_delimiter(t) || is_leg(t)) {
            out[i] = t;
            continue;
        }
        if (++count[t] > 2) throw StateError("normalize: digit appears more than twice");
        if (seen[t] == 0) {
            if (next > kMaxPairDigit) throw EncodingOverflow("normalize: pairing digit band exhausted");
            seen[t] = next++;
        }
        out[i] = seen[t];
    }
    for (size_t i = 0; i < raw.size(); ++i) {
        uint8_t t = raw[i];
        if (!is_delimiter(t) && !is_leg(t) && count[t] != 2)
            throw StateError("normalize: digit appears once");
    }
    return out;
}

// Drop delimiters that lead, trail, or double up.
inline StateCode simplify_delimiters(const StateCode& s) {
    StateCode out;
    out.reserve(s.size());
    for (uint8_t t : s) {
        if (is_delimiter(t) && (out.empty() || is_delimiter(out.back()))) continue;
        out.push_back(t);
    }
    while (!out.empty() && is_delimiter(out.back())) out.pop_back();
    return out;
}

enum class CanonVersion { V1, V2, V3 };
enum class BlockOrder { Ascending, Descending };

struct BlockSpan {
    size_t begin, end;  // token range, delimiters excluded
    size_t size() const { return end - begin; }
};

inline std::vector<BlockSpan> block_spans(const StateCode& s) {
    std::vector<BlockSpan> spans;
    size_t i = 0;
    while (i < s.size()) {
        if (is_delimiter(s[i])) {
            ++i;
            continue;
        }
        size_t b = i;
        while (i < s.size() && !is_delimiter(s[i])) ++i;
        spans.push_back({b, i});
    }
    return spans;
}

namespace detail {

inline StateCode assemble_blocks(const std::vector<StateCode>& blocks) {
    StateCode out;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) out.push_back(kDelimiter);
        out.insert(out.end(), blocks[i].begin(), blocks[i].end());
    }
    return out;
}

// Apply dihedral element (rotation r, optional reflection) to one block.
inline void transform_block(const StateCode& block, size_t rot, bool reflect, StateCode& out) {
    size_t n = block.size();
    out.resize(n);
    for (size_t i = 0; i < n; ++i) out[i] = block[(i + rot) % n];
    if (reflect) std::reverse(out.begin(), out.end());
}

}  // namespace detail

namespace detail {

// Candidate metric of the dihedral sweep: the normal form of the state read
// bottom to top. The sweep walks blocks from the big end and locks each block
// at the arrangement minimizing this metric. Together these reproduce the
// published state-count profile exactly; sweeping top-down on the top-down
// reading identifies slightly more states and breaks the profile.
inline StateCode sweep_metric(const StateCode& cand) {
    StateCode rev(cand.rbegin(), cand.rend());
    return normalize(rev);
}

inline StateCode lock_minimize_pass(const StateCode& input, BlockOrder order) {
    StateCode cur = input;
    auto spans = block_spans(cur);
    StateCode cand = cur, trial, best, arranged;
    for (size_t bi = 0; bi < spans.size(); ++bi) {
        auto sp = order == BlockOrder::Ascending ? spans[spans.size() - 1 - bi] : spans[bi];
        size_t n = sp.size();
        if (n < 2) continue;
        StateCode block(cur.begin() + sp.begin, cur.begin() + sp.end);
        StateCode best_arrangement = block;
        bool have_best = false;
        for (size_t rot = 0; rot < n; ++rot) {
            for (int refl = 0; refl < 2; ++refl) {
                transform_block(block, rot, refl != 0, arranged);
                std::copy(arranged.begin(), arranged.end(), cand.begin() + sp.begin);
                trial = sweep_metric(cand);
                if (!have_best || trial < best) {
                    best = trial;
                    best_arrangement = arranged;
                    have_best = true;
                }
            }
        }
        std::copy(best_arrangement.begin(), best_arrangement.end(), cur.begin() + sp.begin);
        std::copy(best_arrangement.begin(), best_arrangement.end(), cand.begin() + sp.begin);
    }
    return normalize(cur);
}

}  // namespace detail

// Canonical form at each identification level. V1 keeps the normal form,
// V2 adds a stable block sort by size, V3 additionally runs one
// lock-and-minimize sweep over the blocks (see sweep_metric above).
inline StateCode canonicalize(const StateCode& s, CanonVersion v,
                              BlockOrder order = BlockOrder::Ascending) {
    StateCode cur = normalize(simplify_delimiters(s));
    if (v == CanonVersion::V1 || cur.empty()) return cur;

    auto spans = block_spans(cur);
    std::vector<StateCode> blocks;
    blocks.reserve(spans.size());
    for (auto& sp : spans) blocks.emplace_back(cur.begin() + sp.begin, cur.begin() + sp.end);
    std::stable_sort(blocks.begin(), blocks.end(), [&](const StateCode& a, const StateCode& b) {
        return order == BlockOrder::Ascending ? a.size() < b.size() : a.size() > b.size();
    });
    cur = normalize(detail::assemble_blocks(blocks));
    if (v == CanonVersion::V2) return cur;

    return detail::lock_minimize_pass(cur, order);
}

// Canonical states serialize as their own byte string, one token per byte.
inline std::string encode_key(const StateCode& s) {
    for (uint8_t t : s)
        if (!is_delimiter(t) && !is_pair_digit(t) && !is_leg(t))
            throw EncodingOverflow("encode_key: token outside code bands");
    return std::string(s.begin(), s.end());
}

inline StateCode decode_key(const std::string& key) {
    StateCode s(key.begin(), key.end());
    for (uint8_t t : s)
        if (!is_delimiter(t) && !is_pair_digit(t) && !is_leg(t))
            throw StateError("decode_key: byte outside code bands");
    return s;
}

// Textual form used by logs and tests: "1,2,0,1,2", legs as "Xi".
inline std::string to_text(const StateCode& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        if (is_leg(s[i]))
            out += "X" + std::to_string(leg_index(s[i]));
        else
            out += std::to_string(int(s[i]));
    }
    return out;
}

inline StateCode parse_state(const std::string& text) {
    StateCode s;
    size_t i = 0;
    while (i < text.size()) {
        size_t j = text.find(',', i);
        if (j == std::string::npos) j = text.size();
        std::string tok = text.substr(i, j - i);
        if (tok.empty()) throw StateError("parse_state: empty token");
        if (tok[0] == 'X' || tok[0] == 'x')
            s.push_back(make_leg(std::stoi(tok.substr(1))));
        else
            s.push_back(uint8_t(std::stoi(tok)));
        i = j + 1;
    }
    return s;
}

struct ByteHash {
    size_t operator()(const std::vector<uint8_t>& v) const noexcept {
        uint64_t h = 1469598103934665603ull;
        for (uint8_t b : v) {
            h ^= b;
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

}  // namespace flype
