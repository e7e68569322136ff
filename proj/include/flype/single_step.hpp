#pragma once

#include <cstdint>
#include <utility>

#include "flype/layer.hpp"
#include "flype/state.hpp"
#include "flype/weight.hpp"

namespace flype {

namespace detail {
inline constexpr uint8_t kTempDigitA = 255;
inline constexpr uint8_t kTempDigitB = 253;
}  // namespace detail

// A new segment crosses the top line: the top point x becomes [a, x, b] with
// (a, b) a fresh matched pair.
inline StateCode apply_T1(const StateCode& s) {
    if (s.empty()) throw StateError("apply_T1: empty state");
    StateCode raw;
    raw.reserve(s.size() + 2);
    raw.push_back(detail::kTempDigitA);
    raw.push_back(s[0]);
    raw.push_back(detail::kTempDigitA);
    raw.insert(raw.end(), s.begin() + 1, s.end());
    return normalize(raw);
}

// Tangency variants: the fresh pair sits wholly above (T1a) or below (T1b)
// the top point.
inline StateCode apply_T1a(const StateCode& s) {
    if (s.empty()) throw StateError("apply_T1a: empty state");
    StateCode raw;
    raw.reserve(s.size() + 2);
    raw.push_back(detail::kTempDigitA);
    raw.push_back(detail::kTempDigitA);
    raw.insert(raw.end(), s.begin(), s.end());
    return normalize(raw);
}

inline StateCode apply_T1b(const StateCode& s) {
    if (s.empty()) throw StateError("apply_T1b: empty state");
    StateCode raw;
    raw.reserve(s.size() + 2);
    raw.push_back(s[0]);
    raw.push_back(detail::kTempDigitA);
    raw.push_back(detail::kTempDigitA);
    raw.insert(raw.end(), s.begin() + 1, s.end());
    return normalize(raw);
}

struct ClosureEvent {
    enum Kind { Bond, Loop, LegPair, LegMigrate } kind = Bond;
    int leg_i = 0, leg_j = 0;  // set for LegPair
};

// Identify the top point with the point at even position q of the first
// block. Partners of the removed points become matched; a delimiter encloses
// the trapped run. Returns the un-normalized token list plus the closure
// event (Loop carries weight n, LegPair records the joined legs).
inline std::pair<StateCode, ClosureEvent> apply_T2(const StateCode& s, int q) {
    if (s.empty()) throw StateError("apply_T2: empty state");
    size_t first_block_end = 0;
    while (first_block_end < s.size() && !is_delimiter(s[first_block_end])) ++first_block_end;
    if (q < 2 || q % 2 != 0 || size_t(q) > first_block_end)
        throw StateError("apply_T2: q must be even and inside the first block");

    size_t pos_b = size_t(q - 1);  // tokens of the first block are points
    uint8_t a = s[0], b = s[pos_b];
    StateCode rest;
    rest.reserve(s.size());
    rest.insert(rest.end(), s.begin() + 1, s.begin() + pos_b);
    rest.push_back(kDelimiter);
    rest.insert(rest.end(), s.begin() + pos_b + 1, s.end());

    ClosureEvent ev;
    auto rewrite = [&rest](uint8_t from, uint8_t to) {
        for (auto& t : rest)
            if (t == from) {
                t = to;
                return;
            }
        throw StateError("apply_T2: partner not found");
    };
    if (is_leg(a) && is_leg(b)) {
        ev.kind = ClosureEvent::LegPair;
        ev.leg_i = leg_index(a);
        ev.leg_j = leg_index(b);
    } else if (is_leg(a)) {
        ev.kind = ClosureEvent::LegMigrate;
        rewrite(b, a);
    } else if (is_leg(b)) {
        ev.kind = ClosureEvent::LegMigrate;
        rewrite(a, b);
    } else if (a == b) {
        ev.kind = ClosureEvent::Loop;
    } else {
        ev.kind = ClosureEvent::Bond;
        rewrite(a, detail::kTempDigitB);
        rewrite(b, detail::kTempDigitB);
    }
    return {std::move(rest), ev};
}

namespace detail {

// All legal single-step descendants of one layer entry, canonicalized.
template <typename Sink>
void single_step_descendants(const StateCode& s, const PairRecord& pairs, const Weight& w,
                             const RunConfig& cfg, Sink&& sink) {
    const int P = cfg.max_order;
    if (w.min_degree() < P) {
        Weight w1 = w.shifted_filtered(0, 1, 0, P);
        if (!w1.empty())
            sink(make_key(canonicalize(apply_T1(s), cfg.canon, cfg.block_order), pairs),
                 std::move(w1));
        if (cfg.tangencies) {
            Weight wa = w.shifted_filtered(0, 0, 1, P);
            if (!wa.empty()) {
                sink(make_key(canonicalize(apply_T1a(s), cfg.canon, cfg.block_order), pairs),
                     Weight(wa));
                sink(make_key(canonicalize(apply_T1b(s), cfg.canon, cfg.block_order), pairs),
                     std::move(wa));
            }
        }
    }
    size_t first_block = 0;
    while (first_block < s.size() && !is_delimiter(s[first_block])) ++first_block;
    for (size_t q = 2; q <= first_block; q += 2) {
        auto [raw, ev] = apply_T2(s, int(q));
        StateCode canon = canonicalize(raw, cfg.canon, cfg.block_order);
        PairRecord next_pairs = pairs;
        Weight wv = w;
        if (ev.kind == ClosureEvent::Loop)
            wv = w.times_n();
        else if (ev.kind == ClosureEvent::LegPair)
            next_pairs = with_pair(pairs, uint8_t(ev.leg_i), uint8_t(ev.leg_j));
        sink(make_key(canon, next_pairs), std::move(wv));
    }
}

// Descendants with degree deltas only, for the state-count profiles.
template <typename Sink>
void single_step_profile_descendants(const StateCode& s, const PairRecord& pairs, int deg,
                                     const RunConfig& cfg, Sink&& sink) {
    if (deg < cfg.max_order) {
        sink(make_key(canonicalize(apply_T1(s), cfg.canon, cfg.block_order), pairs), deg + 1);
        if (cfg.tangencies) {
            sink(make_key(canonicalize(apply_T1a(s), cfg.canon, cfg.block_order), pairs), deg + 1);
            sink(make_key(canonicalize(apply_T1b(s), cfg.canon, cfg.block_order), pairs), deg + 1);
        }
    }
    size_t first_block = 0;
    while (first_block < s.size() && !is_delimiter(s[first_block])) ++first_block;
    for (size_t q = 2; q <= first_block; q += 2) {
        auto [raw, ev] = apply_T2(s, int(q));
        PairRecord np = ev.kind == ClosureEvent::LegPair
                            ? with_pair(pairs, uint8_t(ev.leg_i), uint8_t(ev.leg_j))
                            : pairs;
        sink(make_key(canonicalize(raw, cfg.canon, cfg.block_order), np), deg);
    }
}

}  // namespace detail

}  // namespace flype
