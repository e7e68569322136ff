#pragma once

#include <functional>
#include <vector>

#include "flype/layer.hpp"
#include "flype/state.hpp"
#include "flype/weight.hpp"

namespace flype {
namespace geodesic {

// One geodesic step advances the whole frontier by one unit of distance:
// every point is consumed by exactly one application. Applications are
// tetravalent vertices taking k = 1..4 frontier points (producing 4-k new
// ones) or direct identifications of two points (2 -> 0). Points enclosed
// between the legs of one application seal off into delimited pocket blocks.
//
// Nine vertex shapes arise without tangencies: one 1->3, three 2->2, three
// 3->1 (the out-edges split between the enclosed pockets and the open
// mouth), one 4->0, plus the identification. Tangent wirings of the same
// slot patterns join in when tangencies are enabled.

struct TilingOutcome {
    StateCode tokens;     // raw assembled state, not yet canonical
    int loops = 0;        // closed components (weight n each)
    int crossings = 0;    // vertices with crossing wiring
    int tangencies = 0;   // vertices with tangent wiring
    std::vector<std::pair<int, int>> leg_joins;
};

namespace detail_geo {

struct Slot {
    bool is_in;
    int idx;  // position for ins, new-point id for outs
};

class StepEnumerator {
  public:
    StepEnumerator(const StateCode& s, bool tangencies, int max_vertices,
                   const std::function<void(const TilingOutcome&)>& sink)
        : s_(s), tang_(tangencies), max_v_(max_vertices), sink_(sink) {
        int n = int(s.size());
        partner_.assign(size_t(n), -1);
        std::vector<int> first(256, -1);
        for (int i = 0; i < n; ++i) {
            uint8_t t = s_[size_t(i)];
            if (!is_pair_digit(t)) continue;
            if (first[t] < 0)
                first[t] = i;
            else {
                partner_[size_t(i)] = first[t];
                partner_[size_t(first[t])] = i;
            }
        }
        cont_.assign(size_t(n), -1);
        joinmate_.assign(size_t(n), -1);
        size_t b = 0;
        while (b < s_.size()) {
            if (is_delimiter(s_[b])) {
                ++b;
                continue;
            }
            size_t e = b;
            while (e < s_.size() && !is_delimiter(s_[e])) ++e;
            blocks_.emplace_back(int(b), int(e));
            b = e;
        }
        main_repl_.resize(blocks_.size());
    }

    void run() { block_rec(0); }

  private:
    const StateCode& s_;
    bool tang_;
    int max_v_;
    const std::function<void(const TilingOutcome&)>& sink_;

    std::vector<int> partner_;
    std::vector<std::pair<int, int>> blocks_;
    std::vector<int> cont_;      // position -> new id
    std::vector<int> joinmate_;  // position -> position
    struct NewPt {
        int src = -1;        // continuation source position
        int fresh_mate = -1; // partner id for out-out strands
    };
    std::vector<NewPt> news_;
    std::vector<std::vector<int>> pockets_;
    std::vector<std::vector<int>> main_repl_;
    std::vector<int>* cur_ = nullptr;
    int v_cross_ = 0, v_tang_ = 0;

    void block_rec(size_t bi) {
        if (bi == blocks_.size()) {
            finalize();
            return;
        }
        cur_ = &main_repl_[bi];
        seg(blocks_[bi].first, blocks_[bi].second, [this, bi] { block_rec(bi + 1); });
        cur_ = bi == 0 ? nullptr : &main_repl_[bi - 1];
    }

    // Tile positions [lo, hi); leftmost point starts the next application.
    void seg(int lo, int hi, const std::function<void()>& done) {
        if (lo == hi) {
            done();
            return;
        }
        // identification of lo with a point at odd distance
        for (int j = lo + 1; j < hi; j += 2) {
            joinmate_[size_t(lo)] = j;
            joinmate_[size_t(j)] = lo;
            sealed(lo + 1, j, nullptr, [this, j, hi, &done] { seg(j + 1, hi, done); });
            joinmate_[size_t(lo)] = joinmate_[size_t(j)] = -1;
        }
        if (v_cross_ + v_tang_ >= max_v_) return;
        // vertices with k ins starting at lo
        std::vector<int> ins = {lo};
        vertex_rec(ins, lo, hi, done);
    }

    // Extend the in-set (positions ascending) and fire each completed vertex.
    void vertex_rec(std::vector<int>& ins, int lo, int hi, const std::function<void()>& done) {
        fire_vertex(ins, hi, done);
        if (ins.size() == 4) return;
        for (int nxt = ins.back() + 1; nxt < hi; ++nxt) {
            ins.push_back(nxt);
            vertex_rec(ins, lo, hi, done);
            ins.pop_back();
        }
    }

    void fire_vertex(const std::vector<int>& ins, int hi, const std::function<void()>& done) {
        int k = int(ins.size());
        int outs = 4 - k;
        std::vector<int> dist(size_t(k), 0);  // gaps 0..k-2 are pockets, k-1 is the mouth
        distribute(ins, dist, 0, outs, hi, done);
    }

    void distribute(const std::vector<int>& ins, std::vector<int>& dist, size_t gap, int left,
                    int hi, const std::function<void()>& done) {
        int k = int(ins.size());
        if (gap + 1 == size_t(k)) {
            dist[gap] = left;
            // parity of every pocket must come out even
            for (int m = 0; m + 1 < k; ++m) {
                int interior = ins[size_t(m + 1)] - ins[size_t(m)] - 1;
                if ((interior + dist[size_t(m)]) % 2 != 0) return;
            }
            wirings(ins, dist, hi, done);
            return;
        }
        for (int c = 0; c <= left; ++c) {
            dist[gap] = c;
            distribute(ins, dist, gap + 1, left - c, hi, done);
            dist[gap] = 0;
        }
    }

    void wirings(const std::vector<int>& ins, const std::vector<int>& dist, int hi,
                 const std::function<void()>& done) {
        int k = int(ins.size());
        // allocate new points gap by gap, building the cyclic slot list
        size_t news_mark = news_.size();
        std::vector<Slot> slots;
        std::vector<std::vector<int>> gap_ids(ins.size());
        for (int m = 0; m < k; ++m) {
            slots.push_back({true, ins[size_t(m)]});
            for (int c = 0; c < dist[size_t(m)]; ++c) {
                news_.push_back({});
                gap_ids[size_t(m)].push_back(int(news_.size()) - 1);
                slots.push_back({false, int(news_.size()) - 1});
            }
        }
        static const int kCross[2][2] = {{0, 2}, {1, 3}};
        static const int kTanA[2][2] = {{0, 1}, {2, 3}};
        static const int kTanB[2][2] = {{1, 2}, {3, 0}};
        const int nvariants = tang_ ? 3 : 1;
        for (int v = 0; v < nvariants; ++v) {
            const int(*pairs)[2] = v == 0 ? kCross : (v == 1 ? kTanA : kTanB);
            if (apply_wiring(slots, pairs)) {
                v == 0 ? ++v_cross_ : ++v_tang_;
                if (v_cross_ + v_tang_ <= max_v_)
                    gaps_rec(ins, dist, gap_ids, 0, hi, done);
                v == 0 ? --v_cross_ : --v_tang_;
            }
            undo_wiring(slots, pairs);
        }
        news_.resize(news_mark);
    }

    // Returns false (a no-op) for degenerate wirings joining a point to itself.
    bool apply_wiring(const std::vector<Slot>& slots, const int (*pairs)[2]) {
        for (int w = 0; w < 2; ++w) {
            const Slot &a = slots[size_t(pairs[w][0])], &b = slots[size_t(pairs[w][1])];
            if (a.is_in && b.is_in) {
                joinmate_[size_t(a.idx)] = b.idx;
                joinmate_[size_t(b.idx)] = a.idx;
            } else if (a.is_in) {
                cont_[size_t(a.idx)] = b.idx;
                news_[size_t(b.idx)].src = a.idx;
            } else if (b.is_in) {
                cont_[size_t(b.idx)] = a.idx;
                news_[size_t(a.idx)].src = b.idx;
            } else {
                news_[size_t(a.idx)].fresh_mate = b.idx;
                news_[size_t(b.idx)].fresh_mate = a.idx;
            }
        }
        return true;
    }

    void undo_wiring(const std::vector<Slot>& slots, const int (*pairs)[2]) {
        for (int w = 0; w < 2; ++w) {
            const Slot &a = slots[size_t(pairs[w][0])], &b = slots[size_t(pairs[w][1])];
            if (a.is_in && b.is_in) {
                joinmate_[size_t(a.idx)] = -1;
                joinmate_[size_t(b.idx)] = -1;
            } else if (a.is_in) {
                cont_[size_t(a.idx)] = -1;
                news_[size_t(b.idx)].src = -1;
            } else if (b.is_in) {
                cont_[size_t(b.idx)] = -1;
                news_[size_t(a.idx)].src = -1;
            } else {
                news_[size_t(a.idx)].fresh_mate = -1;
                news_[size_t(b.idx)].fresh_mate = -1;
            }
        }
    }

    // Tile the enclosed interiors one gap at a time, then continue after the
    // last in-point with the mouth outs (reversed) appended to the frontier.
    void gaps_rec(const std::vector<int>& ins, const std::vector<int>& dist,
                  const std::vector<std::vector<int>>& gap_ids, int m, int hi,
                  const std::function<void()>& done) {
        int k = int(ins.size());
        if (m + 1 == k) {
            auto& mouth = gap_ids[size_t(k - 1)];
            for (size_t i = mouth.size(); i-- > 0;) cur_->push_back(mouth[i]);
            seg(ins[size_t(k - 1)] + 1, hi, done);
            cur_->resize(cur_->size() - mouth.size());
            return;
        }
        sealed(ins[size_t(m)] + 1, ins[size_t(m + 1)], &gap_ids[size_t(m)],
               [this, &ins, &dist, &gap_ids, m, hi, &done] {
                   gaps_rec(ins, dist, gap_ids, m + 1, hi, done);
               });
    }

    // Tile [lo, hi) as a sealed pocket; extra out-points (if any) join the
    // pocket after the interior replacement.
    void sealed(int lo, int hi, const std::vector<int>* extra,
                const std::function<void()>& done) {
        auto* saved = cur_;
        std::vector<int> interior;
        cur_ = &interior;
        seg(lo, hi, [this, saved, &interior, extra, &done] {
            size_t total = interior.size() + (extra ? extra->size() : 0);
            if (total % 2 != 0) return;  // odd pockets never empty out
            auto* inner = cur_;
            cur_ = saved;
            if (total == 0) {
                done();
            } else {
                // boundary order: interior replacement first, then the gap
                // outs swept from the far in-strand back, i.e. reversed
                std::vector<int> pocket = interior;
                if (extra) pocket.insert(pocket.end(), extra->rbegin(), extra->rend());
                pockets_.push_back(std::move(pocket));
                done();
                pockets_.pop_back();
            }
            cur_ = inner;
        });
        cur_ = saved;
    }

    // Resolve the strand plumbing of a complete tiling and hand the
    // assembled state to the sink.
    void finalize() {
        TilingOutcome out;
        out.crossings = v_cross_;
        out.tangencies = v_tang_;

        size_t nn = news_.size();
        std::vector<uint8_t> tok(nn, 0);
        std::vector<bool> old_seen(s_.size(), false);
        uint8_t next_digit = 1;

        struct End {
            bool is_leg;
            int id;  // leg index or new-point id
        };
        auto walk = [&](int start_old) -> End {
            int x = start_old;
            while (true) {
                old_seen[size_t(x)] = true;
                if (is_leg(s_[size_t(x)])) return {true, leg_index(s_[size_t(x)])};
                int px = partner_[size_t(x)];
                old_seen[size_t(px)] = true;
                if (cont_[size_t(px)] >= 0) return {false, cont_[size_t(px)]};
                x = joinmate_[size_t(px)];
            }
        };

        for (size_t id = 0; id < nn; ++id) {
            if (tok[id] != 0) continue;
            if (news_[id].fresh_mate >= 0) {
                tok[id] = next_digit;
                tok[size_t(news_[id].fresh_mate)] = next_digit;
                ++next_digit;
                continue;
            }
            End e = walk(news_[id].src);
            if (e.is_leg) {
                tok[id] = make_leg(e.id);
            } else if (e.id == int(id)) {
                throw StateError("geodesic: strand resolved to itself");
            } else {
                tok[id] = next_digit;
                tok[size_t(e.id)] = next_digit;
                ++next_digit;
            }
        }
        // strands with no new endpoint: leg-leg joins and closed loops
        for (size_t x = 0; x < s_.size(); ++x) {
            if (old_seen[x] || !is_leg(s_[x]) || joinmate_[x] < 0) continue;
            int i = leg_index(s_[x]);
            old_seen[x] = true;
            End e = walk(joinmate_[x]);
            if (!e.is_leg) throw StateError("geodesic: leg strand ended on a new point");
            out.leg_joins.emplace_back(i, e.id);
        }
        for (size_t x = 0; x < s_.size(); ++x) {
            if (old_seen[x] || is_delimiter(s_[x])) continue;
            // closed cycle through joins and past pairings
            int c = int(x);
            while (!old_seen[size_t(c)]) {
                old_seen[size_t(c)] = true;
                int pc = partner_[size_t(c)];
                old_seen[size_t(pc)] = true;
                c = joinmate_[size_t(pc)];
            }
            ++out.loops;
        }

        out.tokens.clear();
        bool first = true;
        auto append_block = [&](const std::vector<int>& ids) {
            if (ids.empty()) return;
            if (!first) out.tokens.push_back(kDelimiter);
            first = false;
            for (int id : ids) out.tokens.push_back(tok[size_t(id)]);
        };
        for (auto& repl : main_repl_) append_block(repl);
        for (auto& pocket : pockets_) append_block(pocket);
        sink_(out);
    }
};

}  // namespace detail_geo

// All geodesic descendants of one state: complete tilings of the frontier
// with at most max_vertices new vertices.
inline void slice_descendants(const StateCode& s, bool tangencies, int max_vertices,
                              const std::function<void(const TilingOutcome&)>& sink) {
    detail_geo::StepEnumerator e(s, tangencies, max_vertices, sink);
    e.run();
}

}  // namespace geodesic
}  // namespace flype
