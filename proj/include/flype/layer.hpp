#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "flype/state.hpp"
#include "flype/weight.hpp"

namespace flype {

enum class EngineKind { SingleStep, Geodesic };

struct RunConfig {
    int legs = 1;
    int max_order = 0;  // cap on p1+p2
    bool tangencies = false;
    CanonVersion canon = CanonVersion::V3;
    BlockOrder block_order = BlockOrder::Ascending;
    EngineKind engine = EngineKind::SingleStep;
    int threads = 1;
    std::string checkpoint_dir;
    bool resume = false;

    void validate() const {
        if (legs < 1) throw std::invalid_argument("RunConfig: legs must be >= 1");
        if (max_order < 0) throw std::invalid_argument("RunConfig: max_order must be >= 0");
        if (threads < 1) throw std::invalid_argument("RunConfig: threads must be >= 1");
    }
};

inline uint64_t config_hash(const RunConfig& c) {
    std::string repr = "legs=" + std::to_string(c.legs) + ";P=" + std::to_string(c.max_order) +
                       ";tang=" + std::to_string(c.tangencies ? 1 : 0) +
                       ";canon=" + std::to_string(int(c.canon)) +
                       ";order=" + std::to_string(int(c.block_order)) +
                       ";engine=" + std::to_string(int(c.engine));
    uint64_t h = 1469598103934665603ull;
    for (char ch : repr) {
        h ^= uint8_t(ch);
        h *= 1099511628211ull;
    }
    return h;
}

// Recorded leg pairings: flat (i, j) byte pairs, i < j, sorted by i.
using PairRecord = std::vector<uint8_t>;

inline PairRecord with_pair(const PairRecord& r, uint8_t i, uint8_t j) {
    if (i > j) std::swap(i, j);
    PairRecord out;
    out.reserve(r.size() + 2);
    size_t k = 0;
    while (k < r.size() && r[k] < i) {
        out.push_back(r[k]);
        out.push_back(r[k + 1]);
        k += 2;
    }
    out.push_back(i);
    out.push_back(j);
    for (; k < r.size(); k += 2) {
        out.push_back(r[k]);
        out.push_back(r[k + 1]);
    }
    return out;
}

inline Matching record_to_matching(const PairRecord& r, int legs) {
    Matching m(size_t(2 * legs));
    std::vector<bool> seen(m.size(), false);
    if (r.size() != m.size()) throw std::logic_error("record_to_matching: incomplete pairing");
    for (size_t k = 0; k < r.size(); k += 2) {
        int a = r[k] - 1, b = r[k + 1] - 1;
        if (a < 0 || b < 0 || a >= int(m.size()) || b >= int(m.size()) || seen[size_t(a)] ||
            seen[size_t(b)])
            throw std::logic_error("record_to_matching: malformed record");
        seen[size_t(a)] = seen[size_t(b)] = true;
        m[size_t(a)] = uint8_t(b);
        m[size_t(b)] = uint8_t(a);
    }
    return m;
}

// Hash key: canonical state bytes, plus the recorded pairing after a
// separator when legs have closed.
using LayerKey = std::vector<uint8_t>;

inline LayerKey make_key(const StateCode& state, const PairRecord& pairs) {
    LayerKey k(state.begin(), state.end());
    if (!pairs.empty()) {
        k.push_back(kKeySeparator);
        k.insert(k.end(), pairs.begin(), pairs.end());
    }
    return k;
}

inline void split_key(const LayerKey& key, StateCode& state, PairRecord& pairs) {
    auto it = std::find(key.begin(), key.end(), kKeySeparator);
    state.assign(key.begin(), it);
    pairs.clear();
    if (it != key.end()) pairs.assign(it + 1, key.end());
}

using Layer = std::unordered_map<LayerKey, Weight, ByteHash>;
using ProfileLayer = std::unordered_map<LayerKey, int, ByteHash>;

inline Layer initial_layer(const RunConfig& cfg) {
    cfg.validate();
    StateCode s;
    if (cfg.legs == 1) {
        s = {1, 1};
    } else {
        for (int i = 1; i <= 2 * cfg.legs; ++i) s.push_back(make_leg(i));
    }
    Layer layer;
    layer.emplace(make_key(s, {}), Weight::unit());
    return layer;
}

}  // namespace flype
