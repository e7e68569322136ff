#pragma once

#include <functional>
#include <thread>
#include <vector>

#include "flype/geodesic.hpp"
#include "flype/layer.hpp"
#include "flype/single_step.hpp"
#include "flype/weight.hpp"

namespace flype {

namespace detail {

template <typename Sink>
void generate_descendants(const StateCode& s, const PairRecord& pairs, const Weight& w,
                          const RunConfig& cfg, Sink&& sink) {
    if (cfg.engine == EngineKind::SingleStep) {
        single_step_descendants(s, pairs, w, cfg, std::forward<Sink>(sink));
        return;
    }
    int budget = cfg.max_order - w.min_degree();
    geodesic::slice_descendants(
        s, cfg.tangencies, budget, [&](const geodesic::TilingOutcome& out) {
            Weight wv =
                w.shifted_filtered(out.loops, out.crossings, out.tangencies, cfg.max_order);
            if (wv.empty()) return;
            PairRecord np = pairs;
            for (auto [i, j] : out.leg_joins) np = with_pair(np, uint8_t(i), uint8_t(j));
            sink(make_key(canonicalize(out.tokens, cfg.canon, cfg.block_order), np),
                 std::move(wv));
        });
}

template <typename Sink>
void generate_profile_descendants(const StateCode& s, const PairRecord& pairs, int deg,
                                  const RunConfig& cfg, Sink&& sink) {
    if (cfg.engine == EngineKind::SingleStep) {
        single_step_profile_descendants(s, pairs, deg, cfg, std::forward<Sink>(sink));
        return;
    }
    geodesic::slice_descendants(
        s, cfg.tangencies, cfg.max_order - deg, [&](const geodesic::TilingOutcome& out) {
            PairRecord np = pairs;
            for (auto [i, j] : out.leg_joins) np = with_pair(np, uint8_t(i), uint8_t(j));
            sink(make_key(canonicalize(out.tokens, cfg.canon, cfg.block_order), np),
                 deg + out.crossings + out.tangencies);
        });
}

}  // namespace detail

// One transfer step: all descendants of every state, merged by canonical key.
// The empty state flows into the result like any other and is collected by
// the caller. Threaded runs produce identical content for any schedule.
inline Layer evolve(const Layer& layer, const RunConfig& cfg) {
    std::vector<const std::pair<const LayerKey, Weight>*> entries;
    entries.reserve(layer.size());
    for (auto& e : layer) entries.push_back(&e);

    int nthreads = cfg.threads;
    if (nthreads > 1 && entries.size() < 64) nthreads = 1;

    auto work = [&](size_t begin, size_t end, Layer& out) {
        StateCode state;
        PairRecord pairs;
        for (size_t i = begin; i < end; ++i) {
            split_key(entries[i]->first, state, pairs);
            if (state.empty()) continue;  // completed diagrams have no descendants
            detail::generate_descendants(state, pairs, entries[i]->second, cfg,
                                         [&out](LayerKey key, Weight w) {
                                             auto it = out.find(key);
                                             if (it == out.end())
                                                 out.emplace(std::move(key), std::move(w));
                                             else
                                                 it->second.add(w);
                                         });
        }
    };

    if (nthreads == 1) {
        Layer next;
        work(0, entries.size(), next);
        return next;
    }
    std::vector<Layer> partial(static_cast<size_t>(nthreads));
    std::vector<std::thread> threads;
    size_t chunk = (entries.size() + size_t(nthreads) - 1) / size_t(nthreads);
    for (int t = 0; t < nthreads; ++t) {
        size_t b = size_t(t) * chunk, e = std::min(entries.size(), b + chunk);
        threads.emplace_back(work, b, e, std::ref(partial[size_t(t)]));
    }
    for (auto& th : threads) th.join();
    Layer next = std::move(partial[0]);
    for (size_t t = 1; t < partial.size(); ++t)
        for (auto& [k, w] : partial[t]) {
            auto it = next.find(k);
            if (it == next.end())
                next.emplace(k, std::move(w));
            else
                it->second.add(w);
        }
    return next;
}

struct RunResult {
    CountTensor tensor;
    std::vector<size_t> layer_sizes;  // per step, empty state included
    size_t max_states = 0;
};

namespace detail {

// Pull completed diagrams out of the layer and accumulate them per matching.
inline void collect_empties(Layer& layer, const RunConfig& cfg, CountTensor& tensor) {
    StateCode state;
    PairRecord pairs;
    for (auto it = layer.begin(); it != layer.end();) {
        split_key(it->first, state, pairs);
        if (!state.empty()) {
            ++it;
            continue;
        }
        Matching m = cfg.legs == 1 ? Matching{} : record_to_matching(pairs, cfg.legs);
        tensor.accumulate(m, it->second);
        it = layer.erase(it);
    }
}

// Every two-leg completion closes the external pair once; peel that factor.
inline void divide_by_n(CountTensor& tensor) {
    for (auto& [m, counts] : tensor.by_matching) {
        std::map<uint32_t, BigInt> shifted;
        for (auto& [mono, c] : counts) {
            if (Mono::k(mono) < 1) throw std::logic_error("divide_by_n: term without n factor");
            shifted[Mono::pack(Mono::k(mono) - 1, Mono::p1(mono), Mono::p2(mono))] = c;
        }
        counts = std::move(shifted);
    }
}

}  // namespace detail

// Step callback invoked after each evolve with (step index, layer) before
// empties are removed; used for checkpointing.
using StepHook = std::function<void(int step, const Layer& layer, const CountTensor& tensor)>;

inline RunResult run_engine(const RunConfig& cfg, const StepHook& hook = {}, Layer start = {},
                            int start_step = 0, CountTensor start_tensor = {}) {
    cfg.validate();
    RunResult res;
    res.tensor = std::move(start_tensor);
    res.tensor.legs = cfg.legs;
    res.tensor.max_order = cfg.max_order;
    res.tensor.tangencies = cfg.tangencies;

    Layer layer = start.empty() && start_step == 0 ? initial_layer(cfg) : std::move(start);
    int step = start_step;
    res.layer_sizes.assign(size_t(step) + 1, 0);
    res.layer_sizes[size_t(step)] = layer.size();
    res.max_states = layer.size();

    const int max_steps = 2 * cfg.max_order + cfg.legs;
    while (!layer.empty() && step < max_steps) {
        layer = evolve(layer, cfg);
        ++step;
        res.layer_sizes.push_back(layer.size());
        res.max_states = std::max(res.max_states, layer.size());
        if (hook) hook(step, layer, res.tensor);
        detail::collect_empties(layer, cfg, res.tensor);
    }
    if (!layer.empty()) throw std::logic_error("run_engine: states survived past the step bound");
    if (cfg.legs == 1) detail::divide_by_n(res.tensor);
    return res;
}

inline CountTensor enumerate_counts(const RunConfig& cfg) { return run_engine(cfg).tensor; }

// State-count profile: the weighted run's layer sizes, computed without
// weights. Viability only needs each key's minimal vertex degree.
inline RunResult profile_run(const RunConfig& cfg) {
    cfg.validate();
    RunResult res;
    ProfileLayer layer;
    for (auto& [k, w] : initial_layer(cfg)) layer.emplace(k, 0);
    res.layer_sizes.push_back(layer.size());
    res.max_states = layer.size();

    const int max_steps = 2 * cfg.max_order + cfg.legs;
    int step = 0;
    StateCode state;
    PairRecord pairs;
    while (!layer.empty() && step < max_steps) {
        ProfileLayer next;
        auto merge = [&next](LayerKey k, int d) {
            auto it = next.find(k);
            if (it == next.end())
                next.emplace(std::move(k), d);
            else
                it->second = std::min(it->second, d);
        };
        for (auto& [key, deg] : layer) {
            split_key(key, state, pairs);
            if (state.empty()) continue;
            detail::generate_profile_descendants(state, pairs, deg, cfg, merge);
        }
        ++step;
        res.layer_sizes.push_back(next.size());
        res.max_states = std::max(res.max_states, next.size());
        for (auto it = next.begin(); it != next.end();) {
            split_key(it->first, state, pairs);
            it = state.empty() ? next.erase(it) : ++it;
        }
        layer = std::move(next);
    }
    return res;
}

// Single-step entry points used throughout the tests.
inline RunResult run_single_step(const RunConfig& cfg, const StepHook& hook = {},
                                 Layer start = {}, int start_step = 0,
                                 CountTensor start_tensor = {}) {
    RunConfig c = cfg;
    c.engine = EngineKind::SingleStep;
    return run_engine(c, hook, std::move(start), start_step, std::move(start_tensor));
}

inline CountTensor enumerate_single_step(const RunConfig& cfg) { return run_single_step(cfg).tensor; }

inline RunResult profile_single_step(const RunConfig& cfg) {
    RunConfig c = cfg;
    c.engine = EngineKind::SingleStep;
    return profile_run(c);
}

}  // namespace flype
