/**
 * \file graph.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace treeverify {

    KPartiteGraph::KPartiteGraph(FloatT base_score, std::vector<std::vector<Vertex>> sets)
        : base_score_(base_score), sets_(std::move(sets))
    {
        for (auto& set : sets_) {
            if (set.empty())
                throw std::invalid_argument("graph set without vertices");
            std::stable_sort(set.begin(), set.end(),
                    [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
        }
    }

    size_t KPartiteGraph::num_vertices() const
    {
        size_t n = 0;
        for (const auto& set : sets_)
            n += set.size();
        return n;
    }

    const std::vector<Vertex>& KPartiteGraph::set(size_t i) const
    {
        if (i >= sets_.size())
            throw std::invalid_argument("invalid set index");
        return sets_[i];
    }

    FloatT KPartiteGraph::upper_bound() const
    {
        FloatT sum = 0.0;
        for (const auto& set : sets_)
            sum += set.front().value;
        return base_score_ + sum;
    }

    FloatT KPartiteGraph::lower_bound() const
    {
        FloatT sum = 0.0;
        for (const auto& set : sets_)
            sum += set.back().value;
        return base_score_ + sum;
    }

    static size_t vertex_bytes(size_t box_items, size_t origin_items)
    {
        return sizeof(Vertex)
            + box_items * sizeof(Box::Item)
            + origin_items * sizeof(std::pair<int, int>);
    }

    size_t KPartiteGraph::memory_estimate() const
    {
        size_t bytes = 0;
        for (const auto& set : sets_)
            for (const Vertex& v : set)
                bytes += vertex_bytes(v.box.size(), v.origin.size());
        return bytes;
    }

    void KPartiteGraph::swap_sets(std::vector<std::vector<Vertex>> sets)
    {
        if (sets.empty())
            throw std::invalid_argument("graph needs at least one set");
        for (auto& set : sets)
            if (set.empty())
                throw std::invalid_argument("graph set without vertices");
        sets_ = std::move(sets);
    }

    std::ostream& operator<<(std::ostream& s, const KPartiteGraph& g)
    {
        s << "KPartiteGraph(base=" << g.base_score() << ")\n";
        for (size_t i = 0; i < g.num_sets(); ++i) {
            s << "  set " << i << ":\n";
            for (const Vertex& v : g.set(i))
                s << "    " << v.value << ' ' << v.box << '\n';
        }
        return s;
    }

    std::optional<KPartiteGraph> build_graph(const Ensemble& ensemble, const Box& prune)
    {
        std::vector<std::vector<Vertex>> sets;
        sets.reserve(ensemble.num_trees());
        for (int m = 0; m < ensemble.num_trees(); ++m) {
            const Tree& tree = ensemble.tree(m);
            std::vector<Vertex> set;
            for (int l = 0; l < tree.num_leaves(); ++l) {
                Box leaf = tree.leaf_box(l);
                auto box = box_intersect(leaf, prune);
                if (!box.has_value())
                    continue;
                Vertex v;
                v.box = std::move(*box);
                v.value = tree.leaf_value(tree.leaf_node(l));
                v.origin = {{m, l}};
                set.push_back(std::move(v));
            }
            if (set.empty())
                return {}; // no input in `prune` reaches this tree: infeasible
            sets.push_back(std::move(set));
        }
        return KPartiteGraph(ensemble.base_score(), std::move(sets));
    }

    /** Product of two sets, keeping combinations with overlapping boxes. */
    static std::vector<Vertex> merge_sets(const std::vector<Vertex>& a,
            const std::vector<Vertex>& b)
    {
        std::vector<Vertex> out;
        for (const Vertex& va : a) {
            for (const Vertex& vb : b) {
                auto box = box_intersect(va.box, vb.box);
                if (!box.has_value())
                    continue;
                Vertex v;
                v.box = std::move(*box);
                v.value = va.value + vb.value;
                v.origin.reserve(va.origin.size() + vb.origin.size());
                std::merge(va.origin.begin(), va.origin.end(),
                        vb.origin.begin(), vb.origin.end(),
                        std::back_inserter(v.origin));
                out.push_back(std::move(v));
            }
        }
        return out;
    }

    MergeStepResult merge_step(KPartiteGraph& g, const MergeConfig& config)
    {
        if (config.sets_per_step < 2)
            throw std::invalid_argument("sets_per_step must be at least 2");
        size_t k = g.num_sets();
        if (k <= 1)
            return MergeStepResult::DONE;
        size_t l = static_cast<size_t>(config.sets_per_step);

        // Project the footprint of the whole round before materializing any
        // merged set. The estimate is the worst case: every combination of a
        // group survives, each carrying the union of its parents' boxes.
        size_t projected = 0;
        for (size_t i = 0; i < k; i += l) {
            size_t hi = std::min(k, i + l);
            size_t combos = 1;
            size_t box_items = 0, origin_items = 0;
            for (size_t j = i; j < hi; ++j) {
                const auto& set = g.set(j);
                if (combos > (static_cast<size_t>(-1) / 2) / std::max<size_t>(set.size(), 1))
                    return MergeStepResult::MEMORY; // overflow-level blowup
                combos *= set.size();
                size_t max_box = 0, max_origin = 0;
                for (const Vertex& v : set) {
                    max_box = std::max(max_box, v.box.size());
                    max_origin = std::max(max_origin, v.origin.size());
                }
                box_items += max_box;
                origin_items += max_origin;
            }
            projected += combos * vertex_bytes(box_items, origin_items);
        }
        if (g.memory_estimate() + projected > config.memory_budget_bytes)
            return MergeStepResult::MEMORY;

        std::vector<std::vector<Vertex>> merged;
        merged.reserve((k + l - 1) / l);
        for (size_t i = 0; i < k; i += l) {
            size_t hi = std::min(k, i + l);
            std::vector<Vertex> cur = g.set(i);
            for (size_t j = i + 1; j < hi; ++j)
                cur = merge_sets(cur, g.set(j));
            if (cur.empty())
                throw std::runtime_error("merge produced an empty set for a live graph");
            std::stable_sort(cur.begin(), cur.end(),
                    [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
            merged.push_back(std::move(cur));
        }
        g.swap_sets(std::move(merged));
        return MergeStepResult::OK;
    }

    BoundsTrace run_merge(const Ensemble& ensemble, const Box& prune,
            const MergeConfig& config)
    {
        Stopwatch clock;
        BoundsTrace trace;

        auto graph = build_graph(ensemble, prune);
        if (!graph.has_value()) {
            trace.status = Status::INFEASIBLE;
            return trace;
        }

        auto record_clamped = [&](FloatT ub, FloatT lb,
                std::optional<Example> witness = {}) {
            // earlier bounds stay valid, so clamping keeps the trace both
            // monotone and correct in the face of float re-association
            ub = std::min(ub, trace.final_upper());
            lb = std::max(lb, trace.final_lower());
            lb = std::min(lb, ub);
            trace.record(TraceEntry{clock.seconds(), ub, lb, std::move(witness), {}});
        };

        record_clamped(graph->upper_bound(), graph->lower_bound());

        while (graph->num_sets() > 1) {
            if (clock.seconds() >= config.time_budget_s) {
                trace.status = Status::TIMEOUT;
                return trace;
            }
            MergeStepResult r = merge_step(*graph, config);
            if (r == MergeStepResult::MEMORY) {
                trace.status = Status::MEMORY;
                return trace;
            }
            // the final step's bounds are folded into the terminal entry
            // below, keeping the trace at one row per completed step plus one
            if (graph->num_sets() > 1)
                record_clamped(graph->upper_bound(), graph->lower_bound());
        }

        // one set left: every vertex is a full output configuration
        const Vertex& best = graph->set(0).front();
        FloatT value = graph->base_score() + best.value;
        FloatT ub = std::min(value, trace.final_upper());
        record_clamped(ub, ub, extract_witness(best.box, ensemble.num_attributes()));
        trace.status = Status::EXACT;
        return trace;
    }

    static size_t count_cliques_rec(const KPartiteGraph& g, size_t set_i,
            std::vector<const Vertex*>& chosen, size_t count, size_t limit)
    {
        if (set_i == g.num_sets())
            return count + 1;
        for (const Vertex& v : g.set(set_i)) {
            bool ok = true;
            for (const Vertex* c : chosen) {
                if (!boxes_overlap(c->box, v.box)) { ok = false; break; }
            }
            if (!ok)
                continue;
            chosen.push_back(&v);
            count = count_cliques_rec(g, set_i + 1, chosen, count, limit);
            chosen.pop_back();
            if (count > limit)
                throw std::runtime_error("max-clique count exceeds limit");
        }
        return count;
    }

    size_t count_max_cliques(const KPartiteGraph& g, size_t limit)
    {
        std::vector<const Vertex*> chosen;
        return count_cliques_rec(g, 0, chosen, 0, limit);
    }

} // namespace treeverify
