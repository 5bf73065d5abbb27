/**
 * \file graph.hpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_GRAPH_HPP
#define TREEVERIFY_GRAPH_HPP

#include "treeverify/bounds.hpp"
#include "treeverify/tree.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>

namespace treeverify {

    /**
     * One vertex of the k-partite graph: a set of mutually compatible leaves,
     * at most one per tree, with the intersection of their boxes and the sum
     * of their values.
     */
    struct Vertex {
        Box box;
        FloatT value = 0.0;
        /** (tree index, leaf index) of the contributing leaves, sorted. */
        std::vector<std::pair<int, int>> origin;
    };

    /**
     * A k-partite graph over the ensemble's leaves: one independent set per
     * tree (or per merged group of trees), one vertex per surviving leaf
     * (group of leaves). Two vertices of different sets are adjacent exactly
     * when their boxes overlap, so the max-cliques taking one vertex from
     * every set are precisely the ensemble's output configurations.
     *
     * Vertices of a set are ordered by non-increasing value so the set
     * maximum is the front and the minimum is the back.
     */
    class KPartiteGraph {
    public:
        KPartiteGraph(FloatT base_score, std::vector<std::vector<Vertex>> sets);

        FloatT base_score() const { return base_score_; }
        size_t num_sets() const { return sets_.size(); }
        size_t num_vertices() const;
        const std::vector<Vertex>& set(size_t i) const;
        const std::vector<std::vector<Vertex>>& sets() const { return sets_; }

        /**
         * base_score plus the fold of the per-set maximum values, in set
         * order. An upper bound on every output configuration value, equal to
         * it for a fully merged graph's best vertex.
         */
        FloatT upper_bound() const;
        /** base_score plus the fold of the per-set minima; a lower bound. */
        FloatT lower_bound() const;

        /** Approximate heap footprint of all vertices, in bytes. */
        size_t memory_estimate() const;

        void swap_sets(std::vector<std::vector<Vertex>> sets);

    private:
        FloatT base_score_;
        std::vector<std::vector<Vertex>> sets_;
    };

    std::ostream& operator<<(std::ostream& s, const KPartiteGraph& g);

    /**
     * Build the graph for `ensemble` restricted to `prune`: a leaf survives
     * when its box overlaps the prune box, and its vertex box is the
     * intersection of the two. Returns nothing when some tree loses every
     * leaf, i.e. no input in `prune` exists at all.
     */
    std::optional<KPartiteGraph> build_graph(const Ensemble& ensemble, const Box& prune);

    struct MergeConfig {
        int sets_per_step = 2;  // L: adjacent sets fused per group and step
        double time_budget_s = FLOAT_INF;
        size_t memory_budget_bytes = static_cast<size_t>(4096) << 20;
    };

    enum class MergeStepResult {
        OK,       // one round of merging happened
        DONE,     // already a single set, nothing to do
        MEMORY,   // projected footprint exceeds the budget; graph unchanged
    };

    /**
     * One merge step: adjacent groups of L sets are each fused into one set
     * whose vertices are the value-sums of compatible vertex combinations
     * (empty combinations are dropped). The projected footprint is estimated
     * before materializing anything; on MEMORY the graph is left unchanged.
     */
    MergeStepResult merge_step(KPartiteGraph& g, const MergeConfig& config);

    /**
     * Repeated merge steps until one set remains (EXACT, the front vertex is
     * the optimum) or a budget runs out. Bounds are recorded after every step
     * and clamped against the previous entry, so the trace is monotone.
     */
    BoundsTrace run_merge(const Ensemble& ensemble, const Box& prune,
            const MergeConfig& config);

    /**
     * Count the max-cliques with one vertex per set, checking pairwise box
     * overlap only. Throws when the count would exceed `limit`.
     */
    size_t count_max_cliques(const KPartiteGraph& g, size_t limit = 10'000'000);

} // namespace treeverify

#endif // TREEVERIFY_GRAPH_HPP
