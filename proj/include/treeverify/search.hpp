/**
 * \file search.hpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_SEARCH_HPP
#define TREEVERIFY_SEARCH_HPP

#include "treeverify/constraints.hpp"
#include "treeverify/graph.hpp"

#include <optional>
#include <vector>

namespace treeverify {

    struct SearchConfig {
        /**
         * Heuristic relaxation: states are popped by g + epsilon*h. Values
         * below 1 greedily chase concrete outputs (fast lower bounds); the
         * reported upper bound always uses the unrelaxed f. Raised by
         * epsilon_step (capped at 1) every time a full configuration is
         * recorded.
         */
        FloatT epsilon_start = 0.5;
        FloatT epsilon_step = 0.1;

        double time_budget_s = FLOAT_INF;
        /** Maximum number of state expansions. */
        size_t node_budget = static_cast<size_t>(-1);
        size_t memory_budget_bytes = static_cast<size_t>(4096) << 20;

        enum class TreeOrder {
            IDENTITY,         // trees expanded in ensemble order
            BY_VALUE_SPREAD,  // widest-output trees first
        };
        TreeOrder tree_order = TreeOrder::IDENTITY;
    };

    /** A fully expanded configuration found during search. */
    struct Solution {
        FloatT value = 0.0;               // exact ensemble output (difference
                                          // of outputs for two-instance runs)
        Box box;                          // region attaining value
        Example witness;                  // a concrete point inside box
        FloatT epsilon_at_discovery = 1.0;
        std::optional<Box> box2;          // second instance, when applicable
        std::optional<Example> witness2;
    };

    /**
     * value / epsilon_at_discovery, the relaxation-quality ratio of a
     * positive-valued solution. Nothing when value <= 0, where the ratio
     * carries no information.
     */
    std::optional<FloatT> suboptimality_bound(const Solution& sol);

    /**
     * A partial leaf selection: one graph vertex per already-covered tree,
     * in expansion order. `g` folds the chosen leaf values, `h` adds the best
     * still-compatible leaf of every remaining tree, and `fbound` is the
     * base-score-inclusive g+h folded in expansion order — the value used for
     * reported upper bounds and optimality certificates.
     */
    struct SearchState {
        std::vector<int> vertices; // per depth: vertex index in its set
        Box box;                   // prune region and chosen leaf boxes
        FloatT g = 0.0;
        FloatT h = 0.0;
        FloatT fbound = 0.0;
        int depth = 0;
    };

    /**
     * Everything expansion needs for a single-instance search: the pruned
     * leaf graph, the expansion order over its sets, and the constraint.
     */
    class SearchContext {
    public:
        /**
         * Nothing when no input survives the prune region and constraint
         * prune box (the problem is infeasible).
         */
        static std::optional<SearchContext> create(const Ensemble& ensemble,
                const Box& prune, ConstraintPtr constraint,
                SearchConfig::TreeOrder order = SearchConfig::TreeOrder::IDENTITY);

        const KPartiteGraph& graph() const { return graph_; }
        const std::vector<int>& order() const { return order_; }
        const Box& root_box() const { return root_box_; }
        int num_attributes() const { return num_attributes_; }
        FloatT base_score() const { return graph_.base_score(); }
        int num_trees() const { return static_cast<int>(order_.size()); }

        /** Nothing when the constraint rejects the whole region. */
        std::optional<SearchState> root() const;

        /**
         * All children of `state`: one per leaf of the next tree whose box
         * overlaps the state box and whose joint box the constraint accepts.
         * Children that cannot be completed any more (some remaining tree
         * has no compatible leaf) are dropped.
         */
        std::vector<SearchState> expand(const SearchState& state) const;

        /**
         * Sum over the remaining trees of the best compatible leaf value;
         * -inf when some remaining tree has none. Admissible and consistent.
         */
        FloatT heuristic(const SearchState& state) const;

        /** (tree, leaf) selection of a state, sorted by tree index. */
        std::vector<std::pair<int, int>> selection(const SearchState& state) const;

        /** Exact ensemble output of a full-depth state (bit-equal to eval). */
        FloatT exact_value(const SearchState& state) const;

    private:
        SearchContext(KPartiteGraph graph, Box root_box, ConstraintPtr constraint,
                int num_attributes, SearchConfig::TreeOrder order);

        KPartiteGraph graph_;
        Box root_box_;
        ConstraintPtr constraint_;
        int num_attributes_;
        std::vector<int> order_;
    };

    /** State of a search relating two instances; see PairContext. */
    struct PairState {
        std::vector<int> vertices1, vertices2;
        Box box1, box2;
        FloatT g1 = 0.0, g2 = 0.0;
        FloatT h1 = 0.0, h2 = 0.0;   // min-completion / max-completion sums
        FloatT fb1 = 0.0, fb2 = 0.0; // folded per-instance bound values
        int depth1 = 0, depth2 = 0;
    };

    /**
     * Two-instance search space: maximizes ensemble2(x2) - ensemble1(x1)
     * subject to a joint constraint over the two boxes. Expansion
     * alternates between the instances, skipping one once all its trees are
     * covered. The first instance uses a min-completion heuristic.
     */
    class PairContext {
    public:
        static std::optional<PairContext> create(const Ensemble& ensemble1,
                const Ensemble& ensemble2, const Box& prune1, const Box& prune2,
                JointConstraintPtr constraint,
                SearchConfig::TreeOrder order = SearchConfig::TreeOrder::IDENTITY);

        std::optional<PairState> root() const;
        std::vector<PairState> expand(const PairState& state) const;

        /** h2 - h1; -inf when the state cannot be completed. */
        FloatT heuristic(const PairState& state) const;
        /** Which instance expand() extends next: 1 or 2. */
        int next_instance(const PairState& state) const;

        FloatT exact_value(const PairState& state) const;
        int num_attributes1() const { return num_attributes1_; }
        int num_attributes2() const { return num_attributes2_; }
        int num_trees1() const { return static_cast<int>(order1_.size()); }
        int num_trees2() const { return static_cast<int>(order2_.size()); }
        const KPartiteGraph& graph1() const { return graph1_; }
        const KPartiteGraph& graph2() const { return graph2_; }

    private:
        PairContext(KPartiteGraph g1, KPartiteGraph g2, Box root1, Box root2,
                JointConstraintPtr constraint, int na1, int na2,
                SearchConfig::TreeOrder order);

        KPartiteGraph graph1_, graph2_;
        Box root1_, root2_;
        JointConstraintPtr constraint_;
        int num_attributes1_, num_attributes2_;
        std::vector<int> order1_, order2_;
    };

    enum class Sense { MAXIMIZE, MINIMIZE };

    struct SearchProblem {
        const Ensemble* ensemble = nullptr;
        Box prune;
        ConstraintPtr constraint; // may be empty
        Sense sense = Sense::MAXIMIZE;
    };

    struct SearchResult {
        BoundsTrace trace;
        std::vector<Solution> solutions; // in discovery order
        size_t num_expansions = 0;

        const Solution* best() const; // nullptr when no solution was found
    };

    /**
     * Anytime best-first search over the leaf graph. The trace holds an
     * entry per bound improvement plus a terminal entry; for MAXIMIZE the
     * witness of an entry attains the lower bound, for MINIMIZE (which runs
     * the same machinery on the negated ensemble) it attains the upper.
     */
    SearchResult run_search(const SearchProblem& problem, const SearchConfig& config);

    struct PairProblem {
        const Ensemble* ensemble1 = nullptr;
        const Ensemble* ensemble2 = nullptr;
        Box prune1, prune2;
        JointConstraintPtr constraint; // may be empty
    };

    /** Maximize ensemble2(x2) - ensemble1(x1) over admitted pairs. */
    SearchResult run_search_two_instance(const PairProblem& problem,
            const SearchConfig& config);

} // namespace treeverify

#endif // TREEVERIFY_SEARCH_HPP
