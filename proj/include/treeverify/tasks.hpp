/**
 * \file tasks.hpp
 *
 * Evaluation drivers built on the search and merge engines: targeted
 * adversarial-distance certification, unconstrained stress maximization,
 * reachability-tuned random constraint generation, and trace comparison
 * metrics.
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_TASKS_HPP
#define TREEVERIFY_TASKS_HPP

#include "treeverify/graph.hpp"
#include "treeverify/search.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace treeverify {

    /** Argmax class over per-class scores; ties go to the lowest index. */
    int predict_class(const std::vector<Ensemble>& models, const Example& x);

    /**
     * A targeted adversarial-distance query against a one-vs-all multiclass
     * model: how far from `x` (in the max norm) must a point be moved before
     * the target class outscores the source class?
     */
    struct RobustnessQuery {
        std::vector<Ensemble> models;  // one per class, shared attribute count
        Example x;
        int source_label = 0;          // argmax class of x
        int target_label = 0;
        FloatT delta_start = 20.0;     // first radius probed
        int steps = 10;                // number of probed radii
        bool integer_grid = false;     // attributes only take integer values
    };

    struct RobustnessStep {
        FloatT delta = 0.0;
        FloatT upper = 0.0;      // bound on target-minus-source score in the ball
        bool may_exist = true;   // false: upper < 0 proves the ball is clean
        bool found_witness = false;
    };

    struct RobustnessResult {
        /** Greatest radius proven free of targeted adversarial examples. */
        FloatT delta_lower = 0.0;
        /**
         * True when the probed radii pin the minimal integer distance down
         * exactly: some witness radius d1 and clean radius d2 satisfy
         * floor(d1) == ceil(d2), which squeezes the (integer) distance to
         * that single value. Requires integer_grid.
         */
        bool proven_exact = false;
        std::optional<Example> adversarial_witness;
        std::vector<RobustnessStep> per_step;
    };

    /**
     * Shrinking-interval search over the ball radius. Each step maximizes
     * target-score minus source-score over the max-norm ball of the current
     * radius (one budgeted search run per step). A negative upper bound
     * proves the ball clean and grows the radius (doubling until a dirty
     * radius is known, bisecting after); otherwise the radius shrinks.
     * Budget exhaustion inside a step conservatively counts as "may exist".
     */
    RobustnessResult robustness_search(const RobustnessQuery& q,
            const SearchConfig& cfg);

    struct StressResult {
        BoundsTrace ours;      // best-first search trace
        BoundsTrace baseline;  // merge trace
    };

    /** Unconstrained output maximization with both engines, same problem. */
    StressResult stress_max(const Ensemble& ensemble, const SearchConfig& scfg,
            const MergeConfig& mcfg);

    struct GenerationFailed : std::runtime_error {
        explicit GenerationFailed(const std::string& what)
            : std::runtime_error(what) {}
    };

    struct RandomTaskSpec {
        Box constraint_box;
        FloatT target_fraction = 1.0;
        FloatT achieved_fraction = 1.0;
        std::uint64_t seed = 0;
    };

    /** Leaves whose box intersects `box`, over all leaves of the ensemble. */
    FloatT reachable_leaf_fraction(const Ensemble& ensemble, const Box& box);

    /**
     * Draw a per-attribute interval constraint whose reachable-leaf fraction
     * lands within 5 percentage points of `target_fraction`. Intervals snap
     * to observed split thresholds and are adjusted incrementally — shrunk
     * toward a random inter-threshold range when too many leaves survive,
     * widened one threshold at a time when too few — while every tree keeps
     * at least one reachable leaf. Deterministic per seed; throws
     * GenerationFailed when the adjustment loop cannot land in the band.
     */
    RandomTaskSpec generate_random_task(const Ensemble& ensemble,
            FloatT target_fraction, std::uint64_t seed);

    struct Metrics {
        /** Earliest time our upper bound reaches the baseline's final upper
         * bound; nothing = never reached. */
        std::optional<double> ttb;
        FloatT gap_ours = 0.0;      // (upper - lower) / |upper| at the end
        FloatT gap_baseline = 0.0;
        bool exact_ours = false;
        bool exact_baseline = false;
        /** Set when a gap is meaningless: near-zero or non-finite final
         * upper bound (the gap is reported as 0 in that case). */
        bool degenerate_ours = false;
        bool degenerate_baseline = false;
    };

    Metrics compute_metrics(const BoundsTrace& ours, const BoundsTrace& baseline);

} // namespace treeverify

#endif // TREEVERIFY_TASKS_HPP
