/**
 * \file oracle.hpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_ORACLE_HPP
#define TREEVERIFY_ORACLE_HPP

#include "treeverify/constraints.hpp"
#include "treeverify/tree.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace treeverify {

    /**
     * Exhaustive reference answers by direct product enumeration, for testing
     * and for tiny problems. Deliberately simple: depth-first over the trees
     * in order, intersecting leaf boxes, with no heuristics or ordering
     * tricks.
     */

    /** One joint leaf selection: a non-empty region of the input space. */
    struct OutputConfig {
        std::vector<int> leaves; // leaf index per tree, in tree order
        Box box;                 // intersection of the leaf boxes and the prune box
        FloatT value;            // base_score + leaf values, folded in tree order
    };

    /** Enumeration refuses to continue past this many configurations. */
    struct OracleLimitError : std::runtime_error {
        explicit OracleLimitError(size_t limit);
    };

    struct OracleConfig {
        size_t max_configs = 10'000'000;
    };

    /**
     * Emit every output configuration whose box overlaps `prune` intersected
     * with the constraint's prune box, and whose every partial selection
     * `constraint` accepts (monotone constraints prune whole subtrees of the
     * product). Deterministic order: trees in order, leaves in leaf-index
     * order. Contradictory constraints emit nothing.
     */
    void enumerate_configs(const Ensemble& ensemble, const Box& prune,
            const Constraint* constraint,
            const std::function<void(const OutputConfig&)>& emit,
            const OracleConfig& config = {});

    /** Convenience: collect the stream into a vector. */
    std::vector<OutputConfig> all_configs(const Ensemble& ensemble,
            const Box& prune = {}, const Constraint* constraint = nullptr,
            const OracleConfig& config = {});

    /** Highest/lowest output over the admitted configurations, with witness
     * region; nothing when no configuration is admitted. */
    std::optional<OutputConfig> exact_max(const Ensemble& ensemble,
            const Box& prune = {}, const Constraint* constraint = nullptr,
            const OracleConfig& config = {});
    std::optional<OutputConfig> exact_min(const Ensemble& ensemble,
            const Box& prune = {}, const Constraint* constraint = nullptr,
            const OracleConfig& config = {});

    struct DiffConfig {
        OutputConfig first;   // instance of the first ensemble
        OutputConfig second;  // instance of the second ensemble
        FloatT diff;          // second.value - first.value
    };

    /**
     * Max of ensemble2(x2) - ensemble1(x1) over pairs admitted by the joint
     * constraint, by enumerating the full cross product of configurations.
     */
    std::optional<DiffConfig> exact_diff_max(const Ensemble& ensemble1,
            const Ensemble& ensemble2, const JointConstraint* constraint = nullptr,
            const Box& prune1 = {}, const Box& prune2 = {},
            const OracleConfig& config = {});

} // namespace treeverify

#endif // TREEVERIFY_ORACLE_HPP
