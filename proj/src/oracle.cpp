/**
 * \file oracle.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/oracle.hpp"

#include <sstream>

namespace treeverify {

    OracleLimitError::OracleLimitError(size_t limit)
        : std::runtime_error([&] {
                std::ostringstream ss;
                ss << "oracle enumeration exceeds the configuration limit (" << limit << ")";
                return ss.str();
            }())
    {}

    namespace {

        struct Enumerator {
            const Ensemble& ensemble;
            const Constraint* constraint;
            const std::function<void(const OutputConfig&)>& emit;
            size_t limit;
            size_t count = 0;

            std::vector<int> leaves = {};
            std::vector<FloatT> partial = {}; // folded leaf-value prefix sums

            void run(const Box& prune)
            {
                leaves.assign(ensemble.num_trees(), -1);
                partial.assign(ensemble.num_trees() + 1, 0.0);
                rec(0, prune);
            }

            void rec(int m, const Box& box)
            {
                if (m == ensemble.num_trees()) {
                    if (++count > limit)
                        throw OracleLimitError(limit);
                    OutputConfig c;
                    c.leaves = leaves;
                    c.box = box;
                    c.value = ensemble.base_score() + partial[m];
                    emit(c);
                    return;
                }
                const Tree& tree = ensemble.tree(m);
                for (int l = 0; l < tree.num_leaves(); ++l) {
                    auto next = box_intersect(box, tree.leaf_box(l));
                    if (!next.has_value())
                        continue;
                    if (constraint && !constraint->accepts(*next))
                        continue;
                    leaves[m] = l;
                    partial[m + 1] = partial[m] + tree.leaf_value(tree.leaf_node(l));
                    rec(m + 1, *next);
                }
                leaves[m] = -1;
            }
        };

    } // namespace

    void enumerate_configs(const Ensemble& ensemble, const Box& prune,
            const Constraint* constraint,
            const std::function<void(const OutputConfig&)>& emit,
            const OracleConfig& config)
    {
        if (ensemble.num_trees() == 0)
            throw std::invalid_argument("ensemble has no trees");
        Box region = prune;
        if (constraint) {
            // fold the constraint's box part into the region so box-shaped
            // constraints restrict the enumeration even though their accepts
            // is constant-true; contradictory constraints admit nothing
            try {
                auto r = box_intersect(region, constraint->prune_box());
                if (!r.has_value())
                    return;
                region = std::move(*r);
            } catch (const InfeasibleConstraint&) {
                return;
            }
        }
        Enumerator e{ensemble, constraint, emit, config.max_configs};
        e.run(region);
    }

    std::vector<OutputConfig> all_configs(const Ensemble& ensemble, const Box& prune,
            const Constraint* constraint, const OracleConfig& config)
    {
        std::vector<OutputConfig> out;
        enumerate_configs(ensemble, prune, constraint,
                [&](const OutputConfig& c) { out.push_back(c); }, config);
        return out;
    }

    std::optional<OutputConfig> exact_max(const Ensemble& ensemble, const Box& prune,
            const Constraint* constraint, const OracleConfig& config)
    {
        std::optional<OutputConfig> best;
        enumerate_configs(ensemble, prune, constraint, [&](const OutputConfig& c) {
            if (!best.has_value() || c.value > best->value)
                best = c;
        }, config);
        return best;
    }

    std::optional<OutputConfig> exact_min(const Ensemble& ensemble, const Box& prune,
            const Constraint* constraint, const OracleConfig& config)
    {
        std::optional<OutputConfig> best;
        enumerate_configs(ensemble, prune, constraint, [&](const OutputConfig& c) {
            if (!best.has_value() || c.value < best->value)
                best = c;
        }, config);
        return best;
    }

    std::optional<DiffConfig> exact_diff_max(const Ensemble& ensemble1,
            const Ensemble& ensemble2, const JointConstraint* constraint,
            const Box& prune1, const Box& prune2, const OracleConfig& config)
    {
        Box p1 = prune1, p2 = prune2;
        if (constraint) {
            auto i1 = box_intersect(p1, constraint->prune_box1());
            auto i2 = box_intersect(p2, constraint->prune_box2());
            if (!i1.has_value() || !i2.has_value())
                return {};
            p1 = std::move(*i1);
            p2 = std::move(*i2);
        }

        std::vector<OutputConfig> firsts = all_configs(ensemble1, p1, nullptr, config);

        std::optional<DiffConfig> best;
        size_t pairs = 0;
        enumerate_configs(ensemble2, p2, nullptr, [&](const OutputConfig& c2) {
            for (const OutputConfig& c1 : firsts) {
                if (++pairs > config.max_configs)
                    throw OracleLimitError(config.max_configs);
                if (constraint && !constraint->accepts(c1.box, c2.box))
                    continue;
                FloatT diff = c2.value - c1.value;
                if (!best.has_value() || diff > best->diff)
                    best = DiffConfig{c1, c2, diff};
            }
        }, config);
        return best;
    }

} // namespace treeverify
