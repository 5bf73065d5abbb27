/**
 * \file constraints.hpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_CONSTRAINTS_HPP
#define TREEVERIFY_CONSTRAINTS_HPP

#include "treeverify/box.hpp"

#include <memory>
#include <stdexcept>
#include <vector>

namespace treeverify {

    /**
     * Raised when composed constraints contradict each other outright (their
     * prune boxes are disjoint). Drivers map this to an INFEASIBLE result.
     */
    struct InfeasibleConstraint : std::runtime_error {
        InfeasibleConstraint() : std::runtime_error(
                "constraints exclude every input: prune boxes are disjoint") {}
    };

    /**
     * A monotone state-space constraint over the box of a partial leaf
     * selection.
     *
     * Contract: accepts must be monotone in box inclusion — once a box is
     * rejected, every sub-box is rejected too — and sound with respect to the
     * intended input-level condition: a box containing some input that
     * satisfies the condition is never rejected. Rejection may be lazy;
     * soundness is what search correctness rests on.
     */
    class Constraint {
    public:
        virtual ~Constraint() = default;

        /**
         * Attribute ranges that can be intersected into the search region up
         * front without losing any satisfying input. Everything by default.
         */
        virtual Box prune_box() const { return Box::everything(); }

        virtual bool accepts(const Box& box) const = 0;
    };

    using ConstraintPtr = std::shared_ptr<const Constraint>;

    /** Restrict the input to a fixed box. Rejects via prune_box alone. */
    class BoxConstraint : public Constraint {
    public:
        explicit BoxConstraint(Box box);
        Box prune_box() const override { return box_; }
        bool accepts(const Box& box) const override;

    private:
        Box box_;
    };

    /**
     * The strictly-open L-infinity ball around a center point:
     * every attribute confined to (x_j - delta, x_j + delta).
     */
    class LinfBallConstraint : public Constraint {
    public:
        LinfBallConstraint(Example center, FloatT delta);
        Box prune_box() const override { return box_; }
        bool accepts(const Box& box) const override;

        const Example& center() const { return center_; }
        FloatT delta() const { return delta_; }

    private:
        Example center_;
        FloatT delta_;
        Box box_;
    };

    /**
     * For binary attributes (threshold 0.5): at most `k` of the listed
     * attributes may be set to true beyond those already true in the
     * baseline example.
     *
     * An attribute's state under a box: forced true when its interval lies
     * within [0.5, inf), forced false within (-inf, 0.5), free otherwise.
     * The box is accepted while the forced-true-beyond-baseline count is at
     * most k; free attributes count as not set, which keeps rejection
     * monotone and sound.
     */
    class AtMostKConstraint : public Constraint {
    public:
        AtMostKConstraint(std::vector<AttrId> attrs, int k, Example baseline);
        bool accepts(const Box& box) const override;

    private:
        std::vector<AttrId> attrs_;
        int k_;
        Example baseline_;
    };

    /**
     * For binary attribute groups: exactly one attribute of each group is
     * true in any admitted input. A box is rejected as soon as a group has
     * two forced-true attributes or all attributes forced false.
     */
    class OneOutOfKConstraint : public Constraint {
    public:
        explicit OneOutOfKConstraint(std::vector<std::vector<AttrId>> groups);
        bool accepts(const Box& box) const override;

    private:
        std::vector<std::vector<AttrId>> groups_;
    };

    /** All parts must accept; prune boxes intersect. */
    class ConjunctionConstraint : public Constraint {
    public:
        explicit ConjunctionConstraint(std::vector<ConstraintPtr> parts);
        Box prune_box() const override;
        bool accepts(const Box& box) const override;

    private:
        std::vector<ConstraintPtr> parts_;
    };

    /**
     * A monotone constraint over a *pair* of boxes, for searches relating two
     * instances. The same monotonicity/soundness contract holds with respect
     * to shrinking either box.
     */
    class JointConstraint {
    public:
        virtual ~JointConstraint() = default;
        virtual Box prune_box1() const { return Box::everything(); }
        virtual Box prune_box2() const { return Box::everything(); }
        virtual bool accepts(const Box& box1, const Box& box2) const = 0;
    };

    using JointConstraintPtr = std::shared_ptr<const JointConstraint>;

    /**
     * The two instances may differ only in the listed attributes: every other
     * attribute must still admit a common value in both boxes. An empty list
     * forces the instances equal.
     */
    class DiffersOnlyConstraint : public JointConstraint {
    public:
        explicit DiffersOnlyConstraint(std::vector<AttrId> free_attrs);
        bool accepts(const Box& box1, const Box& box2) const override;

    private:
        std::vector<AttrId> free_attrs_; // sorted
    };

    /** Compose per-instance and joint parts into one joint constraint. */
    class JointConjunction : public JointConstraint {
    public:
        JointConjunction(std::vector<ConstraintPtr> on1,
                std::vector<ConstraintPtr> on2,
                std::vector<JointConstraintPtr> joint);
        Box prune_box1() const override;
        Box prune_box2() const override;
        bool accepts(const Box& box1, const Box& box2) const override;

    private:
        std::vector<ConstraintPtr> on1_, on2_;
        std::vector<JointConstraintPtr> joint_;
    };

} // namespace treeverify

#endif // TREEVERIFY_CONSTRAINTS_HPP
