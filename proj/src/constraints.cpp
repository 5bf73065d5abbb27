/**
 * \file constraints.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/constraints.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeverify {

    namespace {

        enum class BinaryState { FORCED_TRUE, FORCED_FALSE, FREE };

        // Binary attributes encode false/true as values below/at-or-above 0.5.
        BinaryState binary_state(const Interval& iv)
        {
            if (iv.lo >= 0.5)
                return BinaryState::FORCED_TRUE;
            if (iv.hi <= 0.5)
                return BinaryState::FORCED_FALSE;
            return BinaryState::FREE;
        }

    } // namespace

    BoxConstraint::BoxConstraint(Box box) : box_(std::move(box)) {}

    bool BoxConstraint::accepts(const Box& box) const
    {
        return boxes_overlap(box_, box);
    }

    LinfBallConstraint::LinfBallConstraint(Example center, FloatT delta)
        : center_(std::move(center)), delta_(delta)
    {
        if (!(delta > 0.0))
            throw std::invalid_argument("ball radius must be positive");
        std::vector<Box::Item> items;
        items.reserve(center_.size());
        for (size_t j = 0; j < center_.size(); ++j) {
            items.push_back({static_cast<AttrId>(j),
                    Interval::open(center_[j] - delta, center_[j] + delta)});
        }
        box_ = Box::from_items(std::move(items));
    }

    bool LinfBallConstraint::accepts(const Box& box) const
    {
        return boxes_overlap(box_, box);
    }

    AtMostKConstraint::AtMostKConstraint(std::vector<AttrId> attrs, int k, Example baseline)
        : attrs_(std::move(attrs)), k_(k), baseline_(std::move(baseline))
    {
        if (k_ < 0)
            throw std::invalid_argument("k must be non-negative");
        for (AttrId a : attrs_)
            if (a < 0 || static_cast<size_t>(a) >= baseline_.size())
                throw std::invalid_argument("constraint attribute outside the baseline example");
    }

    bool AtMostKConstraint::accepts(const Box& box) const
    {
        int flipped_on = 0;
        for (AttrId a : attrs_) {
            if (baseline_[a] >= 0.5)
                continue; // already true in the baseline, not counted
            if (binary_state(box.get(a)) == BinaryState::FORCED_TRUE) {
                if (++flipped_on > k_)
                    return false;
            }
        }
        return true;
    }

    OneOutOfKConstraint::OneOutOfKConstraint(std::vector<std::vector<AttrId>> groups)
        : groups_(std::move(groups))
    {
        for (const auto& g : groups_) {
            if (g.empty())
                throw std::invalid_argument("empty attribute group");
            for (AttrId a : g)
                if (a < 0)
                    throw std::invalid_argument("negative attribute id");
        }
    }

    bool OneOutOfKConstraint::accepts(const Box& box) const
    {
        for (const auto& group : groups_) {
            int forced_true = 0;
            size_t forced_false = 0;
            for (AttrId a : group) {
                switch (binary_state(box.get(a))) {
                    case BinaryState::FORCED_TRUE:
                        if (++forced_true > 1)
                            return false;
                        break;
                    case BinaryState::FORCED_FALSE:
                        ++forced_false;
                        break;
                    case BinaryState::FREE:
                        break;
                }
            }
            if (forced_false == group.size())
                return false; // nothing left that could be the single true attr
        }
        return true;
    }

    ConjunctionConstraint::ConjunctionConstraint(std::vector<ConstraintPtr> parts)
        : parts_(std::move(parts))
    {
        for (const auto& p : parts_)
            if (!p)
                throw std::invalid_argument("null constraint part");
    }

    Box ConjunctionConstraint::prune_box() const
    {
        Box box;
        for (const auto& p : parts_) {
            auto isect = box_intersect(box, p->prune_box());
            if (!isect.has_value())
                throw InfeasibleConstraint();
            box = std::move(*isect);
        }
        return box;
    }

    bool ConjunctionConstraint::accepts(const Box& box) const
    {
        for (const auto& p : parts_)
            if (!p->accepts(box))
                return false;
        return true;
    }

    DiffersOnlyConstraint::DiffersOnlyConstraint(std::vector<AttrId> free_attrs)
        : free_attrs_(std::move(free_attrs))
    {
        std::sort(free_attrs_.begin(), free_attrs_.end());
    }

    bool DiffersOnlyConstraint::accepts(const Box& box1, const Box& box2) const
    {
        auto is_free = [&](AttrId a) {
            return std::binary_search(free_attrs_.begin(), free_attrs_.end(), a);
        };
        // only attributes constrained in both boxes can exclude a common
        // value; an unconstrained side always overlaps
        for (const auto& [attr, iv] : box1) {
            if (is_free(attr))
                continue;
            if (!iv.overlaps(box2.get(attr)))
                return false;
        }
        return true;
    }

    JointConjunction::JointConjunction(std::vector<ConstraintPtr> on1,
            std::vector<ConstraintPtr> on2,
            std::vector<JointConstraintPtr> joint)
        : on1_(std::move(on1)), on2_(std::move(on2)), joint_(std::move(joint))
    {
        for (const auto& p : on1_) if (!p) throw std::invalid_argument("null constraint part");
        for (const auto& p : on2_) if (!p) throw std::invalid_argument("null constraint part");
        for (const auto& p : joint_) if (!p) throw std::invalid_argument("null constraint part");
    }

    static Box intersect_prunes(const std::vector<ConstraintPtr>& parts)
    {
        Box box;
        for (const auto& p : parts) {
            auto isect = box_intersect(box, p->prune_box());
            if (!isect.has_value())
                throw InfeasibleConstraint();
            box = std::move(*isect);
        }
        return box;
    }

    Box JointConjunction::prune_box1() const { return intersect_prunes(on1_); }
    Box JointConjunction::prune_box2() const { return intersect_prunes(on2_); }

    bool JointConjunction::accepts(const Box& box1, const Box& box2) const
    {
        for (const auto& p : on1_)
            if (!p->accepts(box1))
                return false;
        for (const auto& p : on2_)
            if (!p->accepts(box2))
                return false;
        for (const auto& p : joint_)
            if (!p->accepts(box1, box2))
                return false;
        return true;
    }

} // namespace treeverify
