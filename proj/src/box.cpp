/**
 * \file box.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/box.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace treeverify {

    Interval::Interval(FloatT l, FloatT h) : lo(l), hi(h)
    {
        if (std::isnan(l) || std::isnan(h) || !(l < h)) {
            std::ostringstream ss;
            ss << "invalid interval [" << l << ", " << h << ")";
            throw std::invalid_argument(ss.str());
        }
    }

    Interval Interval::open(FloatT lo, FloatT hi)
    {
        FloatT l = std::isinf(lo) ? lo : std::nextafter(lo, FLOAT_INF);
        return {l, hi};
    }

    std::optional<Interval> intersect(const Interval& a, const Interval& b)
    {
        FloatT lo = std::max(a.lo, b.lo);
        FloatT hi = std::min(a.hi, b.hi);
        if (lo < hi)
            return Interval{lo, hi};
        return {};
    }

    std::ostream& operator<<(std::ostream& s, const Interval& iv)
    {
        return s << '[' << iv.lo << ", " << iv.hi << ')';
    }

    Box Box::from_items(std::vector<Item> items)
    {
        std::sort(items.begin(), items.end(),
                [](const Item& a, const Item& b) { return a.first < b.first; });
        Box box;
        for (const Item& it : items) {
            if (!box.items_.empty() && box.items_.back().first == it.first)
                throw std::invalid_argument("duplicate attribute in box");
            if (!it.second.is_everything())
                box.items_.push_back(it);
        }
        return box;
    }

    const Interval& Box::get(AttrId attr) const
    {
        static const Interval everything_iv{};
        auto it = std::lower_bound(items_.begin(), items_.end(), attr,
                [](const Item& a, AttrId b) { return a.first < b; });
        if (it != items_.end() && it->first == attr)
            return it->second;
        return everything_iv;
    }

    bool Box::constrains(AttrId attr) const
    {
        return !get(attr).is_everything();
    }

    bool Box::refine(AttrId attr, const Interval& iv)
    {
        auto it = std::lower_bound(items_.begin(), items_.end(), attr,
                [](const Item& a, AttrId b) { return a.first < b; });
        if (it == items_.end() || it->first != attr) {
            if (!iv.is_everything())
                items_.insert(it, {attr, iv});
            return true;
        }
        auto isect = intersect(it->second, iv);
        if (!isect.has_value())
            return false;
        if (isect->is_everything())
            items_.erase(it);
        else
            it->second = *isect;
        return true;
    }

    bool Box::contains(const Example& x) const
    {
        for (const Item& it : items_) {
            if (it.first < 0 || static_cast<size_t>(it.first) >= x.size())
                throw std::invalid_argument("example does not cover box attribute");
            if (!it.second.contains(x[it.first]))
                return false;
        }
        return true;
    }

    bool boxes_overlap(const Box& a, const Box& b)
    {
        auto ita = a.items_.begin();
        auto itb = b.items_.begin();
        while (ita != a.items_.end() && itb != b.items_.end()) {
            if (ita->first < itb->first) ++ita;
            else if (itb->first < ita->first) ++itb;
            else {
                if (!ita->second.overlaps(itb->second))
                    return false;
                ++ita; ++itb;
            }
        }
        return true;
    }

    std::optional<Box> box_intersect(const Box& a, const Box& b)
    {
        Box out;
        out.items_.reserve(a.items_.size() + b.items_.size());
        auto ita = a.items_.begin();
        auto itb = b.items_.begin();
        while (ita != a.items_.end() || itb != b.items_.end()) {
            if (itb == b.items_.end() || (ita != a.items_.end() && ita->first < itb->first)) {
                out.items_.push_back(*ita++);
            } else if (ita == a.items_.end() || itb->first < ita->first) {
                out.items_.push_back(*itb++);
            } else {
                auto isect = intersect(ita->second, itb->second);
                if (!isect.has_value())
                    return {};
                out.items_.push_back({ita->first, *isect});
                ++ita; ++itb;
            }
        }
        return out;
    }

    Example extract_witness(const Box& box, int num_attributes)
    {
        Example x(static_cast<size_t>(num_attributes), 0.0);
        for (const auto& [attr, iv] : box) {
            if (attr < 0 || attr >= num_attributes)
                throw std::invalid_argument("box attribute out of range");
            if (!std::isinf(iv.lo))
                x[attr] = iv.lo;
            else if (!std::isinf(iv.hi))
                x[attr] = iv.hi - 1.0;
            else
                x[attr] = 0.0;
        }
        return x;
    }

    std::ostream& operator<<(std::ostream& s, const Box& box)
    {
        s << "Box{";
        bool first = true;
        for (const auto& [attr, iv] : box) {
            if (!first) s << ", ";
            s << 'X' << attr << ':' << iv;
            first = false;
        }
        return s << '}';
    }

} // namespace treeverify
