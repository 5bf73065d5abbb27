/**
 * \file box.hpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_BOX_HPP
#define TREEVERIFY_BOX_HPP

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace treeverify {

    using FloatT = double;
    using AttrId = int;

    /** A dense input point, one value per attribute. */
    using Example = std::vector<FloatT>;

    const FloatT FLOAT_INF = std::numeric_limits<FloatT>::infinity();

    /**
     * A half-open interval [lo, hi) over one attribute.
     *
     * Invariant: lo < hi. The default interval is the full real line.
     * Equality at a split threshold goes right, so half-open intervals make
     * the left/right branch regions exactly disjoint.
     */
    struct Interval {
        FloatT lo = -FLOAT_INF;
        FloatT hi = FLOAT_INF;

        Interval() = default;
        Interval(FloatT l, FloatT h);

        static Interval everything() { return {}; }
        /** (-inf, tau), the region of a left branch */
        static Interval less_than(FloatT tau) { return {-FLOAT_INF, tau}; }
        /** [tau, inf), the region of a right branch */
        static Interval at_least(FloatT tau) { return {tau, FLOAT_INF}; }
        /** the strictly-open interval (lo, hi), encoded on the float grid */
        static Interval open(FloatT lo, FloatT hi);

        bool is_everything() const { return lo == -FLOAT_INF && hi == FLOAT_INF; }
        bool contains(FloatT v) const { return lo <= v && v < hi; }
        bool overlaps(const Interval& o) const { return lo < o.hi && o.lo < hi; }

        bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
        bool operator!=(const Interval& o) const { return !(*this == o); }
    };

    /** [max lo, min hi) when the intervals overlap, nothing otherwise. */
    std::optional<Interval> intersect(const Interval& a, const Interval& b);

    std::ostream& operator<<(std::ostream& s, const Interval& iv);

    /**
     * An axis-aligned box: the conjunction of per-attribute intervals.
     *
     * Sparse representation: only constrained attributes are stored, sorted by
     * attribute id. Full intervals are never stored, so two boxes describing
     * the same region compare equal. A Box always describes a non-empty
     * region; the empty result of an intersection is signalled out of band.
     */
    class Box {
    public:
        using Item = std::pair<AttrId, Interval>;

        Box() = default; // everything

        static Box everything() { return {}; }

        /** Normalizes: sorts, drops full intervals, rejects duplicate attrs. */
        static Box from_items(std::vector<Item> items);

        const Interval& get(AttrId attr) const;
        bool constrains(AttrId attr) const;

        /**
         * Intersect the interval stored for `attr` with `iv` in place.
         * Returns false (and leaves the box unspecified) when the result
         * would be empty.
         */
        bool refine(AttrId attr, const Interval& iv);

        bool contains(const Example& x) const;

        /** Number of constrained attributes. */
        size_t size() const { return items_.size(); }
        bool is_everything() const { return items_.empty(); }

        std::vector<Item>::const_iterator begin() const { return items_.begin(); }
        std::vector<Item>::const_iterator end() const { return items_.end(); }

        bool operator==(const Box& o) const { return items_ == o.items_; }
        bool operator!=(const Box& o) const { return !(*this == o); }

        friend bool boxes_overlap(const Box& a, const Box& b);
        friend std::optional<Box> box_intersect(const Box& a, const Box& b);

    private:
        std::vector<Item> items_;
    };

    /** True when the boxes share at least one point (per-attr overlap). */
    bool boxes_overlap(const Box& a, const Box& b);

    /** Per-attribute intersection; nothing when some attribute empties out. */
    std::optional<Box> box_intersect(const Box& a, const Box& b);

    /**
     * A concrete point inside the box: the finite lower endpoint per
     * attribute when present, else one below the finite upper endpoint,
     * else 0.0 for unconstrained attributes.
     */
    Example extract_witness(const Box& box, int num_attributes);

    std::ostream& operator<<(std::ostream& s, const Box& box);

} // namespace treeverify

#endif // TREEVERIFY_BOX_HPP
