/**
 * \file tree.hpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_TREE_HPP
#define TREEVERIFY_TREE_HPP

#include "treeverify/box.hpp"

#include <iosfwd>
#include <vector>

namespace treeverify {

    using NodeId = int;

    /**
     * A binary decision tree with single-attribute splits `X[attr] < tau`.
     * A value equal to the threshold follows the right branch.
     *
     * Leaves are numbered depth-first left-to-right, so the leaf numbering of
     * a frozen tree is stable and matches the left-to-right order of the leaf
     * regions.
     */
    class Tree {
    public:
        /** A new tree is a single leaf with the given value. */
        explicit Tree(FloatT leaf_value = 0.0);

        NodeId root() const { return 0; }
        bool is_leaf(NodeId id) const { return node(id).attr < 0; }
        bool is_internal(NodeId id) const { return !is_leaf(id); }

        NodeId left(NodeId id) const;
        NodeId right(NodeId id) const;
        AttrId split_attr(NodeId id) const;
        FloatT split_threshold(NodeId id) const;
        FloatT leaf_value(NodeId id) const;

        /**
         * Turn the leaf `id` into an internal node `X[attr] < tau` with two
         * fresh leaves carrying the old leaf value. Returns (left, right).
         */
        std::pair<NodeId, NodeId> split(NodeId id, AttrId attr, FloatT tau);
        void set_leaf_value(NodeId id, FloatT value);

        int num_nodes() const { return static_cast<int>(nodes_.size()); }
        int num_leaves() const;
        int depth() const;

        /** Depth-first left-to-right position of leaf node `id`. */
        int leaf_index(NodeId id) const;
        /** Inverse of leaf_index. Throws on an unknown index. */
        NodeId leaf_node(int leaf_index) const;

        /** Follow the splits for `x`; returns (leaf index, leaf value). */
        std::pair<int, FloatT> eval(const Example& x) const;

        /**
         * The conjunction of the split conditions on the root-to-leaf path.
         * Every input in this box reaches precisely this leaf.
         */
        Box leaf_box(int leaf_index) const;

        /** Largest split/leaf attribute id, -1 for a single leaf. */
        AttrId max_attr() const;

        Tree negated() const;

        bool operator==(const Tree& o) const { return nodes_ == o.nodes_; }
        bool operator!=(const Tree& o) const { return !(*this == o); }

    private:
        struct NodeRec {
            AttrId attr = -1;      // -1: leaf
            FloatT value = 0.0;    // leaf value or split threshold
            NodeId left = -1;
            NodeId right = -1;

            bool operator==(const NodeRec&) const = default;
        };

        const NodeRec& node(NodeId id) const;
        NodeRec& node(NodeId id);
        void rebuild_leaf_index() const;

        std::vector<NodeRec> nodes_;
        mutable std::vector<NodeId> leaf_nodes_;       // leaf index -> node id
        mutable std::vector<int> leaf_index_of_node_;  // node id -> leaf index or -1
        mutable bool index_dirty_ = true;
    };

    std::ostream& operator<<(std::ostream& s, const Tree& t);

    /**
     * An additive ensemble: base_score plus the sum of the trees' leaf values.
     *
     * Evaluation accumulates tree outputs left-associated in tree order and
     * adds base_score last; every other component that reports configuration
     * values reproduces exactly this association so values compare bit-equal.
     */
    class Ensemble {
    public:
        explicit Ensemble(int num_attributes, FloatT base_score = 0.0);

        int num_attributes() const { return num_attributes_; }
        FloatT base_score() const { return base_score_; }
        void set_base_score(FloatT b) { base_score_ = b; }

        int num_trees() const { return static_cast<int>(trees_.size()); }
        const Tree& tree(int m) const;
        int num_leaves() const;

        /** Validates that every split attribute fits num_attributes. */
        void add_tree(Tree t);

        FloatT eval(const Example& x) const;

        /** Same trees with all leaf values and base_score negated. */
        Ensemble negated() const;

        /**
         * The trees of `a` followed by the trees of `b`; base scores add.
         * Computes a.eval(x) + b.eval(x) up to float associativity.
         */
        static Ensemble concat(const Ensemble& a, const Ensemble& b);

    private:
        int num_attributes_;
        FloatT base_score_;
        std::vector<Tree> trees_;
    };

    std::ostream& operator<<(std::ostream& s, const Ensemble& e);

} // namespace treeverify

#endif // TREEVERIFY_TREE_HPP
