/**
 * \file tree.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/tree.hpp"

#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace treeverify {

    Tree::Tree(FloatT leaf_value)
    {
        nodes_.push_back(NodeRec{-1, leaf_value, -1, -1});
    }

    const Tree::NodeRec& Tree::node(NodeId id) const
    {
        if (id < 0 || static_cast<size_t>(id) >= nodes_.size())
            throw std::invalid_argument("invalid node id");
        return nodes_[id];
    }

    Tree::NodeRec& Tree::node(NodeId id)
    {
        return const_cast<NodeRec&>(const_cast<const Tree*>(this)->node(id));
    }

    NodeId Tree::left(NodeId id) const
    {
        const NodeRec& n = node(id);
        if (n.attr < 0) throw std::invalid_argument("leaf has no children");
        return n.left;
    }

    NodeId Tree::right(NodeId id) const
    {
        const NodeRec& n = node(id);
        if (n.attr < 0) throw std::invalid_argument("leaf has no children");
        return n.right;
    }

    AttrId Tree::split_attr(NodeId id) const
    {
        const NodeRec& n = node(id);
        if (n.attr < 0) throw std::invalid_argument("leaf has no split");
        return n.attr;
    }

    FloatT Tree::split_threshold(NodeId id) const
    {
        const NodeRec& n = node(id);
        if (n.attr < 0) throw std::invalid_argument("leaf has no split");
        return n.value;
    }

    FloatT Tree::leaf_value(NodeId id) const
    {
        const NodeRec& n = node(id);
        if (n.attr >= 0) throw std::invalid_argument("internal node has no leaf value");
        return n.value;
    }

    std::pair<NodeId, NodeId> Tree::split(NodeId id, AttrId attr, FloatT tau)
    {
        if (attr < 0)
            throw std::invalid_argument("negative split attribute");
        if (std::isnan(tau) || std::isinf(tau))
            throw std::invalid_argument("split threshold must be finite");
        NodeRec& n = node(id);
        if (n.attr >= 0)
            throw std::invalid_argument("cannot split an internal node");
        FloatT old_value = n.value;
        NodeId l = static_cast<NodeId>(nodes_.size());
        NodeId r = l + 1;
        // note: push_back may reallocate, re-fetch the node afterwards
        nodes_.push_back(NodeRec{-1, old_value, -1, -1});
        nodes_.push_back(NodeRec{-1, old_value, -1, -1});
        NodeRec& m = nodes_[id];
        m.attr = attr;
        m.value = tau;
        m.left = l;
        m.right = r;
        index_dirty_ = true;
        return {l, r};
    }

    void Tree::set_leaf_value(NodeId id, FloatT value)
    {
        NodeRec& n = node(id);
        if (n.attr >= 0)
            throw std::invalid_argument("internal node has no leaf value");
        n.value = value;
    }

    void Tree::rebuild_leaf_index() const
    {
        leaf_nodes_.clear();
        leaf_index_of_node_.assign(nodes_.size(), -1);
        std::function<void(NodeId)> rec = [&](NodeId id) {
            const NodeRec& n = nodes_[id];
            if (n.attr < 0) {
                leaf_index_of_node_[id] = static_cast<int>(leaf_nodes_.size());
                leaf_nodes_.push_back(id);
            } else {
                rec(n.left);
                rec(n.right);
            }
        };
        rec(root());
        index_dirty_ = false;
    }

    int Tree::num_leaves() const
    {
        if (index_dirty_) rebuild_leaf_index();
        return static_cast<int>(leaf_nodes_.size());
    }

    int Tree::depth() const
    {
        std::function<int(NodeId)> rec = [&](NodeId id) -> int {
            const NodeRec& n = nodes_[id];
            if (n.attr < 0) return 0;
            return 1 + std::max(rec(n.left), rec(n.right));
        };
        return rec(root());
    }

    int Tree::leaf_index(NodeId id) const
    {
        if (index_dirty_) rebuild_leaf_index();
        const NodeRec& n = node(id);
        if (n.attr >= 0)
            throw std::invalid_argument("node is not a leaf");
        return leaf_index_of_node_[id];
    }

    NodeId Tree::leaf_node(int leaf_index) const
    {
        if (index_dirty_) rebuild_leaf_index();
        if (leaf_index < 0 || static_cast<size_t>(leaf_index) >= leaf_nodes_.size())
            throw std::invalid_argument("unknown leaf index");
        return leaf_nodes_[leaf_index];
    }

    std::pair<int, FloatT> Tree::eval(const Example& x) const
    {
        NodeId id = root();
        while (true) {
            const NodeRec& n = nodes_[id];
            if (n.attr < 0)
                return {leaf_index(id), n.value};
            if (static_cast<size_t>(n.attr) >= x.size())
                throw std::invalid_argument("example does not cover split attribute");
            id = x[n.attr] < n.value ? n.left : n.right;
        }
    }

    Box Tree::leaf_box(int leaf_index) const
    {
        NodeId target = leaf_node(leaf_index); // validates the index
        // walk down from the root following the recorded leaf positions
        Box box;
        std::function<bool(NodeId)> rec = [&](NodeId id) -> bool {
            if (id == target)
                return true;
            const NodeRec& n = nodes_[id];
            if (n.attr < 0)
                return false;
            Box saved = box;
            if (box.refine(n.attr, Interval::less_than(n.value)) && rec(n.left))
                return true;
            box = std::move(saved);
            if (!box.refine(n.attr, Interval::at_least(n.value)))
                throw std::runtime_error("unreachable leaf: path conditions are contradictory");
            return rec(n.right);
        };
        if (!rec(root()))
            throw std::runtime_error("unreachable leaf: path conditions are contradictory");
        return box;
    }

    AttrId Tree::max_attr() const
    {
        AttrId m = -1;
        for (const NodeRec& n : nodes_)
            m = std::max(m, n.attr);
        return m;
    }

    Tree Tree::negated() const
    {
        Tree t(*this);
        for (NodeRec& n : t.nodes_)
            if (n.attr < 0)
                n.value = -n.value;
        return t;
    }

    static void print_node(std::ostream& s, const Tree& t, NodeId id, int indent)
    {
        for (int i = 0; i < indent; ++i) s << "  ";
        if (t.is_leaf(id)) {
            s << "Leaf(" << t.leaf_value(id) << ")\n";
        } else {
            s << "Node(X" << t.split_attr(id) << " < " << t.split_threshold(id) << ")\n";
            print_node(s, t, t.left(id), indent + 1);
            print_node(s, t, t.right(id), indent + 1);
        }
    }

    std::ostream& operator<<(std::ostream& s, const Tree& t)
    {
        print_node(s, t, t.root(), 0);
        return s;
    }

    Ensemble::Ensemble(int num_attributes, FloatT base_score)
        : num_attributes_(num_attributes), base_score_(base_score)
    {
        if (num_attributes <= 0)
            throw std::invalid_argument("num_attributes must be positive");
    }

    const Tree& Ensemble::tree(int m) const
    {
        if (m < 0 || static_cast<size_t>(m) >= trees_.size())
            throw std::invalid_argument("invalid tree index");
        return trees_[m];
    }

    int Ensemble::num_leaves() const
    {
        int n = 0;
        for (const Tree& t : trees_)
            n += t.num_leaves();
        return n;
    }

    void Ensemble::add_tree(Tree t)
    {
        if (t.max_attr() >= num_attributes_) {
            std::ostringstream ss;
            ss << "tree splits on attribute " << t.max_attr()
               << " but the ensemble has only " << num_attributes_ << " attributes";
            throw std::invalid_argument(ss.str());
        }
        trees_.push_back(std::move(t));
    }

    FloatT Ensemble::eval(const Example& x) const
    {
        if (x.size() != static_cast<size_t>(num_attributes_))
            throw std::invalid_argument("example size does not match num_attributes");
        FloatT sum = 0.0;
        for (const Tree& t : trees_)
            sum += t.eval(x).second;
        return base_score_ + sum;
    }

    Ensemble Ensemble::negated() const
    {
        Ensemble e(num_attributes_, -base_score_);
        for (const Tree& t : trees_)
            e.add_tree(t.negated());
        return e;
    }

    Ensemble Ensemble::concat(const Ensemble& a, const Ensemble& b)
    {
        Ensemble e(std::max(a.num_attributes_, b.num_attributes_),
                a.base_score_ + b.base_score_);
        for (const Tree& t : a.trees_) e.add_tree(t);
        for (const Tree& t : b.trees_) e.add_tree(t);
        return e;
    }

    std::ostream& operator<<(std::ostream& s, const Ensemble& e)
    {
        s << "Ensemble(attrs=" << e.num_attributes()
          << ", base=" << e.base_score()
          << ", trees=" << e.num_trees() << ")\n";
        for (int m = 0; m < e.num_trees(); ++m)
            s << e.tree(m);
        return s;
    }

} // namespace treeverify
