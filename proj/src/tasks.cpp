/**
 * \file tasks.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/tasks.hpp"

#include "treeverify/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace treeverify {

    int predict_class(const std::vector<Ensemble>& models, const Example& x)
    {
        if (models.empty())
            throw std::invalid_argument("no class models given");
        int best = 0;
        FloatT best_score = models[0].eval(x);
        for (size_t c = 1; c < models.size(); ++c) {
            FloatT s = models[c].eval(x);
            if (s > best_score) {
                best_score = s;
                best = static_cast<int>(c);
            }
        }
        return best;
    }

    RobustnessResult robustness_search(const RobustnessQuery& q,
            const SearchConfig& cfg)
    {
        if (q.models.size() < 2)
            throw std::invalid_argument("need at least two class models");
        int num_classes = static_cast<int>(q.models.size());
        if (q.source_label < 0 || q.source_label >= num_classes
                || q.target_label < 0 || q.target_label >= num_classes)
            throw std::invalid_argument("class label out of range");
        if (q.source_label == q.target_label)
            throw std::invalid_argument("source and target label must differ");
        if (!(q.delta_start > 0.0))
            throw std::invalid_argument("delta_start must be positive");
        if (q.steps < 1)
            throw std::invalid_argument("need at least one step");
        int num_attributes = q.models.front().num_attributes();
        for (const Ensemble& m : q.models)
            if (m.num_attributes() != num_attributes)
                throw std::invalid_argument("class models disagree on attribute count");
        if (static_cast<int>(q.x.size()) != num_attributes)
            throw std::invalid_argument("example size does not match the models");
        if (predict_class(q.models, q.x) != q.source_label)
            throw std::invalid_argument("example is not classified as the source label");

        // target-minus-source score; positive anywhere in a ball means an
        // adversarial example lives in that ball
        Ensemble diff = Ensemble::concat(q.models[q.target_label],
                q.models[q.source_label].negated());

        RobustnessResult res;
        FloatT lo = 0.0, delta = q.delta_start;
        std::optional<FloatT> hi;
        std::vector<FloatT> witness_radii, clean_radii;
        FloatT witness_radius = FLOAT_INF;

        for (int step = 0; step < q.steps; ++step) {
            SearchProblem problem;
            problem.ensemble = &diff;
            problem.constraint = std::make_shared<LinfBallConstraint>(q.x, delta);
            SearchResult r = run_search(problem, cfg);

            FloatT upper = r.trace.empty() ? -FLOAT_INF : r.trace.final_upper();
            RobustnessStep rec;
            rec.delta = delta;
            rec.upper = upper;
            rec.may_exist = !(upper < 0.0);

            if (upper < 0.0) {
                // the whole ball is proven clean
                lo = delta;
                clean_radii.push_back(delta);
                delta = hi.has_value() ? (lo + *hi) / 2.0 : 2.0 * delta;
            } else {
                const Solution* sol = r.best();
                if (sol != nullptr && sol->value > 0.0) {
                    rec.found_witness = true;
                    witness_radii.push_back(delta);
                    if (delta < witness_radius) {
                        witness_radius = delta;
                        res.adversarial_witness = sol->witness;
                    }
                }
                hi = delta;
                delta = (lo + *hi) / 2.0;
            }
            res.per_step.push_back(rec);
        }

        res.delta_lower = lo;
        if (q.integer_grid) {
            for (FloatT w : witness_radii)
                for (FloatT c : clean_radii)
                    if (std::floor(w) == std::ceil(c))
                        res.proven_exact = true;
        }
        return res;
    }

    StressResult stress_max(const Ensemble& ensemble, const SearchConfig& scfg,
            const MergeConfig& mcfg)
    {
        StressResult out;
        SearchProblem problem;
        problem.ensemble = &ensemble;
        out.ours = run_search(problem, scfg).trace;
        out.baseline = run_merge(ensemble, Box::everything(), mcfg);
        return out;
    }

    namespace {

        struct Reachability {
            int total = 0;
            int reachable = 0;
            bool every_tree_alive = true;

            FloatT fraction() const
            {
                return total == 0 ? 1.0
                    : static_cast<FloatT>(reachable) / static_cast<FloatT>(total);
            }
        };

        Reachability measure_reachability(const Ensemble& ensemble, const Box& box)
        {
            Reachability r;
            for (int m = 0; m < ensemble.num_trees(); ++m) {
                const Tree& t = ensemble.tree(m);
                int alive = 0;
                for (int l = 0; l < t.num_leaves(); ++l) {
                    ++r.total;
                    if (boxes_overlap(t.leaf_box(l), box)) {
                        ++r.reachable;
                        ++alive;
                    }
                }
                if (alive == 0)
                    r.every_tree_alive = false;
            }
            return r;
        }

        std::vector<std::vector<FloatT>> split_thresholds(const Ensemble& ensemble)
        {
            std::vector<std::set<FloatT>> sets(ensemble.num_attributes());
            for (int m = 0; m < ensemble.num_trees(); ++m) {
                const Tree& t = ensemble.tree(m);
                for (NodeId id = 0; id < t.num_nodes(); ++id)
                    if (t.is_internal(id))
                        sets[t.split_attr(id)].insert(t.split_threshold(id));
            }
            std::vector<std::vector<FloatT>> out(sets.size());
            for (size_t a = 0; a < sets.size(); ++a)
                out[a].assign(sets[a].begin(), sets[a].end());
            return out;
        }

        Box replace_interval(const Box& box, AttrId attr,
                std::optional<Interval> iv)
        {
            std::vector<Box::Item> items;
            for (const auto& it : box)
                if (it.first != attr)
                    items.push_back(it);
            if (iv.has_value() && !iv->is_everything())
                items.push_back({attr, *iv});
            return Box::from_items(std::move(items));
        }

    } // namespace

    FloatT reachable_leaf_fraction(const Ensemble& ensemble, const Box& box)
    {
        return measure_reachability(ensemble, box).fraction();
    }

    RandomTaskSpec generate_random_task(const Ensemble& ensemble,
            FloatT target_fraction, std::uint64_t seed)
    {
        if (!(target_fraction > 0.0) || target_fraction > 1.0)
            throw std::invalid_argument("target_fraction must be in (0, 1]");
        if (ensemble.num_trees() == 0)
            throw std::invalid_argument("ensemble has no trees");

        const FloatT band = 0.05;
        auto thresholds = split_thresholds(ensemble);
        std::vector<AttrId> splittable;
        for (size_t a = 0; a < thresholds.size(); ++a)
            if (!thresholds[a].empty())
                splittable.push_back(static_cast<AttrId>(a));

        std::mt19937_64 rng(seed);
        auto pick = [&rng](size_t lo, size_t hi) { // inclusive range
            return std::uniform_int_distribution<size_t>(lo, hi)(rng);
        };

        Box box = Box::everything();
        FloatT frac = reachable_leaf_fraction(ensemble, box);

        const int max_rounds = 4000;
        for (int round = 0; round < max_rounds; ++round) {
            if (std::fabs(frac - target_fraction) <= band)
                return RandomTaskSpec{box, target_fraction, frac, seed};

            Box cand = box;
            if (frac > target_fraction) {
                // shrink a random attribute to a random inter-threshold range
                if (splittable.empty())
                    break;
                AttrId a = splittable[pick(0, splittable.size() - 1)];
                const auto& ts = thresholds[a];
                size_t points = ts.size() + 2; // -inf, thresholds..., +inf
                size_t u = pick(0, points - 2);
                size_t v = pick(u + 1, points - 1);
                FloatT lo = (u == 0) ? -FLOAT_INF : ts[u - 1];
                FloatT hi = (v == points - 1) ? FLOAT_INF : ts[v - 1];
                if (lo == -FLOAT_INF && hi == FLOAT_INF)
                    continue;
                if (!cand.refine(a, Interval(lo, hi)))
                    continue; // empties the region
            } else {
                // widen a constrained attribute by one threshold step
                std::vector<Box::Item> items(box.begin(), box.end());
                if (items.empty())
                    continue; // nothing to widen (cannot happen: frac would be 1)
                const auto& [a, iv] = items[pick(0, items.size() - 1)];
                const auto& ts = thresholds[a];
                Interval wider = iv;
                if (pick(0, 1) == 0) {
                    auto it = std::lower_bound(ts.begin(), ts.end(), iv.lo);
                    wider.lo = (it == ts.begin()) ? -FLOAT_INF : *std::prev(it);
                } else {
                    auto it = std::upper_bound(ts.begin(), ts.end(), iv.hi);
                    wider.hi = (it == ts.end()) ? FLOAT_INF : *it;
                }
                if (wider == iv)
                    wider = Interval::everything(); // side already at the edge
                cand = replace_interval(box, a,
                        wider.is_everything() ? std::nullopt
                                              : std::optional<Interval>(wider));
            }

            Reachability r = measure_reachability(ensemble, cand);
            if (!r.every_tree_alive)
                continue;
            FloatT cf = r.fraction();
            if (std::fabs(cf - target_fraction) <= std::fabs(frac - target_fraction)) {
                box = std::move(cand);
                frac = cf;
            }
        }

        if (std::fabs(frac - target_fraction) <= band)
            return RandomTaskSpec{box, target_fraction, frac, seed};
        throw GenerationFailed("could not reach the target leaf fraction");
    }

    namespace {

        void fill_gap(const BoundsTrace& trace, FloatT& gap, bool& degenerate)
        {
            FloatT ub = trace.final_upper();
            FloatT lb = trace.final_lower();
            if (!std::isfinite(ub) || !std::isfinite(lb) || std::fabs(ub) < 1e-12) {
                gap = 0.0;
                degenerate = true;
                return;
            }
            gap = (ub - lb) / std::fabs(ub);
            degenerate = false;
        }

    } // namespace

    Metrics compute_metrics(const BoundsTrace& ours, const BoundsTrace& baseline)
    {
        Metrics m;
        FloatT target = baseline.final_upper();
        for (const TraceEntry& e : ours.entries) {
            if (e.upper <= target) {
                m.ttb = e.t;
                break;
            }
        }
        fill_gap(ours, m.gap_ours, m.degenerate_ours);
        fill_gap(baseline, m.gap_baseline, m.degenerate_baseline);
        m.exact_ours = ours.status == Status::EXACT;
        m.exact_baseline = baseline.status == Status::EXACT;
        return m;
    }

} // namespace treeverify
