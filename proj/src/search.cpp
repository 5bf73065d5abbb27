/**
 * \file search.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace treeverify {

    std::optional<FloatT> suboptimality_bound(const Solution& sol)
    {
        if (!(sol.value > 0.0))
            return {};
        return sol.value / sol.epsilon_at_discovery;
    }

    const Solution* SearchResult::best() const
    {
        const Solution* best = nullptr;
        for (const Solution& s : solutions)
            if (!best || s.value > best->value)
                best = &s;
        return best;
    }

    namespace {

        std::vector<int> expansion_order(const KPartiteGraph& graph,
                SearchConfig::TreeOrder order)
        {
            std::vector<int> out(graph.num_sets());
            for (size_t i = 0; i < out.size(); ++i)
                out[i] = static_cast<int>(i);
            if (order == SearchConfig::TreeOrder::BY_VALUE_SPREAD) {
                std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
                    const auto& sa = graph.set(a);
                    const auto& sb = graph.set(b);
                    // sets are sorted by non-increasing value
                    FloatT spread_a = sa.front().value - sa.back().value;
                    FloatT spread_b = sb.front().value - sb.back().value;
                    return spread_a > spread_b;
                });
            }
            return out;
        }

        struct Remaining {
            FloatT h;   // plain sum of the per-set extreme values
            FloatT acc; // those values folded onto the accumulator
        };

        /** Best still-compatible leaf per remaining set (max variant). */
        std::optional<Remaining> remaining_max(const KPartiteGraph& graph,
                const std::vector<int>& order, size_t from, const Box& box,
                FloatT acc0)
        {
            FloatT h = 0.0, acc = acc0;
            for (size_t d = from; d < order.size(); ++d) {
                const auto& set = graph.set(order[d]);
                const Vertex* pick = nullptr;
                for (const Vertex& v : set) {
                    if (boxes_overlap(box, v.box)) { pick = &v; break; }
                }
                if (!pick)
                    return {};
                h += pick->value;
                acc += pick->value;
            }
            return Remaining{h, acc};
        }

        /** Worst still-compatible leaf per remaining set (min variant). */
        std::optional<Remaining> remaining_min(const KPartiteGraph& graph,
                const std::vector<int>& order, size_t from, const Box& box,
                FloatT acc0)
        {
            FloatT h = 0.0, acc = acc0;
            for (size_t d = from; d < order.size(); ++d) {
                const auto& set = graph.set(order[d]);
                const Vertex* pick = nullptr;
                for (auto it = set.rbegin(); it != set.rend(); ++it) {
                    if (boxes_overlap(box, it->box)) { pick = &*it; break; }
                }
                if (!pick)
                    return {};
                h += pick->value;
                acc += pick->value;
            }
            return Remaining{h, acc};
        }

        /** Fold (tree, value) pairs in tree order on top of base; bit-equal
         * to Ensemble::eval for the same leaf selection. */
        FloatT fold_in_tree_order(FloatT base,
                std::vector<std::pair<int, FloatT>> tree_values)
        {
            std::sort(tree_values.begin(), tree_values.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
            FloatT sum = 0.0;
            for (const auto& [tree, value] : tree_values)
                sum += value;
            return base + sum;
        }

    } // namespace

    SearchContext::SearchContext(KPartiteGraph graph, Box root_box,
            ConstraintPtr constraint, int num_attributes,
            SearchConfig::TreeOrder order)
        : graph_(std::move(graph)), root_box_(std::move(root_box)),
          constraint_(std::move(constraint)), num_attributes_(num_attributes),
          order_(expansion_order(graph_, order))
    {}

    std::optional<SearchContext> SearchContext::create(const Ensemble& ensemble,
            const Box& prune, ConstraintPtr constraint,
            SearchConfig::TreeOrder order)
    {
        if (ensemble.num_trees() == 0)
            throw std::invalid_argument("ensemble has no trees");
        Box region = prune;
        if (constraint) {
            auto isect = box_intersect(region, constraint->prune_box());
            if (!isect.has_value())
                return {};
            region = std::move(*isect);
        }
        auto graph = build_graph(ensemble, region);
        if (!graph.has_value())
            return {};
        return SearchContext(std::move(*graph), std::move(region),
                std::move(constraint), ensemble.num_attributes(), order);
    }

    std::optional<SearchState> SearchContext::root() const
    {
        if (constraint_ && !constraint_->accepts(root_box_))
            return {};
        auto rem = remaining_max(graph_, order_, 0, root_box_, 0.0);
        if (!rem.has_value())
            return {};
        SearchState s;
        s.box = root_box_;
        s.g = 0.0;
        s.h = rem->h;
        s.fbound = graph_.base_score() + rem->acc;
        s.depth = 0;
        return s;
    }

    std::vector<SearchState> SearchContext::expand(const SearchState& state) const
    {
        if (state.depth >= num_trees())
            throw std::invalid_argument("cannot expand a full-depth state");
        std::vector<SearchState> children;
        const auto& set = graph_.set(order_[state.depth]);
        for (size_t i = 0; i < set.size(); ++i) {
            const Vertex& v = set[i];
            auto box = box_intersect(state.box, v.box);
            if (!box.has_value())
                continue;
            if (constraint_ && !constraint_->accepts(*box))
                continue;
            FloatT g = state.g + v.value;
            auto rem = remaining_max(graph_, order_, state.depth + 1, *box, g);
            if (!rem.has_value())
                continue; // some remaining tree has no compatible leaf
            SearchState c;
            c.vertices = state.vertices;
            c.vertices.push_back(static_cast<int>(i));
            c.box = std::move(*box);
            c.g = g;
            c.h = rem->h;
            c.fbound = graph_.base_score() + rem->acc;
            c.depth = state.depth + 1;
            children.push_back(std::move(c));
        }
        return children;
    }

    FloatT SearchContext::heuristic(const SearchState& state) const
    {
        auto rem = remaining_max(graph_, order_, state.depth, state.box, 0.0);
        return rem.has_value() ? rem->h : -FLOAT_INF;
    }

    std::vector<std::pair<int, int>> SearchContext::selection(const SearchState& state) const
    {
        std::vector<std::pair<int, int>> sel;
        sel.reserve(state.vertices.size());
        for (size_t d = 0; d < state.vertices.size(); ++d) {
            const Vertex& v = graph_.set(order_[d])[state.vertices[d]];
            sel.push_back(v.origin.front());
        }
        std::sort(sel.begin(), sel.end());
        return sel;
    }

    FloatT SearchContext::exact_value(const SearchState& state) const
    {
        if (state.depth != num_trees())
            throw std::invalid_argument("state does not cover every tree");
        std::vector<std::pair<int, FloatT>> values;
        values.reserve(state.vertices.size());
        for (size_t d = 0; d < state.vertices.size(); ++d) {
            const Vertex& v = graph_.set(order_[d])[state.vertices[d]];
            values.push_back({v.origin.front().first, v.value});
        }
        return fold_in_tree_order(graph_.base_score(), std::move(values));
    }

    PairContext::PairContext(KPartiteGraph g1, KPartiteGraph g2, Box root1,
            Box root2, JointConstraintPtr constraint, int na1, int na2,
            SearchConfig::TreeOrder order)
        : graph1_(std::move(g1)), graph2_(std::move(g2)),
          root1_(std::move(root1)), root2_(std::move(root2)),
          constraint_(std::move(constraint)),
          num_attributes1_(na1), num_attributes2_(na2),
          order1_(expansion_order(graph1_, order)),
          order2_(expansion_order(graph2_, order))
    {}

    std::optional<PairContext> PairContext::create(const Ensemble& ensemble1,
            const Ensemble& ensemble2, const Box& prune1, const Box& prune2,
            JointConstraintPtr constraint, SearchConfig::TreeOrder order)
    {
        if (ensemble1.num_trees() == 0 || ensemble2.num_trees() == 0)
            throw std::invalid_argument("ensemble has no trees");
        Box region1 = prune1, region2 = prune2;
        if (constraint) {
            auto i1 = box_intersect(region1, constraint->prune_box1());
            auto i2 = box_intersect(region2, constraint->prune_box2());
            if (!i1.has_value() || !i2.has_value())
                return {};
            region1 = std::move(*i1);
            region2 = std::move(*i2);
        }
        auto g1 = build_graph(ensemble1, region1);
        auto g2 = build_graph(ensemble2, region2);
        if (!g1.has_value() || !g2.has_value())
            return {};
        return PairContext(std::move(*g1), std::move(*g2),
                std::move(region1), std::move(region2), std::move(constraint),
                ensemble1.num_attributes(), ensemble2.num_attributes(), order);
    }

    std::optional<PairState> PairContext::root() const
    {
        if (constraint_ && !constraint_->accepts(root1_, root2_))
            return {};
        auto rem1 = remaining_min(graph1_, order1_, 0, root1_, 0.0);
        auto rem2 = remaining_max(graph2_, order2_, 0, root2_, 0.0);
        if (!rem1.has_value() || !rem2.has_value())
            return {};
        PairState s;
        s.box1 = root1_;
        s.box2 = root2_;
        s.h1 = rem1->h;
        s.h2 = rem2->h;
        s.fb1 = graph1_.base_score() + rem1->acc;
        s.fb2 = graph2_.base_score() + rem2->acc;
        return s;
    }

    int PairContext::next_instance(const PairState& s) const
    {
        if (s.depth1 < num_trees1() && (s.depth1 <= s.depth2 || s.depth2 == num_trees2()))
            return 1;
        return 2;
    }

    std::vector<PairState> PairContext::expand(const PairState& state) const
    {
        if (state.depth1 == num_trees1() && state.depth2 == num_trees2())
            throw std::invalid_argument("cannot expand a full-depth state");
        std::vector<PairState> children;
        if (next_instance(state) == 1) {
            const auto& set = graph1_.set(order1_[state.depth1]);
            for (size_t i = 0; i < set.size(); ++i) {
                const Vertex& v = set[i];
                auto box = box_intersect(state.box1, v.box);
                if (!box.has_value())
                    continue;
                if (constraint_ && !constraint_->accepts(*box, state.box2))
                    continue;
                FloatT g = state.g1 + v.value;
                auto rem = remaining_min(graph1_, order1_, state.depth1 + 1, *box, g);
                if (!rem.has_value())
                    continue;
                PairState c = state;
                c.vertices1.push_back(static_cast<int>(i));
                c.box1 = std::move(*box);
                c.g1 = g;
                c.h1 = rem->h;
                c.fb1 = graph1_.base_score() + rem->acc;
                c.depth1 = state.depth1 + 1;
                children.push_back(std::move(c));
            }
        } else {
            const auto& set = graph2_.set(order2_[state.depth2]);
            for (size_t i = 0; i < set.size(); ++i) {
                const Vertex& v = set[i];
                auto box = box_intersect(state.box2, v.box);
                if (!box.has_value())
                    continue;
                if (constraint_ && !constraint_->accepts(state.box1, *box))
                    continue;
                FloatT g = state.g2 + v.value;
                auto rem = remaining_max(graph2_, order2_, state.depth2 + 1, *box, g);
                if (!rem.has_value())
                    continue;
                PairState c = state;
                c.vertices2.push_back(static_cast<int>(i));
                c.box2 = std::move(*box);
                c.g2 = g;
                c.h2 = rem->h;
                c.fb2 = graph2_.base_score() + rem->acc;
                c.depth2 = state.depth2 + 1;
                children.push_back(std::move(c));
            }
        }
        return children;
    }

    FloatT PairContext::heuristic(const PairState& state) const
    {
        auto rem1 = remaining_min(graph1_, order1_, state.depth1, state.box1, 0.0);
        auto rem2 = remaining_max(graph2_, order2_, state.depth2, state.box2, 0.0);
        if (!rem1.has_value() || !rem2.has_value())
            return -FLOAT_INF;
        return rem2->h - rem1->h;
    }

    FloatT PairContext::exact_value(const PairState& state) const
    {
        if (state.depth1 != num_trees1() || state.depth2 != num_trees2())
            throw std::invalid_argument("state does not cover every tree");
        std::vector<std::pair<int, FloatT>> v1, v2;
        for (size_t d = 0; d < state.vertices1.size(); ++d) {
            const Vertex& v = graph1_.set(order1_[d])[state.vertices1[d]];
            v1.push_back({v.origin.front().first, v.value});
        }
        for (size_t d = 0; d < state.vertices2.size(); ++d) {
            const Vertex& v = graph2_.set(order2_[d])[state.vertices2[d]];
            v2.push_back({v.origin.front().first, v.value});
        }
        return fold_in_tree_order(graph2_.base_score(), std::move(v2))
             - fold_in_tree_order(graph1_.base_score(), std::move(v1));
    }

    namespace {

        struct SingleAdapter {
            const SearchContext& ctx;
            using State = SearchState;

            std::optional<State> make_root() const { return ctx.root(); }
            std::vector<State> expand(const State& s) const { return ctx.expand(s); }
            bool is_goal(const State& s) const { return s.depth == ctx.num_trees(); }
            int depth(const State& s) const { return s.depth; }
            FloatT fbound(const State& s) const { return s.fbound; }
            FloatT forder(const State& s, FloatT eps) const { return s.g + eps * s.h; }

            Solution make_solution(const State& s, FloatT eps) const
            {
                Solution sol;
                sol.value = ctx.exact_value(s);
                sol.box = s.box;
                sol.witness = extract_witness(s.box, ctx.num_attributes());
                sol.epsilon_at_discovery = eps;
                return sol;
            }

            size_t payload_bytes(const State& s) const
            {
                return s.vertices.capacity() * sizeof(int)
                    + s.box.size() * sizeof(Box::Item);
            }

            void release(State& s) const
            {
                s.vertices = {};
                s.box = {};
            }
        };

        struct PairAdapter {
            const PairContext& ctx;
            using State = PairState;

            std::optional<State> make_root() const { return ctx.root(); }
            std::vector<State> expand(const State& s) const { return ctx.expand(s); }
            bool is_goal(const State& s) const
            {
                return s.depth1 == ctx.num_trees1() && s.depth2 == ctx.num_trees2();
            }
            int depth(const State& s) const { return s.depth1 + s.depth2; }
            FloatT fbound(const State& s) const { return s.fb2 - s.fb1; }
            FloatT forder(const State& s, FloatT eps) const
            {
                return (s.g2 - s.g1) + eps * (s.h2 - s.h1);
            }

            Solution make_solution(const State& s, FloatT eps) const
            {
                Solution sol;
                sol.value = ctx.exact_value(s);
                sol.box = s.box1;
                sol.witness = extract_witness(s.box1, ctx.num_attributes1());
                sol.epsilon_at_discovery = eps;
                sol.box2 = s.box2;
                sol.witness2 = extract_witness(s.box2, ctx.num_attributes2());
                return sol;
            }

            size_t payload_bytes(const State& s) const
            {
                return (s.vertices1.capacity() + s.vertices2.capacity()) * sizeof(int)
                    + (s.box1.size() + s.box2.size()) * sizeof(Box::Item);
            }

            void release(State& s) const
            {
                s.vertices1 = {};
                s.vertices2 = {};
                s.box1 = {};
                s.box2 = {};
            }
        };

        void validate_config(const SearchConfig& cfg)
        {
            if (!(cfg.epsilon_start > 0.0) || cfg.epsilon_start > 1.0)
                throw std::invalid_argument("epsilon_start must be in (0, 1]");
            if (cfg.epsilon_step < 0.0)
                throw std::invalid_argument("epsilon_step must be non-negative");
        }

        template <typename Adapter>
        SearchResult run_engine(const Adapter& ad, const SearchConfig& cfg)
        {
            using State = typename Adapter::State;
            validate_config(cfg);

            SearchResult res;
            Stopwatch clock;

            struct Rec {
                State st;
                bool expanded = false;
            };
            std::vector<Rec> arena;
            FloatT eps = cfg.epsilon_start;

            // Pop order: weighted f, deeper states first on ties, FIFO after
            // that. The arena index is the insertion sequence number.
            auto wless = [&](size_t a, size_t b) {
                FloatT fa = ad.forder(arena[a].st, eps);
                FloatT fb = ad.forder(arena[b].st, eps);
                if (fa != fb) return fa < fb;
                int da = ad.depth(arena[a].st);
                int db = ad.depth(arena[b].st);
                if (da != db) return da < db;
                return a > b;
            };
            // The unweighted bound heap is only peeked at; expanded entries
            // are dropped lazily. Its order never changes with eps.
            auto uless = [&](size_t a, size_t b) {
                FloatT fa = ad.fbound(arena[a].st);
                FloatT fb = ad.fbound(arena[b].st);
                if (fa != fb) return fa < fb;
                return a > b;
            };

            std::vector<size_t> wheap, uheap;
            size_t cur_mem = 0;

            auto push_state = [&](State&& s) {
                cur_mem += sizeof(Rec) + 2 * sizeof(size_t) + ad.payload_bytes(s);
                arena.push_back(Rec{std::move(s), false});
                size_t i = arena.size() - 1;
                wheap.push_back(i);
                std::push_heap(wheap.begin(), wheap.end(), wless);
                uheap.push_back(i);
                std::push_heap(uheap.begin(), uheap.end(), uless);
            };

            auto open_upper = [&]() -> FloatT {
                while (!uheap.empty() && arena[uheap.front()].expanded) {
                    std::pop_heap(uheap.begin(), uheap.end(), uless);
                    uheap.pop_back();
                }
                return uheap.empty() ? -FLOAT_INF : ad.fbound(arena[uheap.front()].st);
            };

            std::optional<Solution> best;

            auto record = [&](bool force) {
                FloatT lb = best.has_value() ? best->value : -FLOAT_INF;
                FloatT ub = std::max(lb, open_upper());
                ub = std::min(ub, res.trace.final_upper());
                lb = std::max(lb, res.trace.final_lower());
                lb = std::min(lb, ub);
                if (!force && !(ub < res.trace.final_upper() || lb > res.trace.final_lower()))
                    return;
                TraceEntry e;
                e.t = clock.seconds();
                e.upper = ub;
                e.lower = lb;
                if (best.has_value()) {
                    e.witness = best->witness;
                    e.witness2 = best->witness2;
                }
                res.trace.record(std::move(e));
            };

            auto root = ad.make_root();
            if (!root.has_value()) {
                res.trace.status = Status::INFEASIBLE;
                return res;
            }
            push_state(std::move(*root));
            record(true);

            Status status;
            while (true) {
                if (clock.seconds() >= cfg.time_budget_s) { status = Status::TIMEOUT; break; }
                if (res.num_expansions >= cfg.node_budget) { status = Status::TIMEOUT; break; }
                if (cur_mem > cfg.memory_budget_bytes) { status = Status::MEMORY; break; }
                if (wheap.empty()) {
                    status = best.has_value() ? Status::EXACT : Status::INFEASIBLE;
                    break;
                }

                std::pop_heap(wheap.begin(), wheap.end(), wless);
                size_t si = wheap.back();
                wheap.pop_back();
                Rec& rec = arena[si];
                rec.expanded = true;

                if (ad.is_goal(rec.st)) {
                    Solution sol = ad.make_solution(rec.st, eps);
                    cur_mem -= ad.payload_bytes(rec.st);
                    ad.release(rec.st);
                    // With negative leaf values, value/eps alone can fall
                    // below the true optimum (the classic ratio guarantee
                    // needs non-negative costs). Clamp the discovery epsilon
                    // so value/eps recovers a bound that provably holds right
                    // now: nothing unexplored beats the open states' f. The
                    // quotient is nudged down one float step so the division
                    // round-trip can never land below that bound.
                    FloatT prev = best.has_value() ? best->value : -FLOAT_INF;
                    FloatT ub_now = std::max(std::max(sol.value, prev), open_upper());
                    if (sol.value > 0.0 && sol.value < ub_now)
                        sol.epsilon_at_discovery = std::min(eps,
                                std::nextafter(sol.value / ub_now, 0.0));
                    res.solutions.push_back(sol);
                    if (!best.has_value() || sol.value > best->value)
                        best = std::move(sol);
                    FloatT next_eps = std::min<FloatT>(1.0, eps + cfg.epsilon_step);
                    if (next_eps != eps) {
                        eps = next_eps;
                        std::make_heap(wheap.begin(), wheap.end(), wless);
                    }
                } else {
                    std::vector<State> children = ad.expand(rec.st);
                    ++res.num_expansions;
                    cur_mem -= ad.payload_bytes(rec.st);
                    ad.release(rec.st);
                    for (State& c : children)
                        push_state(std::move(c));
                }

                record(false);
                if (best.has_value() && best->value >= open_upper()) {
                    status = Status::EXACT;
                    break;
                }
            }

            record(true);
            res.trace.status = status;
            return res;
        }

        void negate_result_in_place(SearchResult& res)
        {
            res.trace = negated_trace(res.trace);
            for (Solution& s : res.solutions)
                s.value = -s.value;
        }

    } // namespace

    SearchResult run_search(const SearchProblem& problem, const SearchConfig& config)
    {
        if (problem.ensemble == nullptr)
            throw std::invalid_argument("search problem has no ensemble");

        const Ensemble* ens = problem.ensemble;
        Ensemble negated(1);
        if (problem.sense == Sense::MINIMIZE) {
            negated = ens->negated();
            ens = &negated;
        }

        std::optional<SearchContext> ctx;
        try {
            ctx = SearchContext::create(*ens, problem.prune, problem.constraint,
                    config.tree_order);
        } catch (const InfeasibleConstraint&) {
            // contradictory constraint conjunction: nothing to search
        }
        if (!ctx.has_value()) {
            SearchResult res;
            res.trace.status = Status::INFEASIBLE;
            return res;
        }

        SearchResult res = run_engine(SingleAdapter{*ctx}, config);
        if (problem.sense == Sense::MINIMIZE)
            negate_result_in_place(res);
        return res;
    }

    SearchResult run_search_two_instance(const PairProblem& problem,
            const SearchConfig& config)
    {
        if (problem.ensemble1 == nullptr || problem.ensemble2 == nullptr)
            throw std::invalid_argument("pair problem needs two ensembles");

        std::optional<PairContext> ctx;
        try {
            ctx = PairContext::create(*problem.ensemble1, *problem.ensemble2,
                    problem.prune1, problem.prune2, problem.constraint,
                    config.tree_order);
        } catch (const InfeasibleConstraint&) {
        }
        if (!ctx.has_value()) {
            SearchResult res;
            res.trace.status = Status::INFEASIBLE;
            return res;
        }
        return run_engine(PairAdapter{*ctx}, config);
    }

} // namespace treeverify
