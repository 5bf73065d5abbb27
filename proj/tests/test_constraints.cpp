/**
 * \file test_constraints.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"
#include "treeverify/constraints.hpp"
#include "treeverify/graph.hpp"

#include <memory>
#include <random>
#include <stdexcept>

using namespace treeverify;
using namespace treeverify::test;

namespace {

    Box binary_box(std::vector<std::pair<AttrId, bool>> fixed)
    {
        Box b;
        for (auto [a, v] : fixed)
            b.refine(a, v ? Interval::at_least(0.5) : Interval::less_than(0.5));
        return b;
    }

} // namespace

TEST_CASE("box constraint: prune box carries the whole condition") {
    Box region = Box::from_items({{0, Interval::open(60.0, FLOAT_INF)}});
    BoxConstraint c(region);
    CHECK(c.prune_box() == region);
    CHECK(c.accepts(Box::everything()));
    CHECK(c.accepts(Box::from_items({{0, Interval::at_least(61.0)}})));
    // overlap test only: a box straddling the region still counts
    CHECK(c.accepts(Box::from_items({{0, Interval{0.0, 62.0}}})));
    CHECK_FALSE(c.accepts(Box::from_items({{0, Interval::less_than(60.0)}})));
}

TEST_CASE("max-norm ball: strictly-open per-attribute intervals") {
    LinfBallConstraint ball({60.0}, 5.0);
    CHECK(ball.delta() == 5.0);
    CHECK(ball.center() == Example{60.0});
    Box b = ball.prune_box();
    // (55, 65) on the float grid: 55 itself is outside
    CHECK_FALSE(b.get(0).contains(55.0));
    CHECK(b.get(0).contains(55.001));
    CHECK(b.get(0).contains(64.999));
    CHECK_FALSE(b.get(0).contains(65.0));

    LinfBallConstraint ball2({0.0, 10.0}, 1.0);
    CHECK(ball2.prune_box().size() == 2);
    CHECK(ball2.prune_box().get(1).contains(9.5));
    CHECK_FALSE(ball2.prune_box().get(1).contains(11.0));

    CHECK_THROWS_AS(LinfBallConstraint({0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(LinfBallConstraint({0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("at-most-k: counts only attributes flipped on beyond the baseline") {
    // baseline: attribute 2 already true
    AtMostKConstraint c({0, 1, 2}, 1, {0.0, 0.0, 1.0});

    CHECK(c.accepts(Box::everything()));           // nothing forced yet
    CHECK(c.accepts(binary_box({{0, true}})));     // one flip: fine
    CHECK(c.accepts(binary_box({{0, true}, {2, true}}))); // baseline-true free
    CHECK_FALSE(c.accepts(binary_box({{0, true}, {1, true}}))); // two flips
    // forcing attributes off never violates the budget
    CHECK(c.accepts(binary_box({{0, false}, {1, false}, {2, false}})));
}

TEST_CASE("at-most-zero forbids any flip") {
    AtMostKConstraint c({0, 1}, 0, {0.0, 0.0});
    CHECK(c.accepts(Box::everything()));
    CHECK_FALSE(c.accepts(binary_box({{0, true}})));
    CHECK_FALSE(c.accepts(binary_box({{1, true}})));
    CHECK(c.accepts(binary_box({{0, false}, {1, false}})));
}

TEST_CASE("at-most-k: rejection is monotone under refinement") {
    std::mt19937_64 rng(17);
    const int n = 6;
    for (int rep = 0; rep < 200; ++rep) {
        Example baseline(n, 0.0);
        for (FloatT& v : baseline)
            v = (rng() % 2) ? 1.0 : 0.0;
        AtMostKConstraint c({0, 1, 2, 3, 4, 5},
                static_cast<int>(rng() % 3), baseline);
        // force attributes one at a time; once rejected, stay rejected
        Box b;
        bool rejected = false;
        for (int step = 0; step < 10; ++step) {
            AttrId a = static_cast<AttrId>(rng() % n);
            Interval iv = (rng() % 2) ? Interval::at_least(0.5)
                                      : Interval::less_than(0.5);
            if (!b.refine(a, iv))
                continue; // contradictory forcing, skip
            bool ok = c.accepts(b);
            if (rejected)
                CHECK_FALSE(ok);
            rejected = !ok;
        }
    }
}

TEST_CASE("at-most-k validates its arguments") {
    CHECK_THROWS_AS(AtMostKConstraint({0}, -1, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AtMostKConstraint({3}, 1, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AtMostKConstraint({-1}, 1, {0.0}), std::invalid_argument);
}

TEST_CASE("one-out-of-k: exactly one attribute per group") {
    OneOutOfKConstraint c({{0, 1, 2}});
    CHECK(c.accepts(Box::everything()));
    CHECK(c.accepts(binary_box({{0, true}})));
    CHECK(c.accepts(binary_box({{0, true}, {1, false}, {2, false}})));
    CHECK_FALSE(c.accepts(binary_box({{0, true}, {1, true}})));       // two on
    CHECK_FALSE(c.accepts(binary_box({{0, false}, {1, false}, {2, false}}))); // all off
    // two of three off: the third can still be the one
    CHECK(c.accepts(binary_box({{0, false}, {1, false}})));

    OneOutOfKConstraint two_groups({{0, 1}, {2, 3}});
    CHECK(two_groups.accepts(binary_box({{0, true}, {2, true}})));
    CHECK_FALSE(two_groups.accepts(binary_box({{0, true}, {2, true}, {3, true}})));
    CHECK_FALSE(two_groups.accepts(binary_box({{2, false}, {3, false}})));

    using Groups = std::vector<std::vector<AttrId>>;
    CHECK_THROWS_AS(OneOutOfKConstraint(Groups{{}}), std::invalid_argument);
    CHECK_THROWS_AS(OneOutOfKConstraint(Groups{{-1}}), std::invalid_argument);
}

TEST_CASE("one-out-of-k: rejection is monotone under refinement") {
    std::mt19937_64 rng(18);
    OneOutOfKConstraint c({{0, 1, 2}, {3, 4}});
    for (int rep = 0; rep < 200; ++rep) {
        Box b;
        bool rejected = false;
        for (int step = 0; step < 8; ++step) {
            AttrId a = static_cast<AttrId>(rng() % 5);
            Interval iv = (rng() % 2) ? Interval::at_least(0.5)
                                      : Interval::less_than(0.5);
            if (!b.refine(a, iv))
                continue;
            bool ok = c.accepts(b);
            if (rejected)
                CHECK_FALSE(ok);
            rejected = !ok;
        }
    }
}

TEST_CASE("conjunction: prune boxes intersect, acceptance is the AND") {
    auto ball = std::make_shared<LinfBallConstraint>(Example{60.0}, 5.0);
    auto k = std::make_shared<AtMostKConstraint>(
            std::vector<AttrId>{0}, 0, Example{1.0});
    ConjunctionConstraint c({ball, k});
    // the at-most-k part contributes no prune box
    CHECK(c.prune_box() == ball->prune_box());
    CHECK(c.accepts(Box::everything()));
    CHECK_FALSE(c.accepts(Box::from_items({{0, Interval::less_than(55.0)}})));

    CHECK_THROWS_AS(ConjunctionConstraint({nullptr}), std::invalid_argument);
}

TEST_CASE("conjunction: contradictory prune boxes raise InfeasibleConstraint") {
    auto lo = std::make_shared<BoxConstraint>(
            Box::from_items({{0, Interval::less_than(0.0)}}));
    auto hi = std::make_shared<BoxConstraint>(
            Box::from_items({{0, Interval::at_least(1.0)}}));
    ConjunctionConstraint c({lo, hi});
    CHECK_THROWS_AS(c.prune_box(), InfeasibleConstraint);
}

TEST_CASE("constraints prune the leaf graph") {
    // restricting attribute 0 below 55 removes one leaf from every tree
    Ensemble demo = make_demo3();
    Box prune = Box::from_items({{0, Interval::less_than(55.0)}});
    auto g = build_graph(demo, prune);
    REQUIRE(g.has_value());
    CHECK(g->set(0).size() == 1);
    CHECK(g->set(1).size() == 2);
    CHECK(g->set(2).size() == 2);
    // the removed leaves are exactly those requiring attribute 0 >= 55
    CHECK(g->set(0)[0].value == 0.2);
    for (const Vertex& v : g->set(1))
        CHECK(v.value != 0.4);
    for (const Vertex& v : g->set(2))
        CHECK(v.value != 0.1);
}

TEST_CASE("differs-only: shared attributes must admit a common value") {
    DiffersOnlyConstraint only0({0});
    // boxes differing on attribute 0 only
    Box b1 = Box::from_items({{0, Interval{0.0, 1.0}}, {1, Interval{5.0, 6.0}}});
    Box b2 = Box::from_items({{0, Interval{9.0, 10.0}}, {1, Interval{5.5, 7.0}}});
    CHECK(only0.accepts(b1, b2));
    // now attribute 1 diverges too
    Box b3 = Box::from_items({{0, Interval{9.0, 10.0}}, {1, Interval{6.0, 7.0}}});
    CHECK_FALSE(only0.accepts(b1, b3));
    // an attribute unconstrained on one side cannot exclude a common value
    Box b4 = Box::from_items({{0, Interval{9.0, 10.0}}});
    CHECK(only0.accepts(b1, b4));
    CHECK(only0.accepts(b4, b1));

    // the empty list forces the instances onto a common point everywhere
    DiffersOnlyConstraint none({});
    CHECK_FALSE(none.accepts(b1, b2));
    CHECK(none.accepts(b1, b1));
    CHECK(none.accepts(Box::everything(), b2));
}

TEST_CASE("joint conjunction composes per-instance and joint parts") {
    auto box1 = std::make_shared<BoxConstraint>(
            Box::from_items({{0, Interval::less_than(5.0)}}));
    auto box2 = std::make_shared<BoxConstraint>(
            Box::from_items({{0, Interval::at_least(3.0)}}));
    auto joint = std::make_shared<DiffersOnlyConstraint>(std::vector<AttrId>{1});
    JointConjunction c({box1}, {box2}, {joint});

    CHECK(c.prune_box1() == box1->prune_box());
    CHECK(c.prune_box2() == box2->prune_box());

    // attribute 0 differs but is not in the free list, so the joint part
    // rejects: [0,1) and [3,4) share no value
    Box a = Box::from_items({{0, Interval{0.0, 1.0}}, {2, Interval{0.0, 1.0}}});
    Box b = Box::from_items({{0, Interval{3.0, 4.0}}, {2, Interval{0.5, 2.0}}});
    CHECK_FALSE(joint->accepts(a, b));
    CHECK_FALSE(c.accepts(a, b));

    Box a2 = Box::from_items({{0, Interval{3.0, 4.0}}, {1, Interval{0.0, 1.0}}});
    Box b2 = Box::from_items({{0, Interval{3.5, 5.0}}, {1, Interval{8.0, 9.0}}});
    CHECK(c.accepts(a2, b2)); // differ only on the free attribute 1

    // per-instance part rejects independently of the joint part
    Box far = Box::from_items({{0, Interval::at_least(7.0)}});
    CHECK_FALSE(c.accepts(far, b2));

    CHECK_THROWS_AS(JointConjunction({nullptr}, {}, {}), std::invalid_argument);
}

TEST_CASE("joint conjunction: contradictory per-instance prunes raise") {
    auto lo = std::make_shared<BoxConstraint>(
            Box::from_items({{0, Interval::less_than(0.0)}}));
    auto hi = std::make_shared<BoxConstraint>(
            Box::from_items({{0, Interval::at_least(1.0)}}));
    JointConjunction c({lo, hi}, {}, {});
    CHECK_THROWS_AS(c.prune_box1(), InfeasibleConstraint);
    CHECK(c.prune_box2().is_everything());
}
