/**
 * \file test_bounds.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treeverify/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace treeverify;

TEST_CASE("status names") {
    CHECK(std::string(to_string(Status::EXACT)) == "EXACT");
    CHECK(std::string(to_string(Status::TIMEOUT)) == "TIMEOUT");
    CHECK(std::string(to_string(Status::MEMORY)) == "MEMORY");
    CHECK(std::string(to_string(Status::INFEASIBLE)) == "INFEASIBLE");
    std::ostringstream ss;
    ss << Status::EXACT;
    CHECK(ss.str() == "EXACT");
}

TEST_CASE("empty trace reports unbounded finals") {
    BoundsTrace tr;
    CHECK(tr.empty());
    CHECK(tr.final_upper() == FLOAT_INF);
    CHECK(tr.final_lower() == -FLOAT_INF);
    CHECK_FALSE(tr.final_witness().has_value());
    CHECK(tr.status == Status::TIMEOUT); // default until a driver decides
}

TEST_CASE("record keeps entries and finals") {
    BoundsTrace tr;
    tr.record({0.1, 10.0, 1.0, Example{1.0}, {}});
    tr.record({0.2, 8.0, 3.0, Example{2.0}, {}});
    CHECK(tr.entries.size() == 2);
    CHECK(tr.final_upper() == 8.0);
    CHECK(tr.final_lower() == 3.0);
    REQUIRE(tr.final_witness().has_value());
    CHECK(*tr.final_witness() == Example{2.0});
}

TEST_CASE("record rejects a crossed bound") {
    BoundsTrace tr;
    CHECK_THROWS_AS(tr.record({0.0, 1.0, 2.0, {}, {}}), std::runtime_error);
    // equality is fine
    tr.record({0.0, 5.0, 5.0, {}, {}});
    CHECK(tr.entries.size() == 1);
}

TEST_CASE("record rejects non-monotone bound sequences") {
    BoundsTrace tr;
    tr.record({0.0, 10.0, 1.0, {}, {}});
    CHECK_THROWS_AS(tr.record({1.0, 11.0, 1.0, {}, {}}), std::runtime_error); // upper up
    CHECK_THROWS_AS(tr.record({1.0, 10.0, 0.5, {}, {}}), std::runtime_error); // lower down
    // repeating the same bounds is allowed (terminal entries do this)
    tr.record({1.0, 10.0, 1.0, {}, {}});
    CHECK(tr.entries.size() == 2);
}

TEST_CASE("timestamps are strictly increasing even when the clock stalls") {
    BoundsTrace tr;
    tr.record({0.5, 10.0, 1.0, {}, {}});
    tr.record({0.5, 9.0, 1.0, {}, {}});  // same clock reading
    tr.record({0.25, 8.0, 1.0, {}, {}}); // clock apparently went backwards
    REQUIRE(tr.entries.size() == 3);
    CHECK(tr.entries[0].t < tr.entries[1].t);
    CHECK(tr.entries[1].t < tr.entries[2].t);
    // the nudge is the smallest possible: one float step
    CHECK(tr.entries[1].t == std::nextafter(0.5, FLOAT_INF));
}

TEST_CASE("infinite initial bounds are representable") {
    BoundsTrace tr;
    tr.record({0.0, FLOAT_INF, -FLOAT_INF, {}, {}});
    tr.record({1.0, 3.0, -FLOAT_INF, {}, {}});
    tr.record({2.0, 3.0, 3.0, {}, {}});
    CHECK(tr.final_upper() == 3.0);
    CHECK(tr.final_lower() == 3.0);
}

TEST_CASE("negating a trace swaps and flips the bounds") {
    BoundsTrace tr;
    tr.status = Status::EXACT;
    tr.record({0.1, 10.0, -2.0, Example{7.0}, {}});
    tr.record({0.2, 5.0, 5.0, Example{8.0}, Example{9.0}});

    BoundsTrace neg = negated_trace(tr);
    CHECK(neg.status == Status::EXACT);
    REQUIRE(neg.entries.size() == 2);
    CHECK(neg.entries[0].upper == 2.0);
    CHECK(neg.entries[0].lower == -10.0);
    CHECK(neg.entries[1].upper == -5.0);
    CHECK(neg.entries[1].lower == -5.0);
    // timestamps and witnesses carry over untouched
    CHECK(neg.entries[0].t == 0.1);
    CHECK(neg.entries[1].t == 0.2);
    REQUIRE(neg.entries[0].witness.has_value());
    CHECK(*neg.entries[0].witness == Example{7.0});
    REQUIRE(neg.entries[1].witness2.has_value());
    CHECK(*neg.entries[1].witness2 == Example{9.0});
    // the negated trace satisfies the same invariants
    CHECK(negated_trace(neg).entries[0].upper == 10.0);
}

TEST_CASE("stopwatch runs forward") {
    Stopwatch sw;
    double a = sw.seconds();
    double b = sw.seconds();
    CHECK(a >= 0.0);
    CHECK(b >= a);
}
