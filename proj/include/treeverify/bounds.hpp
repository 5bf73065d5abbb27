/**
 * \file bounds.hpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#ifndef TREEVERIFY_BOUNDS_HPP
#define TREEVERIFY_BOUNDS_HPP

#include "treeverify/box.hpp"

#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace treeverify {

    /** Monotonic wall clock for budgets and trace timestamps. */
    class Stopwatch {
    public:
        Stopwatch() : start_(std::chrono::steady_clock::now()) {}

        double seconds() const
        {
            auto d = std::chrono::steady_clock::now() - start_;
            return std::chrono::duration<double>(d).count();
        }

    private:
        std::chrono::steady_clock::time_point start_;
    };

    /** Why a run stopped. */
    enum class Status {
        EXACT,       // bounds met: the reported value is the true optimum
        TIMEOUT,     // time or node budget exhausted
        MEMORY,      // memory budget would have been exceeded
        INFEASIBLE,  // no output configuration satisfies the constraints
    };

    const char* to_string(Status s);
    std::ostream& operator<<(std::ostream& s, Status st);

    struct TraceEntry {
        double t = 0.0;     // seconds since the start of the run
        FloatT upper = FLOAT_INF;
        FloatT lower = -FLOAT_INF;
        std::optional<Example> witness;   // attains `lower` when present
        std::optional<Example> witness2;  // second instance, two-instance runs
    };

    /**
     * The anytime output of a run: a time series of bounds and how it ended.
     *
     * Invariants: upper is non-increasing, lower is non-decreasing,
     * lower <= upper at every entry, and t is strictly increasing.
     */
    struct BoundsTrace {
        std::vector<TraceEntry> entries;
        Status status = Status::TIMEOUT;

        /**
         * Append an entry, nudging t forward when the clock did not visibly
         * advance so that rows stay strictly ordered in time.
         */
        void record(TraceEntry e);

        bool empty() const { return entries.empty(); }
        /** Final bounds; +-inf when the trace is empty (infeasible runs). */
        FloatT final_upper() const;
        FloatT final_lower() const;
        const std::optional<Example>& final_witness() const;
    };

    /**
     * The trace of the sign-negated objective: upper' = -lower and
     * lower' = -upper per entry; timestamps, witnesses (which now attain the
     * upper bound) and status carry over.
     */
    BoundsTrace negated_trace(const BoundsTrace& trace);

} // namespace treeverify

#endif // TREEVERIFY_BOUNDS_HPP
