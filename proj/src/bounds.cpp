/**
 * \file bounds.cpp
 *
 * Copyright 2025 DTAI Research Group - KU Leuven.
 * License: Apache License 2.0
*/

#include "treeverify/bounds.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace treeverify {

    const char* to_string(Status s)
    {
        switch (s) {
            case Status::EXACT: return "EXACT";
            case Status::TIMEOUT: return "TIMEOUT";
            case Status::MEMORY: return "MEMORY";
            case Status::INFEASIBLE: return "INFEASIBLE";
        }
        throw std::runtime_error("invalid status");
    }

    std::ostream& operator<<(std::ostream& s, Status st)
    {
        return s << to_string(st);
    }

    void BoundsTrace::record(TraceEntry e)
    {
        if (!(e.lower <= e.upper))
            throw std::runtime_error("bounds trace: lower exceeds upper");
        if (!entries.empty()) {
            const TraceEntry& prev = entries.back();
            if (e.upper > prev.upper || e.lower < prev.lower)
                throw std::runtime_error("bounds trace: non-monotone bounds");
            if (e.t <= prev.t)
                e.t = std::nextafter(prev.t, FLOAT_INF);
        }
        entries.push_back(std::move(e));
    }

    FloatT BoundsTrace::final_upper() const
    {
        return entries.empty() ? FLOAT_INF : entries.back().upper;
    }

    FloatT BoundsTrace::final_lower() const
    {
        return entries.empty() ? -FLOAT_INF : entries.back().lower;
    }

    const std::optional<Example>& BoundsTrace::final_witness() const
    {
        static const std::optional<Example> none;
        return entries.empty() ? none : entries.back().witness;
    }

    BoundsTrace negated_trace(const BoundsTrace& trace)
    {
        BoundsTrace out;
        out.status = trace.status;
        for (const TraceEntry& e : trace.entries) {
            TraceEntry n;
            n.t = e.t;
            n.upper = -e.lower;
            n.lower = -e.upper;
            n.witness = e.witness;
            n.witness2 = e.witness2;
            out.record(std::move(n));
        }
        return out;
    }

} // namespace treeverify
