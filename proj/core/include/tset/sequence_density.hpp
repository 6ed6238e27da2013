#pragma once

#include "tset/rational.hpp"
#include "tset/window_set.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace tset {

/* Strictly increasing sampling sequence a_1 < a_2 < ... of nonnegative
 * integers; densities are taken along its initial segments. */
class SequenceFamily {
public:
    static SequenceFamily initial_segments(long long count); /* a_k = k */
    static SequenceFamily squares(long long count);          /* a_k = k*k */
    /* a_k = floor(k*sqrt(2) + k^(5/2)), decided by exact integer arithmetic */
    static SequenceFamily sparse_sqrt2(long long count);
    static SequenceFamily custom(std::string label, std::vector<long long> values);

    const std::string& label() const { return label_; }
    const std::vector<long long>& values() const { return values_; }
    long long count() const { return static_cast<long long>(values_.size()); }

private:
    SequenceFamily(std::string label, std::vector<long long> values);
    std::string label_;
    std::vector<long long> values_;
};

struct TracePoint {
    long long n;     /* number of sequence entries consumed */
    long long count; /* hits among the first n entries */
    Rat ratio;       /* count / n */
};

/* hit counts of the set along the family; every sampled value must lie inside
 * the set's window */
std::vector<TracePoint> density_trace(const IntegerWindowSet& set, const SequenceFamily& family);

struct DensityEstimate {
    Rat value;
    bool exact_periodic = false; /* hit increments eventually periodic on the trace */
    long long period = 0;
    long long burn_in = 0;
    long long achieved_n = 0; /* trace point attaining the reported value */
    std::string method;       /* "periodic" or "tail-min" */
};

/* Lower density estimate from a trace.  When the hit increments are periodic
 * with period d past the burn-in (checked for every d up to max_period), the
 * liminf equals the exact per-period hit fraction; otherwise the estimate is
 * the minimum ratio over the tail of the trace.
 * Defaults: burn_in = size/10, max_period = min(sqrt(size/2), 4096). */
DensityEstimate liminf_estimate(const std::vector<TracePoint>& trace, long long burn_in = -1,
                                long long max_period = -1);

/* columns: n,count,ratio_num,ratio_den,ratio_decimal */
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

} // namespace tset
