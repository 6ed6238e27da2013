#include "tset/sequence_density.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace tset {

namespace {

void require_positive_count(long long count) {
    if (count <= 0) throw std::invalid_argument("sequence must be nonempty");
}

/* m <= sqrt(u) + sqrt(v), all quantities exact */
bool below_sqrt_sum(const Int& m, const Int& u, const Int& v) {
    if (m <= 0) return true;
    Int t = m * m - u - v;
    if (t <= 0) return true;
    return t * t <= 4 * u * v;
}

long long sparse_value(long long k) {
    Int u = Int(2) * Int(k) * Int(k);
    Int v = Int(k) * Int(k) * Int(k) * Int(k) * Int(k);
    double guess_d = std::sqrt(2.0) * static_cast<double>(k) +
                     std::pow(static_cast<double>(k), 2.5);
    Int m = Int(static_cast<long long>(guess_d));
    while (below_sqrt_sum(m + 1, u, v)) ++m;
    while (!below_sqrt_sum(m, u, v)) --m;
    return static_cast<long long>(m);
}

} // namespace

SequenceFamily::SequenceFamily(std::string label, std::vector<long long> values)
    : label_(std::move(label)), values_(std::move(values)) {}

SequenceFamily SequenceFamily::initial_segments(long long count) {
    require_positive_count(count);
    std::vector<long long> values;
    values.reserve(static_cast<std::size_t>(count));
    for (long long k = 1; k <= count; ++k) values.push_back(k);
    return SequenceFamily("initial_segments", std::move(values));
}

SequenceFamily SequenceFamily::squares(long long count) {
    require_positive_count(count);
    std::vector<long long> values;
    values.reserve(static_cast<std::size_t>(count));
    for (long long k = 1; k <= count; ++k) values.push_back(k * k);
    return SequenceFamily("squares", std::move(values));
}

SequenceFamily SequenceFamily::sparse_sqrt2(long long count) {
    require_positive_count(count);
    std::vector<long long> values;
    values.reserve(static_cast<std::size_t>(count));
    for (long long k = 1; k <= count; ++k) values.push_back(sparse_value(k));
    return SequenceFamily("sparse_sqrt2", std::move(values));
}

SequenceFamily SequenceFamily::custom(std::string label, std::vector<long long> values) {
    require_positive_count(static_cast<long long>(values.size()));
    if (values.front() < 0) throw std::invalid_argument("sequence values must be nonnegative");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            throw std::invalid_argument("sequence values must be strictly increasing");
    return SequenceFamily(std::move(label), std::move(values));
}

std::vector<TracePoint> density_trace(const IntegerWindowSet& set, const SequenceFamily& family) {
    if (family.values().back() > set.window())
        throw std::invalid_argument("window exhausted");
    std::vector<TracePoint> trace;
    trace.reserve(family.values().size());
    long long hits = 0;
    long long n = 0;
    for (long long value : family.values()) {
        ++n;
        if (set.contains(value)) ++hits;
        trace.push_back({n, hits, Rat(hits, n)});
    }
    return trace;
}

DensityEstimate liminf_estimate(const std::vector<TracePoint>& trace, long long burn_in,
                                long long max_period) {
    if (trace.empty()) throw std::invalid_argument("empty trace");
    const long long size = static_cast<long long>(trace.size());
    if (burn_in < 0) burn_in = size / 10;
    if (burn_in >= size) throw std::invalid_argument("burn-in exceeds trace");
    if (max_period < 0) {
        max_period = static_cast<long long>(std::sqrt(static_cast<double>(size) / 2.0));
        if (max_period > 4096) max_period = 4096;
    }

    /* hit increments: bits[k] = 1 when the k-th sequence entry is a member */
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(size));
    for (long long k = 0; k < size; ++k) {
        long long prev = k == 0 ? 0 : trace[static_cast<std::size_t>(k - 1)].count;
        bits[static_cast<std::size_t>(k)] =
            static_cast<std::uint8_t>(trace[static_cast<std::size_t>(k)].count - prev);
    }

    for (long long d = 1; d <= max_period; ++d) {
        if (burn_in + 2 * d > size) break;
        bool match = true;
        for (long long k = burn_in; k + d < size; ++k) {
            if (bits[static_cast<std::size_t>(k)] != bits[static_cast<std::size_t>(k + d)]) {
                match = false;
                break;
            }
        }
        if (!match) continue;
        long long per_period = 0;
        for (long long k = size - d; k < size; ++k) per_period += bits[static_cast<std::size_t>(k)];
        DensityEstimate out;
        out.value = Rat(per_period, d);
        out.exact_periodic = true;
        out.period = d;
        out.burn_in = burn_in;
        out.achieved_n = size;
        out.method = "periodic";
        return out;
    }

    DensityEstimate out;
    out.burn_in = burn_in;
    out.method = "tail-min";
    long long start = burn_in == 0 ? 1 : burn_in;
    out.value = trace[static_cast<std::size_t>(start - 1)].ratio;
    out.achieved_n = start;
    for (long long n = start; n <= size; ++n) {
        const Rat& r = trace[static_cast<std::size_t>(n - 1)].ratio;
        if (r < out.value) {
            out.value = r;
            out.achieved_n = n;
        }
    }
    return out;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    out << "n,count,ratio_num,ratio_den,ratio_decimal\n";
    for (const auto& point : trace) {
        out << point.n << ',' << point.count << ','
            << boost::multiprecision::numerator(point.ratio) << ','
            << boost::multiprecision::denominator(point.ratio) << ','
            << rat_to_decimal(point.ratio, 12) << '\n';
    }
}

} // namespace tset
