#include "tset/circle_dynamics.hpp"

#include <stdexcept>
#include <tuple>
#include <utility>

namespace tset {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

Angle Angle::rational(const Rat& r) {
    Angle out;
    out.value_ = QuadVal(rat_mod1(r));
    return out;
}

Angle Angle::quadratic(const QuadVal& v) {
    if (v.is_rational()) throw std::invalid_argument("quadratic angle must be irrational");
    Angle out;
    out.value_ = v.mod1();
    return out;
}

Angle Angle::parse(const std::string& text) {
    QuadVal v = parse_quadratic(text);
    return v.is_rational() ? rational(v.as_rational()) : quadratic(v);
}

long long Angle::denominator() const {
    if (!is_rational()) throw std::logic_error("irrational angle has no denominator");
    return static_cast<long long>(boost::multiprecision::denominator(value_.as_rational()));
}

OrbitWalker::OrbitWalker(const Angle& alpha, const QuadVal& start,
                         const std::vector<QuadVal>& bounds) {
    QuadVal step = alpha.value();
    QuadVal origin = start.mod1();

    auto note_radicand = [this](const QuadVal& v) {
        if (v.radicand() == 0) return;
        if (d_ == 0) {
            d_ = v.radicand();
        } else if (d_ != v.radicand()) {
            throw std::invalid_argument("incompatible radicands");
        }
    };
    note_radicand(step);
    note_radicand(origin);
    for (const auto& b : bounds) note_radicand(b);

    den_ = 1;
    auto fold_denominator = [this](const QuadVal& v) {
        den_ = boost::multiprecision::lcm(den_, denominator(v.rational_part()));
        den_ = boost::multiprecision::lcm(den_, denominator(v.surd_coefficient()));
    };
    fold_denominator(step);
    fold_denominator(origin);
    for (const auto& b : bounds) fold_denominator(b);

    auto scale = [this](const QuadVal& v) {
        Rat p = v.rational_part() * den_;
        Rat q = v.surd_coefficient() * den_;
        return std::pair<Int, Int>(numerator(p), numerator(q));
    };
    std::tie(pos_p_, pos_q_) = scale(origin);
    std::tie(step_p_, step_q_) = scale(step);
    bounds_.reserve(bounds.size());
    for (const auto& b : bounds) bounds_.push_back(scale(b));
}

int OrbitWalker::sign_pair(const Int& u, const Int& v) const {
    int su = u.sign();
    int sv = v.sign();
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    Int lhs = u * u;
    Int rhs = v * v * d_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? su : sv;
}

void OrbitWalker::step() {
    pos_p_ += step_p_;
    pos_q_ += step_q_;
    if (sign_pair(pos_p_ - den_, pos_q_) >= 0) pos_p_ -= den_;
}

void OrbitWalker::step_back() {
    pos_p_ -= step_p_;
    pos_q_ -= step_q_;
    if (sign_pair(pos_p_, pos_q_) < 0) pos_p_ += den_;
}

int OrbitWalker::cmp_bound(std::size_t i) const {
    return sign_pair(pos_p_ - bounds_[i].first, pos_q_ - bounds_[i].second);
}

QuadVal OrbitWalker::current() const {
    Rat a(pos_p_, den_);
    if (pos_q_ == 0) return QuadVal(a);
    return QuadVal(a, Rat(pos_q_, den_), d_);
}

CompiledMembership CompiledMembership::from_half_open(const IntervalUnion& set,
                                                      std::vector<QuadVal>& pool) {
    CompiledMembership out;
    for (const auto& [lo, hi] : set.pieces()) {
        PieceRef ref{pool.size(), pool.size() + 1, false, true, false};
        pool.push_back(lo);
        pool.push_back(hi);
        out.refs_.push_back(ref);
    }
    return out;
}

CompiledMembership CompiledMembership::from_open(const OpenIntervalUnion& set,
                                                 std::vector<QuadVal>& pool) {
    CompiledMembership out;
    if (set.full()) {
        out.always_ = true;
        return out;
    }
    const QuadVal one(Rat(1));
    for (const auto& [lo, hi] : set.pieces()) {
        bool wraps = one < hi;
        PieceRef ref{pool.size(), pool.size() + 1, true, true, wraps};
        pool.push_back(lo);
        pool.push_back(wraps ? hi - one : hi);
        out.refs_.push_back(ref);
    }
    return out;
}

bool CompiledMembership::test(const OrbitWalker& walker) const {
    if (always_) return true;
    for (const auto& ref : refs_) {
        int cl = walker.cmp_bound(ref.lo);
        bool lo_ok = ref.lo_strict ? cl > 0 : cl >= 0;
        if (ref.wraps) {
            if (lo_ok) return true;
            int ch = walker.cmp_bound(ref.hi);
            if (ref.hi_strict ? ch < 0 : ch <= 0) return true;
        } else if (lo_ok) {
            int ch = walker.cmp_bound(ref.hi);
            if (ref.hi_strict ? ch < 0 : ch <= 0) return true;
        }
    }
    return false;
}

RotationSystem RotationSystem::make(const Angle& alpha, IntervalUnion a, IntervalUnion b) {
    RotationSystem out;
    out.alpha = alpha;
    out.set_a = std::move(a);
    out.set_b = std::move(b);
    out.small_measure_ok = (out.set_a.measure() + out.set_b.measure()) < QuadVal(Rat(1));
    return out;
}

RotationSystem RotationSystem::make(const Angle& alpha, const TorusSet& a, const TorusSet& b) {
    return make(alpha, a.engine(), b.engine());
}

namespace {

IntegerWindowSet scan_orbit(const Angle& alpha, const QuadVal& start,
                            const CompiledMembership& membership, const std::vector<QuadVal>& pool,
                            long long window) {
    IntegerWindowSet out(window);
    OrbitWalker forward(alpha, start, pool);
    if (membership.test(forward)) out.insert(0);
    for (long long g = 1; g <= window; ++g) {
        forward.step();
        if (membership.test(forward)) out.insert(g);
    }
    OrbitWalker backward(alpha, start, pool);
    for (long long g = -1; g >= -window; --g) {
        backward.step_back();
        if (membership.test(backward)) out.insert(g);
    }
    return out;
}

} // namespace

IntegerWindowSet transfer_set(const RotationSystem& system, long long window) {
    OpenIntervalUnion overlap = positive_overlap_set(system.set_a, system.set_b);
    std::vector<QuadVal> pool;
    CompiledMembership membership = CompiledMembership::from_open(overlap, pool);
    return scan_orbit(system.alpha, QuadVal(), membership, pool, window);
}

bool transfer_member_by_measure(const RotationSystem& system, long long g) {
    QuadVal shift = system.alpha.times(-g);
    return system.set_a.intersect(system.set_b.shifted(shift)).measure().sign() > 0;
}

IntegerWindowSet transfer_set_by_measure(const RotationSystem& system, long long window) {
    IntegerWindowSet out(window);
    for (long long g = -window; g <= window; ++g)
        if (transfer_member_by_measure(system, g)) out.insert(g);
    return out;
}

IntegerWindowSet orbit_return_set(const RotationSystem& system, const QuadVal& x, SetRole role,
                                  long long window) {
    const IntervalUnion& set = role == SetRole::a ? system.set_a : system.set_b;
    std::vector<QuadVal> pool;
    CompiledMembership membership = CompiledMembership::from_half_open(set, pool);
    return scan_orbit(system.alpha, x, membership, pool, window);
}

IntegerWindowSet sturmian_set(const Angle& alpha, const TorusSet& interval, long long window) {
    if (interval.engine().pieces().size() != 1)
        throw std::invalid_argument("expected single interval");
    if (!(interval.measure() < Rat(1))) throw std::invalid_argument("interval must be proper");
    std::vector<QuadVal> pool;
    CompiledMembership membership = CompiledMembership::from_half_open(interval.engine(), pool);
    return scan_orbit(alpha, QuadVal(), membership, pool, window);
}

ReturnIdentityReport verify_return_identity(const RotationSystem& system,
                                            const std::vector<QuadVal>& points, long long window) {
    ReturnIdentityReport report;
    report.window = window;
    report.compare_window = window / 2;
    const long long half = report.compare_window;
    IntegerWindowSet transfer = transfer_set(system, half);

    for (const QuadVal& x : points) {
        ReturnIdentityPoint entry;
        entry.point = x;
        IntegerWindowSet hits_a = orbit_return_set(system, x, SetRole::a, window);
        IntegerWindowSet hits_b = orbit_return_set(system, x, SetRole::b, window);
        IntegerWindowSet diffs(half);
        for (long long a : hits_a.members())
            for (long long b : hits_b.members()) {
                long long d = b - a;
                if (d >= -half && d <= half) diffs.insert(d);
            }
        entry.matched = (diffs == transfer);
        if (!entry.matched) {
            entry.non_generic = true;
            for (long long g = -half; g <= half; ++g) {
                bool in_transfer = transfer.contains(g);
                bool in_diffs = diffs.contains(g);
                if (in_transfer && !in_diffs && entry.missing.size() < 8)
                    entry.missing.push_back(g);
                if (!in_transfer && in_diffs && entry.extra.size() < 8) entry.extra.push_back(g);
            }
            report.all_matched = false;
        }
        report.points.push_back(std::move(entry));
    }
    return report;
}

} // namespace tset
