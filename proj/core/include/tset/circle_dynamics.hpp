#pragma once

#include "tset/quadratic.hpp"
#include "tset/rational.hpp"
#include "tset/torus_set.hpp"
#include "tset/window_set.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace tset {

/* Rotation angle in [0, 1): either rational p/q or a quadratic irrational. */
class Angle {
public:
    Angle() = default;
    static Angle rational(const Rat& r);
    static Angle quadratic(const QuadVal& v); /* throws when v is rational */
    static Angle parse(const std::string& text);

    const QuadVal& value() const { return value_; }
    bool is_rational() const { return value_.is_rational(); }
    /* reduced denominator of a rational angle; throws for irrational ones */
    long long denominator() const;
    QuadVal times(long long g) const { return value_.scaled(Rat(g)); }
    std::string to_string() const { return value_.to_string(); }

private:
    QuadVal value_;
};

/* Exact orbit scanner for x_g = start + g*alpha mod 1.  All registered
 * comparison bounds share one integer denominator, so a step is a pair of
 * big-integer adds plus one sign test, and a bound comparison costs at most
 * two big-integer multiplications. */
class OrbitWalker {
public:
    OrbitWalker(const Angle& alpha, const QuadVal& start, const std::vector<QuadVal>& bounds);

    void step();      /* g -> g + 1 */
    void step_back(); /* g -> g - 1 */

    /* sign of (x_g - bounds[i]) */
    int cmp_bound(std::size_t i) const;
    QuadVal current() const;

private:
    int sign_pair(const Int& u, const Int& v) const;

    long long d_ = 0; /* shared radicand, 0 when everything is rational */
    Int den_;         /* common denominator R > 0 */
    Int pos_p_, pos_q_;
    Int step_p_, step_q_;
    std::vector<std::pair<Int, Int>> bounds_;
};

/* Membership predicate over a walker, compiled against a shared bound pool. */
class CompiledMembership {
public:
    static CompiledMembership from_half_open(const IntervalUnion& set, std::vector<QuadVal>& pool);
    static CompiledMembership from_open(const OpenIntervalUnion& set, std::vector<QuadVal>& pool);

    bool test(const OrbitWalker& walker) const;

private:
    struct PieceRef {
        std::size_t lo, hi;
        bool lo_strict, hi_strict;
        bool wraps; /* wraps: member iff x >(=) lo or x <(=) hi, bounds pre-reduced */
    };
    std::vector<PieceRef> refs_;
    bool always_ = false;
};

/* Circle rotation by alpha with two marked sets.  small_measure_ok records
 * whether measure(A) + measure(B) < 1; campaigns surface it as a warning. */
struct RotationSystem {
    Angle alpha;
    IntervalUnion set_a;
    IntervalUnion set_b;
    bool small_measure_ok = true;

    static RotationSystem make(const Angle& alpha, IntervalUnion a, IntervalUnion b);
    static RotationSystem make(const Angle& alpha, const TorusSet& a, const TorusSet& b);
};

enum class SetRole { a, b };

/* { g in [-W, W] : measure(A intersect (B - g*alpha)) > 0 }.
 * Membership is decided by the positive-measure criterion; the scan walks the
 * orbit of g*alpha through the open overlap set, which coincides with it. */
IntegerWindowSet transfer_set(const RotationSystem& system, long long window);

/* same set, evaluated one g at a time by explicit intersection measure */
IntegerWindowSet transfer_set_by_measure(const RotationSystem& system, long long window);
bool transfer_member_by_measure(const RotationSystem& system, long long g);

/* { g in [-W, W] : x + g*alpha lands in the chosen set } */
IntegerWindowSet orbit_return_set(const RotationSystem& system, const QuadVal& x, SetRole role,
                                  long long window);

/* { g in [-W, W] : g*alpha mod 1 lands in the interval }; the interval must
 * normalize to a single piece */
IntegerWindowSet sturmian_set(const Angle& alpha, const TorusSet& interval, long long window);

struct ReturnIdentityPoint {
    QuadVal point;
    bool matched = false;
    bool non_generic = false; /* flagged when the pointwise identity fails */
    std::vector<long long> missing; /* in the transfer set, not among differences */
    std::vector<long long> extra;   /* among differences, not in the transfer set */
};

struct ReturnIdentityReport {
    long long window = 0;
    long long compare_window = 0;
    bool all_matched = true;
    std::vector<ReturnIdentityPoint> points;
};

/* For each base point x, compare { b - a : a in A_x, b in B_x } against the
 * transfer set on the half window.  Mismatching points are flagged as
 * non-generic rather than treated as errors. */
ReturnIdentityReport verify_return_identity(const RotationSystem& system,
                                            const std::vector<QuadVal>& points, long long window);

} // namespace tset
