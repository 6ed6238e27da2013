#pragma once

#include "tset/quadratic.hpp"
#include "tset/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tset {

/* Union of half-open intervals [lo, hi) on the circle R/Z, endpoints exact.
 * Canonical form: pieces inside [0, 1], sorted, disjoint, no touching pair
 * (touching pieces merge; the wrap 1 -> 0 is not merged). */
class IntervalUnion {
public:
    using Piece = std::pair<QuadVal, QuadVal>;

    IntervalUnion() = default;

    /* raw pieces [lo, hi), lo < hi, arbitrary reals; taken mod 1 */
    static IntervalUnion from_pieces(const std::vector<Piece>& raw);
    static IntervalUnion full();

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    QuadVal measure() const;

    bool contains(const QuadVal& x) const; /* x reduced mod 1 */

    IntervalUnion unite(const IntervalUnion& o) const;
    IntervalUnion intersect(const IntervalUnion& o) const;
    IntervalUnion complement() const;
    IntervalUnion shifted(const QuadVal& t) const;

    bool operator==(const IntervalUnion& o) const;

    std::string to_string() const;

private:
    std::vector<Piece> pieces_;
};

/* Union of open intervals (lo, hi) on the circle; pieces satisfy lo in [0,1),
 * lo < hi <= lo + 1, kept unmerged. Used for the positive part of a sliding
 * overlap, where membership at endpoints must stay strict. */
class OpenIntervalUnion {
public:
    using Piece = std::pair<QuadVal, QuadVal>;

    OpenIntervalUnion() = default;
    static OpenIntervalUnion from_pieces(const std::vector<Piece>& raw);

    bool full() const { return full_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    bool contains(const QuadVal& x) const;

private:
    std::vector<Piece> pieces_;
    bool full_ = false;
};

/* Spec-facing torus subset with rational endpoints. */
class TorusSet {
public:
    TorusSet() = default;

    /* intervals [lo, hi), lo < hi, arbitrary rationals; reduced mod 1 */
    static TorusSet from_intervals(const std::vector<std::pair<Rat, Rat>>& raw);
    static TorusSet full();

    std::vector<std::pair<Rat, Rat>> intervals() const;
    const IntervalUnion& engine() const { return engine_; }

    bool empty() const { return engine_.empty(); }
    Rat measure() const;
    bool contains(const Rat& x) const { return engine_.contains(QuadVal(x)); }

    TorusSet unite(const TorusSet& o) const;
    TorusSet intersect(const TorusSet& o) const;
    TorusSet complement() const;
    TorusSet shifted(const Rat& t) const;

    bool operator==(const TorusSet& o) const { return engine_ == o.engine_; }

    std::string to_string() const { return engine_.to_string(); }

private:
    explicit TorusSet(IntervalUnion engine) : engine_(std::move(engine)) {}
    IntervalUnion engine_;
};

/* J - I = { j - i } with the half-open closure convention: each raw pair
 * contributes [lo_j - hi_i, hi_j - lo_i) before reduction mod 1 */
IntervalUnion minkowski_difference(const IntervalUnion& i, const IntervalUnion& j);
TorusSet minkowski_difference(const TorusSet& i, const TorusSet& j);

/* { t : measure(J intersect (I + t)) > 0 }, an open set */
OpenIntervalUnion positive_overlap_set(const IntervalUnion& i, const IntervalUnion& j);

} // namespace tset
