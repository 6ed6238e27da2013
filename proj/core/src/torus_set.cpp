#include "tset/torus_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tset {

namespace {

const QuadVal kOne(Rat(1));

bool piece_less(const IntervalUnion::Piece& a, const IntervalUnion::Piece& b) {
    if (a.first < b.first) return true;
    if (b.first < a.first) return false;
    return a.second < b.second;
}

} // namespace

IntervalUnion IntervalUnion::from_pieces(const std::vector<Piece>& raw) {
    std::vector<Piece> linear;
    for (const auto& [lo, hi] : raw) {
        if (!(lo < hi)) throw std::invalid_argument("empty interval");
        QuadVal len = hi - lo;
        if (!(len < kOne)) return full();
        QuadVal lo1 = lo.mod1();
        QuadVal hi1 = lo1 + len;
        if (hi1 <= kOne) {
            linear.emplace_back(lo1, hi1);
        } else {
            linear.emplace_back(lo1, kOne);
            linear.emplace_back(QuadVal(), hi1 - kOne);
        }
    }
    std::sort(linear.begin(), linear.end(), piece_less);
    IntervalUnion out;
    for (auto& p : linear) {
        if (!out.pieces_.empty() && !(out.pieces_.back().second < p.first)) {
            if (out.pieces_.back().second < p.second) out.pieces_.back().second = p.second;
        } else {
            out.pieces_.push_back(std::move(p));
        }
    }
    return out;
}

IntervalUnion IntervalUnion::full() {
    IntervalUnion out;
    out.pieces_.emplace_back(QuadVal(), kOne);
    return out;
}

QuadVal IntervalUnion::measure() const {
    QuadVal total;
    for (const auto& [lo, hi] : pieces_) total += hi - lo;
    return total;
}

bool IntervalUnion::contains(const QuadVal& x) const {
    QuadVal x1 = x.mod1();
    for (const auto& [lo, hi] : pieces_) {
        if (x1 < lo) return false;
        if (x1 < hi) return true;
    }
    return false;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& o) const {
    std::vector<Piece> raw = pieces_;
    raw.insert(raw.end(), o.pieces_.begin(), o.pieces_.end());
    if (raw.empty()) return {};
    return from_pieces(raw);
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& o) const {
    IntervalUnion out;
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < o.pieces_.size()) {
        const QuadVal& lo = std::max(pieces_[i].first, o.pieces_[j].first);
        const QuadVal& hi = std::min(pieces_[i].second, o.pieces_[j].second);
        if (lo < hi) out.pieces_.emplace_back(lo, hi);
        if (pieces_[i].second < o.pieces_[j].second) ++i; else ++j;
    }
    return out;
}

IntervalUnion IntervalUnion::complement() const {
    IntervalUnion out;
    QuadVal cursor;
    for (const auto& [lo, hi] : pieces_) {
        if (cursor < lo) out.pieces_.emplace_back(cursor, lo);
        cursor = hi;
    }
    if (cursor < kOne) out.pieces_.emplace_back(cursor, kOne);
    return out;
}

IntervalUnion IntervalUnion::shifted(const QuadVal& t) const {
    if (pieces_.empty()) return {};
    std::vector<Piece> raw;
    raw.reserve(pieces_.size());
    for (const auto& [lo, hi] : pieces_) raw.emplace_back(lo + t, hi + t);
    return from_pieces(raw);
}

bool IntervalUnion::operator==(const IntervalUnion& o) const {
    if (pieces_.size() != o.pieces_.size()) return false;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (!(pieces_[k].first == o.pieces_[k].first)) return false;
        if (!(pieces_[k].second == o.pieces_[k].second)) return false;
    }
    return true;
}

std::string IntervalUnion::to_string() const {
    if (pieces_.empty()) return "{}";
    std::ostringstream out;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (k) out << " U ";
        out << "[" << pieces_[k].first.to_string() << ", " << pieces_[k].second.to_string() << ")";
    }
    return out.str();
}

OpenIntervalUnion OpenIntervalUnion::from_pieces(const std::vector<Piece>& raw) {
    OpenIntervalUnion out;
    std::vector<Piece> kept;
    for (const auto& [lo, hi] : raw) {
        QuadVal len = hi - lo;
        if (len.sign() <= 0) continue;
        if (kOne < len) return out.full_ = true, out;
        QuadVal lo1 = lo.mod1();
        kept.emplace_back(lo1, lo1 + len);
    }
    std::sort(kept.begin(), kept.end(), piece_less);
    kept.erase(std::unique(kept.begin(), kept.end(),
                           [](const Piece& a, const Piece& b) {
                               return a.first == b.first && a.second == b.second;
                           }),
               kept.end());
    out.pieces_ = std::move(kept);
    return out;
}

bool OpenIntervalUnion::contains(const QuadVal& x) const {
    if (full_) return true;
    QuadVal x1 = x.mod1();
    QuadVal x2 = x1 + kOne;
    for (const auto& [lo, hi] : pieces_) {
        if (lo < x1 && x1 < hi) return true;
        if (lo < x2 && x2 < hi) return true;
    }
    return false;
}

TorusSet TorusSet::from_intervals(const std::vector<std::pair<Rat, Rat>>& raw) {
    std::vector<IntervalUnion::Piece> pieces;
    pieces.reserve(raw.size());
    for (const auto& [lo, hi] : raw) pieces.emplace_back(QuadVal(lo), QuadVal(hi));
    return TorusSet(IntervalUnion::from_pieces(pieces));
}

TorusSet TorusSet::full() { return TorusSet(IntervalUnion::full()); }

std::vector<std::pair<Rat, Rat>> TorusSet::intervals() const {
    std::vector<std::pair<Rat, Rat>> out;
    out.reserve(engine_.pieces().size());
    for (const auto& [lo, hi] : engine_.pieces()) out.emplace_back(lo.as_rational(), hi.as_rational());
    return out;
}

Rat TorusSet::measure() const { return engine_.measure().as_rational(); }

TorusSet TorusSet::unite(const TorusSet& o) const { return TorusSet(engine_.unite(o.engine_)); }
TorusSet TorusSet::intersect(const TorusSet& o) const { return TorusSet(engine_.intersect(o.engine_)); }
TorusSet TorusSet::complement() const { return TorusSet(engine_.complement()); }
TorusSet TorusSet::shifted(const Rat& t) const { return TorusSet(engine_.shifted(QuadVal(t))); }

IntervalUnion minkowski_difference(const IntervalUnion& i, const IntervalUnion& j) {
    if (i.empty() || j.empty()) return {};
    std::vector<IntervalUnion::Piece> raw;
    raw.reserve(i.pieces().size() * j.pieces().size());
    for (const auto& [a1, b1] : i.pieces())
        for (const auto& [a2, b2] : j.pieces()) raw.emplace_back(a2 - b1, b2 - a1);
    return IntervalUnion::from_pieces(raw);
}

TorusSet minkowski_difference(const TorusSet& i, const TorusSet& j) {
    auto engine = minkowski_difference(i.engine(), j.engine());
    std::vector<std::pair<Rat, Rat>> raw;
    for (const auto& [lo, hi] : engine.pieces()) raw.emplace_back(lo.as_rational(), hi.as_rational());
    if (raw.empty()) return {};
    return TorusSet::from_intervals(raw);
}

OpenIntervalUnion positive_overlap_set(const IntervalUnion& i, const IntervalUnion& j) {
    std::vector<OpenIntervalUnion::Piece> raw;
    raw.reserve(i.pieces().size() * j.pieces().size());
    for (const auto& [a1, b1] : i.pieces())
        for (const auto& [a2, b2] : j.pieces()) raw.emplace_back(a2 - b1, b2 - a1);
    return OpenIntervalUnion::from_pieces(raw);
}

} // namespace tset
