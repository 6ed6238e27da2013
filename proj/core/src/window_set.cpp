#include "tset/window_set.hpp"

#include <stdexcept>

namespace tset {

IntegerWindowSet::IntegerWindowSet(long long window) : window_(window) {
    if (window < 0) throw std::invalid_argument("window must be nonnegative");
    if (window > (1LL << 26)) throw std::invalid_argument("window too large");
    bits_.assign(static_cast<std::size_t>(2 * window + 1), 0);
}

IntegerWindowSet IntegerWindowSet::from_members(long long window,
                                                const std::vector<long long>& members) {
    IntegerWindowSet out(window);
    for (long long g : members) out.insert(g);
    return out;
}

std::size_t IntegerWindowSet::slot(long long g) const {
    if (g < -window_ || g > window_) throw std::out_of_range("integer outside window");
    return static_cast<std::size_t>(g + window_);
}

bool IntegerWindowSet::contains(long long g) const { return bits_[slot(g)] != 0; }

void IntegerWindowSet::insert(long long g) {
    std::uint8_t& b = bits_[slot(g)];
    if (!b) {
        b = 1;
        ++size_;
    }
}

void IntegerWindowSet::erase(long long g) {
    std::uint8_t& b = bits_[slot(g)];
    if (b) {
        b = 0;
        --size_;
    }
}

std::vector<long long> IntegerWindowSet::members() const {
    std::vector<long long> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (long long g = -window_; g <= window_; ++g)
        if (bits_[static_cast<std::size_t>(g + window_)]) out.push_back(g);
    return out;
}

IntegerWindowSet IntegerWindowSet::restricted(long long w) const {
    if (w > window_) throw std::invalid_argument("restriction window exceeds source window");
    IntegerWindowSet out(w);
    for (long long g = -w; g <= w; ++g)
        if (bits_[static_cast<std::size_t>(g + window_)]) out.insert(g);
    return out;
}

} // namespace tset
