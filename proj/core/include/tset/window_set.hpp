#pragma once

#include <cstdint>
#include <vector>

namespace tset {

/* Subset of the integer window [-W, W]; membership is undefined outside it. */
class IntegerWindowSet {
public:
    explicit IntegerWindowSet(long long window);
    static IntegerWindowSet from_members(long long window, const std::vector<long long>& members);

    long long window() const { return window_; }
    long long size() const { return size_; }
    bool empty() const { return size_ == 0; }

    bool contains(long long g) const; /* throws std::out_of_range when |g| > window */
    void insert(long long g);
    void erase(long long g);

    std::vector<long long> members() const; /* ascending */
    const std::vector<std::uint8_t>& raw() const { return bits_; }

    /* restriction to a smaller window [-w, w] */
    IntegerWindowSet restricted(long long w) const;

    bool operator==(const IntegerWindowSet& o) const {
        return window_ == o.window_ && bits_ == o.bits_;
    }

private:
    std::size_t slot(long long g) const;

    long long window_ = 0;
    long long size_ = 0;
    std::vector<std::uint8_t> bits_; /* index g + window */
};

} // namespace tset
