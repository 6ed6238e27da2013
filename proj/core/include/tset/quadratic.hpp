#pragma once

#include "tset/rational.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace tset {

/* Element a + b*sqrt(d) of a real quadratic field, exact.
 * Invariants: b == 0 implies d == 0; b != 0 implies d >= 2 and d squarefree-checked
 * only for being a non-square (that is all exactness needs). Values with different
 * nonzero radicands cannot be combined. */
class QuadVal {
public:
    QuadVal() : a_(0), b_(0), d_(0) {}
    QuadVal(const Rat& rational) : a_(rational), b_(0), d_(0) {}
    QuadVal(long long n) : a_(n), b_(0), d_(0) {}
    QuadVal(const Rat& a, const Rat& b, long long d);

    static QuadVal sqrt_of(long long d) { return QuadVal(Rat(0), Rat(1), d); }

    const Rat& rational_part() const { return a_; }
    const Rat& surd_coefficient() const { return b_; }
    long long radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    /* throws std::invalid_argument if the value is irrational */
    const Rat& as_rational() const;

    int sign() const;
    QuadVal operator-() const;
    QuadVal operator+(const QuadVal& o) const;
    QuadVal operator-(const QuadVal& o) const;
    QuadVal& operator+=(const QuadVal& o) { return *this = *this + o; }
    QuadVal& operator-=(const QuadVal& o) { return *this = *this - o; }

    /* scaling by exact rationals keeps the radicand */
    QuadVal scaled(const Rat& c) const;

    bool operator==(const QuadVal& o) const { return (*this - o).sign() == 0; }
    bool operator!=(const QuadVal& o) const { return !(*this == o); }
    bool operator<(const QuadVal& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const QuadVal& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const QuadVal& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const QuadVal& o) const { return (*this - o).sign() >= 0; }

    Int floor() const;
    /* representative in [0, 1) */
    QuadVal mod1() const;

    double approx() const;
    std::string to_string() const;

private:
    Rat a_, b_;
    long long d_;
};

bool is_perfect_square(long long n);

/* accepts "p/q", decimals, and "a+b√d" (or "a+b*sqrt(d)") */
QuadVal parse_quadratic(std::string_view text);

} // namespace tset
