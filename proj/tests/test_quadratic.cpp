#include "doctest.h"

#include "tset/quadratic.hpp"

#include <cmath>

using namespace tset;

TEST_CASE("perfect square detection") {
    CHECK(is_perfect_square(0));
    CHECK(is_perfect_square(1));
    CHECK(is_perfect_square(4));
    CHECK(is_perfect_square(1024));
    CHECK_FALSE(is_perfect_square(2));
    CHECK_FALSE(is_perfect_square(5));
    CHECK_FALSE(is_perfect_square(1023));
    CHECK_FALSE(is_perfect_square(-4));
}

TEST_CASE("construction rejects degenerate radicands") {
    CHECK_THROWS_AS(QuadVal(Rat(0), Rat(1), 4), std::invalid_argument);
    CHECK_THROWS_AS(QuadVal(Rat(0), Rat(1), 1), std::invalid_argument);
    CHECK_NOTHROW(QuadVal(Rat(0), Rat(0), 4)); /* zero coefficient erases the radicand */
    CHECK(QuadVal(Rat(1), Rat(0), 9).is_rational());
}

TEST_CASE("sign analysis agrees with floating point on non-borderline values") {
    long long rads[] = {2, 3, 5, 7, 10};
    for (long long d : rads) {
        for (long long an = -9; an <= 9; ++an)
            for (long long bn = -9; bn <= 9; ++bn) {
                if (bn == 0) continue;
                QuadVal v(Rat(an, 4), Rat(bn, 4), d);
                double x = an / 4.0 + bn / 4.0 * std::sqrt(double(d));
                if (std::fabs(x) < 1e-9) continue;
                CHECK(v.sign() == (x > 0 ? 1 : -1));
            }
    }
}

TEST_CASE("arithmetic stays exact") {
    QuadVal a(Rat(1, 2), Rat(1, 3), 2);
    QuadVal b(Rat(1, 6), Rat(2, 3), 2);
    QuadVal s = a + b;
    CHECK(s.rational_part() == Rat(2, 3));
    CHECK(s.surd_coefficient() == Rat(1));
    CHECK((a - a).sign() == 0);
    CHECK((a - a).is_rational());

    QuadVal c(Rat(0), Rat(1), 3);
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK_NOTHROW(a + QuadVal(Rat(5, 7)));

    QuadVal scaled = a.scaled(Rat(6));
    CHECK(scaled.rational_part() == Rat(3));
    CHECK(scaled.surd_coefficient() == Rat(2));
}

TEST_CASE("ordering of sqrt(2) against rationals") {
    QuadVal r2 = QuadVal::sqrt_of(2);
    CHECK(r2 > QuadVal(Rat(7, 5)));      /* 1.4 */
    CHECK(r2 < QuadVal(Rat(3, 2)));      /* 1.5 */
    CHECK(r2 > QuadVal(Rat(141, 100)));
    CHECK(r2 < QuadVal(Rat(142, 100)));
    CHECK(-r2 < QuadVal(Rat(-7, 5)));
    CHECK(-r2 > QuadVal(Rat(-3, 2)));
}

TEST_CASE("floor and mod1 on quadratics") {
    QuadVal r2 = QuadVal::sqrt_of(2);
    CHECK(r2.floor() == 1);
    CHECK((-r2).floor() == -2);
    CHECK((r2 + r2).floor() == 2);       /* 2.828 */
    CHECK(QuadVal(Rat(0), Rat(5), 2).floor() == 7); /* 7.071 */

    QuadVal alpha = r2 - QuadVal(Rat(1)); /* 0.41421 */
    CHECK(alpha.floor() == 0);
    QuadVal seven_alpha = alpha.scaled(Rat(7)); /* 2.8995 */
    CHECK(seven_alpha.floor() == 2);
    QuadVal frac = seven_alpha.mod1();
    CHECK(frac.sign() > 0);
    CHECK(frac < QuadVal(Rat(1)));
    CHECK(frac.approx() == doctest::Approx(0.899494).epsilon(1e-5));
}

TEST_CASE("floor against double oracle over a window") {
    QuadVal alpha = QuadVal::sqrt_of(2) - QuadVal(Rat(1));
    for (long long g = -500; g <= 500; ++g) {
        double x = g * (std::sqrt(2.0) - 1.0);
        double f = std::floor(x);
        /* double oracle is trustworthy away from integer boundaries */
        if (std::fabs(x - f) < 1e-9 || std::fabs(x - f - 1) < 1e-9) continue;
        CHECK(alpha.scaled(Rat(g)).floor() == Int(static_cast<long long>(f)));
    }
}

TEST_CASE("string round trips") {
    QuadVal v(Rat(-1), Rat(1), 2);
    CHECK(v.to_string() == "-1+√2");
    QuadVal parsed = parse_quadratic(v.to_string());
    CHECK((parsed - v).sign() == 0);

    CHECK((parse_quadratic("3/10") - QuadVal(Rat(3, 10))).sign() == 0);
    CHECK((parse_quadratic("sqrt(2)") - QuadVal::sqrt_of(2)).sign() == 0);
    CHECK((parse_quadratic("-1+1*sqrt(2)") - v).sign() == 0);
    CHECK((parse_quadratic("1/2-3/4√5") -
           QuadVal(Rat(1, 2), Rat(-3, 4), 5)).sign() == 0);
    CHECK((parse_quadratic("-√2") - (-QuadVal::sqrt_of(2))).sign() == 0);

    CHECK_THROWS_AS(parse_quadratic("1+sqrt(4)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_quadratic("sqrt(2"), std::invalid_argument);
}
