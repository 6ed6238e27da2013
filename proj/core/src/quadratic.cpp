#include "tset/quadratic.hpp"

#include <cmath>
#include <stdexcept>

namespace tset {

bool is_perfect_square(long long n) {
    if (n < 0) return false;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    for (long long c = r > 1 ? r - 1 : 0; c <= r + 1; ++c)
        if (c * c == n) return true;
    return false;
}

QuadVal::QuadVal(const Rat& a, const Rat& b, long long d) : a_(a), b_(b), d_(d) {
    if (b_ == 0) {
        d_ = 0;
        return;
    }
    if (d_ < 2) throw std::invalid_argument("radicand must be >= 2");
    if (is_perfect_square(d_)) throw std::invalid_argument("radicand must not be a perfect square");
}

const Rat& QuadVal::as_rational() const {
    if (!is_rational()) throw std::invalid_argument("irrational value where a rational was required");
    return a_;
}

int QuadVal::sign() const {
    if (b_ == 0) return a_.sign();
    if (a_ == 0) return b_.sign();
    int sa = a_.sign(), sb = b_.sign();
    if (sa == sb) return sa;
    /* opposite signs: compare a^2 against b^2 d; equality would force sqrt(d) rational */
    Rat lhs = a_ * a_;
    Rat rhs = b_ * b_ * d_;
    if (lhs == rhs) throw std::logic_error("degenerate quadratic comparison");
    if (lhs > rhs) return sa;
    return sb;
}

QuadVal QuadVal::operator-() const {
    QuadVal r;
    r.a_ = -a_;
    r.b_ = -b_;
    r.d_ = d_;
    return r;
}

QuadVal QuadVal::operator+(const QuadVal& o) const {
    long long d = d_;
    if (d_ != 0 && o.d_ != 0 && d_ != o.d_)
        throw std::invalid_argument("incompatible radicands");
    if (d == 0) d = o.d_;
    QuadVal r;
    r.a_ = a_ + o.a_;
    r.b_ = b_ + o.b_;
    r.d_ = r.b_ == 0 ? 0 : d;
    return r;
}

QuadVal QuadVal::operator-(const QuadVal& o) const {
    return *this + (-o);
}

QuadVal QuadVal::scaled(const Rat& c) const {
    QuadVal r;
    r.a_ = a_ * c;
    r.b_ = b_ * c;
    r.d_ = r.b_ == 0 ? 0 : d_;
    return r;
}

Int QuadVal::floor() const {
    if (b_ == 0) return rat_floor(a_);
    Int guess(static_cast<long long>(std::floor(approx())));
    /* verify guess <= x < guess+1 exactly, walking as needed */
    while ((*this - QuadVal(Rat(guess))).sign() < 0) --guess;
    while ((*this - QuadVal(Rat(guess + 1))).sign() >= 0) ++guess;
    return guess;
}

QuadVal QuadVal::mod1() const {
    return *this - QuadVal(Rat(floor()));
}

double QuadVal::approx() const {
    double v = rat_to_double(a_);
    if (b_ != 0) v += rat_to_double(b_) * std::sqrt(static_cast<double>(d_));
    return v;
}

std::string QuadVal::to_string() const {
    if (b_ == 0) return rat_to_string(a_);
    std::string out = rat_to_string(a_);
    out += (b_ > 0) ? "+" : "-";
    Rat babs = b_ > 0 ? b_ : Rat(-b_);
    if (babs != 1) out += rat_to_string(babs);
    out += "√";
    out += std::to_string(d_);
    return out;
}

QuadVal parse_quadratic(std::string_view text) {
    /* locate a radical marker; everything before the last '+'/'-' preceding it is
     * the rational part */
    size_t mark = text.find("√");
    size_t mark_len = 3;
    if (mark == std::string_view::npos) {
        mark = text.find("sqrt(");
        mark_len = 5;
    }
    if (mark == std::string_view::npos) return QuadVal(parse_rational(text));

    size_t split = std::string_view::npos;
    for (size_t i = mark; i > 0; --i) {
        char c = text[i - 1];
        if ((c == '+' || c == '-') && i - 1 > 0) {
            split = i - 1;
            break;
        }
        if ((c == '+' || c == '-') && i - 1 == 0) break;
    }

    Rat a(0);
    std::string_view rest = text;
    bool neg_surd = false;
    if (split != std::string_view::npos) {
        a = parse_rational(text.substr(0, split));
        neg_surd = text[split] == '-';
        rest = text.substr(split + 1);
        mark -= split + 1;
    } else if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        neg_surd = text[0] == '-';
        rest = text.substr(1);
        mark -= 1;
    }

    std::string_view coeff = rest.substr(0, mark);
    while (!coeff.empty() && (coeff.back() == '*' || coeff.back() == ' '))
        coeff.remove_suffix(1);
    Rat b = coeff.empty() ? Rat(1) : parse_rational(coeff);
    if (neg_surd) b = -b;

    std::string_view dpart = rest.substr(mark + mark_len);
    if (mark_len == 5) {
        if (dpart.empty() || dpart.back() != ')')
            throw std::invalid_argument("malformed radical: " + std::string(text));
        dpart.remove_suffix(1);
    }
    Rat drat = parse_rational(dpart);
    if (denominator(drat) != 1)
        throw std::invalid_argument("radicand must be an integer: " + std::string(text));
    long long d = numerator(drat).convert_to<long long>();
    return QuadVal(a, b, d);
}

} // namespace tset
