#include "tset/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace tset {

std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

std::string rat_to_decimal(const Rat& r, int digits) {
    Int num = numerator(r);
    Int den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    Int whole = num / den;
    Int rem = num % den;
    std::string out = neg ? "-" : "";
    out += whole.str();
    if (digits <= 0) return out;
    out += ".";
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        Int digit = rem / den;
        rem %= den;
        out += static_cast<char>('0' + digit.convert_to<int>());
    }
    return out;
}

Rat parse_rational(std::string_view text) {
    size_t begin = 0, end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    text = text.substr(begin, end - begin);
    if (text.empty()) throw std::invalid_argument("empty rational literal");

    auto check_digits = [](std::string_view s) {
        size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };

    size_t slash = text.find('/');
    if (slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!check_digits(num) || !check_digits(den))
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        Int n{std::string(num)};
        Int d{std::string(den)};
        if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
        return Rat(n, d);
    }
    size_t dot = text.find('.');
    if (dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (frac.empty()) {
            if (!check_digits(whole))
                throw std::invalid_argument("malformed decimal literal: " + std::string(text));
            return Rat(Int{std::string(whole)});
        }
        if (whole.empty() || whole == "-" || whole == "+") {
            if (!check_digits(frac))
                throw std::invalid_argument("malformed decimal literal: " + std::string(text));
            Int f{std::string(frac)};
            Int scale = 1;
            for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
            Rat v(f, scale);
            return (!whole.empty() && whole[0] == '-') ? -v : v;
        }
        if (!check_digits(whole) || !check_digits(frac))
            throw std::invalid_argument("malformed decimal literal: " + std::string(text));
        Int w{std::string(whole)};
        Int f{std::string(frac)};
        Int scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        bool neg = text[0] == '-';
        Rat v = Rat(abs(w)) + Rat(f, scale);
        return neg ? -v : v;
    }
    if (!check_digits(text))
        throw std::invalid_argument("malformed rational literal: " + std::string(text));
    return Rat(Int{std::string(text)});
}

double rat_to_double(const Rat& r) {
    return r.convert_to<double>();
}

} // namespace tset
