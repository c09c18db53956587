#include "apalg/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace apalg {

double to_double(const Rat& r) { return r.convert_to<double>(); }

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rational(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    Int num, den = 1;
    if (slash == std::string_view::npos) {
        if (!all_digits(s)) throw Error("malformed rational: '" + std::string(text) + "'");
        num = Int(std::string(s));
    } else {
        auto p = s.substr(0, slash);
        auto q = s.substr(slash + 1);
        if (!all_digits(p) || !all_digits(q))
            throw Error("malformed rational: '" + std::string(text) + "'");
        num = Int(std::string(p));
        den = Int(std::string(q));
        if (den == 0) throw Error("zero denominator in rational: '" + std::string(text) + "'");
    }
    if (neg) num = -num;
    return Rat(num, den);
}

Rat parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    long frac_digits = 0;
    long exponent = 0;
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits.push_back(s[i++]);
            ++frac_digits;
        }
    }
    if (digits.empty()) throw Error("malformed decimal: '" + std::string(text) + "'");
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            eneg = s[i] == '-';
            ++i;
        }
        if (i >= s.size()) throw Error("malformed decimal exponent: '" + std::string(text) + "'");
        long e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            e = e * 10 + (s[i] - '0');
            ++i;
        }
        exponent = eneg ? -e : e;
    }
    if (i != s.size()) throw Error("malformed decimal: '" + std::string(text) + "'");

    Int num(digits);
    if (neg) num = -num;
    long pow10 = exponent - frac_digits;
    Int scale = 1;
    for (long k = 0; k < std::labs(pow10); ++k) scale *= 10;
    return pow10 >= 0 ? Rat(num * scale, 1) : Rat(num, scale);
}

std::string rational_text(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw Error("non-finite double has no rational value");
    if (x == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral
    Int num = Int(std::llround(std::ldexp(m, 53)));
    exp -= 53;
    if (exp >= 0) return Rat(num << exp, 1);
    return Rat(num, Int(1) << -exp);
}

double CRat::abs() const { return std::sqrt(to_double(abs2())); }

CRat CRat::inverse() const {
    Rat d = abs2();
    if (d == 0) throw Error("division by zero complex rational");
    return {re / d, -im / d};
}

std::string complex_text(const CRat& c) {
    std::string s = "(" + rational_text(c.re);
    if (c.im >= 0) s += "+";
    s += rational_text(c.im) + "i)";
    return s;
}

}  // namespace apalg
