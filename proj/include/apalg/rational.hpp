#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace apalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double to_double(const Rat& r);

/// Parse "p" or "p/q" with optional leading sign. Throws Error on malformed
/// input or zero denominator.
Rat parse_rational(std::string_view text);

/// Parse a plain decimal literal ("1.41421356...", optional exponent) to the
/// exact rational it denotes.
Rat parse_decimal(std::string_view text);

/// Render as "p" or "p/q" (lowest terms, sign on the numerator).
std::string rational_text(const Rat& r);

/// Exact rational from a double (doubles are dyadic rationals).
Rat rat_from_double(double x);

// Complex numbers with exact rational components. Used for all coefficient
// arithmetic; float shadows appear only in evaluation and norms.
struct CRat {
    Rat re;
    Rat im;

    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    CRat(long r) : re(r) {}
    CRat(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    CRat conjugate() const { return {re, -im}; }
    Rat abs2() const { return re * re + im * im; }
    double abs() const;
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    /// Exact reciprocal; throws on zero.
    CRat inverse() const;

    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }

    CRat& operator+=(const CRat& o) { re += o.re; im += o.im; return *this; }
    CRat& operator-=(const CRat& o) { re -= o.re; im -= o.im; return *this; }
    CRat& operator*=(const CRat& o) { *this = *this * o; return *this; }
};

/// Render "(re+imi)" with rational parts, e.g. "(1-2/3i)".
std::string complex_text(const CRat& c);

}  // namespace apalg
