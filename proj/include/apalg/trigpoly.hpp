#pragma once

#include "apalg/freqmod.hpp"
#include "apalg/rational.hpp"

#include <complex>
#include <map>
#include <vector>

namespace apalg {

// A generalized trigonometric polynomial: a finite sum of complex multiples
// of e^{i*lambda*t} with exact rational-vector frequencies and exact complex
// rational coefficients. Zero coefficients are never stored, so the key set
// of the term map is exactly the spectrum.
class TrigPoly {
public:
    explicit TrigPoly(TablePtr table);

    static TrigPoly zero(TablePtr table) { return TrigPoly(std::move(table)); }
    static TrigPoly constant(TablePtr table, CRat value);
    /// coeff * e^{i freq t}
    static TrigPoly character(TablePtr table, const Frequency& freq, CRat coeff = CRat(1));

    const TablePtr& table() const { return table_; }
    const std::map<Frequency, CRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    std::vector<Frequency> spectrum() const;
    /// Coefficient of a frequency, 0 when absent.
    CRat coefficient(const Frequency& f) const;

    TrigPoly conjugated() const;
    TrigPoly pow(unsigned n) const;

    std::complex<double> eval(double t) const;
    /// Sum of coefficient moduli; an upper bound for the sup norm.
    double wiener_norm() const;

    friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
    friend TrigPoly operator-(const TrigPoly& a);
    friend TrigPoly operator*(const CRat& c, const TrigPoly& a);
    bool operator==(const TrigPoly& o) const;

    void add_term(const Frequency& f, const CRat& c);

private:
    TablePtr table_;
    std::map<Frequency, CRat> terms_;
};

void require_same_table(const TrigPoly& a, const TrigPoly& b);

// Flattened view for tight evaluation loops.
struct CompiledTrigPoly {
    struct Term {
        double freq;
        std::complex<double> coeff;
    };
    std::vector<Term> terms;

    explicit CompiledTrigPoly(const TrigPoly& p);
    std::complex<double> eval(double t) const;
};

}  // namespace apalg
