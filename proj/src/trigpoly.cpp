#include "apalg/trigpoly.hpp"

#include <cmath>

namespace apalg {

TrigPoly::TrigPoly(TablePtr table) : table_(std::move(table)) {
    if (!table_) throw Error("trig polynomial requires a generator table");
}

TrigPoly TrigPoly::constant(TablePtr table, CRat value) {
    TrigPoly p(std::move(table));
    p.add_term(zero_frequency(*p.table_), value);
    return p;
}

TrigPoly TrigPoly::character(TablePtr table, const Frequency& freq, CRat coeff) {
    TrigPoly p(std::move(table));
    p.add_term(freq, coeff);
    return p;
}

void TrigPoly::add_term(const Frequency& f, const CRat& c) {
    if (f.coords.size() != table_->size()) throw Error("frequency table mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(f);
    if (it == terms_.end()) {
        terms_.emplace(f, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::vector<Frequency> TrigPoly::spectrum() const {
    std::vector<Frequency> out;
    out.reserve(terms_.size());
    for (auto& [f, c] : terms_) out.push_back(f);
    return out;
}

CRat TrigPoly::coefficient(const Frequency& f) const {
    auto it = terms_.find(f);
    return it == terms_.end() ? CRat() : it->second;
}

TrigPoly TrigPoly::conjugated() const {
    TrigPoly out(table_);
    for (auto& [f, c] : terms_) out.add_term(f.negated(), c.conjugate());
    return out;
}

TrigPoly TrigPoly::pow(unsigned n) const {
    TrigPoly acc = TrigPoly::constant(table_, CRat(1));
    for (unsigned i = 0; i < n; ++i) acc = acc * *this;
    return acc;
}

std::complex<double> TrigPoly::eval(double t) const {
    std::complex<double> sum = 0.0;
    for (auto& [f, c] : terms_) {
        double ph = f.shadow * t;
        sum += c.to_complex() * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return sum;
}

double TrigPoly::wiener_norm() const {
    double sum = 0.0;
    for (auto& [f, c] : terms_) sum += c.abs();
    return sum;
}

void require_same_table(const TrigPoly& a, const TrigPoly& b) {
    if (a.table() == b.table()) return;
    if (*a.table() == *b.table()) return;
    throw Error("trig polynomials use different generator tables");
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
    require_same_table(a, b);
    TrigPoly out = a;
    for (auto& [f, c] : b.terms()) out.add_term(f, c);
    return out;
}

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
    require_same_table(a, b);
    TrigPoly out = a;
    for (auto& [f, c] : b.terms()) out.add_term(f, -c);
    return out;
}

TrigPoly operator-(const TrigPoly& a) {
    TrigPoly out(a.table());
    for (auto& [f, c] : a.terms()) out.add_term(f, -c);
    return out;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
    require_same_table(a, b);
    TrigPoly out(a.table());
    for (auto& [fa, ca] : a.terms())
        for (auto& [fb, cb] : b.terms()) out.add_term(freq_add(fa, fb), ca * cb);
    return out;
}

TrigPoly operator*(const CRat& c, const TrigPoly& a) {
    TrigPoly out(a.table());
    for (auto& [f, coeff] : a.terms()) out.add_term(f, c * coeff);
    return out;
}

bool TrigPoly::operator==(const TrigPoly& o) const {
    return terms_ == o.terms_;
}

CompiledTrigPoly::CompiledTrigPoly(const TrigPoly& p) {
    terms.reserve(p.terms().size());
    for (auto& [f, c] : p.terms()) terms.push_back({f.shadow, c.to_complex()});
}

std::complex<double> CompiledTrigPoly::eval(double t) const {
    std::complex<double> sum = 0.0;
    for (auto& term : terms) {
        double ph = term.freq * t;
        sum += term.coeff * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return sum;
}

}  // namespace apalg
