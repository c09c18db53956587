#include "apalg/bohr.hpp"

#include <cmath>

namespace apalg {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace

CRat fb_exact(const TrigPoly& p, const Frequency& lambda) { return p.coefficient(lambda); }

MeanValueEstimate fb_numeric(const TrigPoly& p, const Frequency& lambda, double T,
                             double eps_sign) {
    if (!(T > 0)) throw Error("fb_numeric requires T > 0");
    MeanValueEstimate est;
    est.T = T;
    std::complex<double> value = 0.0;
    double bound = 0.0;
    for (auto& [f, c] : p.terms()) {
        if (f == lambda) {
            value += c.to_complex();
            continue;
        }
        double gap = f.shadow - lambda.shadow;
        if (std::abs(gap) < eps_sign)
            throw Error("frequencies numerically indistinguishable: gap below sign guard band");
        value += c.to_complex() * sinc(gap * T);
        bound += c.abs() / (std::abs(gap) * T);
    }
    est.value = value;
    est.error_bound = bound;
    return est;
}

SpectrumVerdict spectrum_in(const TrigPoly& p, const SemigroupSpec& spec,
                            const MembershipOptions& opts) {
    bool inconclusive = false;
    for (auto& [f, c] : p.terms()) {
        switch (membership(f, spec, opts).verdict) {
            case Membership::Member: break;
            case Membership::NonMember: return SpectrumVerdict::No;
            case Membership::Inconclusive: inconclusive = true; break;
        }
    }
    return inconclusive ? SpectrumVerdict::Inconclusive : SpectrumVerdict::Yes;
}

std::complex<double> fb_quadrature(const std::function<std::complex<double>(double)>& f,
                                   double lambda, double T, double max_abs_freq) {
    // the contract requires step <= 2 pi / (8 max|freq|); oversample 4x so the
    // Simpson error sits well below the sinc terms being cross-checked
    double max_step = 2.0 * M_PI / (32.0 * std::max(max_abs_freq, 1e-3));
    long panels = static_cast<long>(std::ceil(2.0 * T / max_step));
    if (panels % 2 != 0) ++panels;
    panels = std::max<long>(panels, 8);
    double h = 2.0 * T / static_cast<double>(panels);
    auto g = [&](double t) {
        return f(t) * std::complex<double>(std::cos(lambda * t), -std::sin(lambda * t));
    };
    std::complex<double> sum = g(-T) + g(T);
    for (long k = 1; k < panels; ++k) {
        double t = -T + h * static_cast<double>(k);
        sum += g(t) * (k % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * (h / 3.0) / (2.0 * T);
}

const char* to_string(SpectrumVerdict v) {
    switch (v) {
        case SpectrumVerdict::Yes: return "yes";
        case SpectrumVerdict::No: return "no";
        case SpectrumVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

}  // namespace apalg
