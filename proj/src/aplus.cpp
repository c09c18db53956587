#include "apalg/aplus.hpp"

#include <cmath>

namespace apalg {

ApPlusVerdict is_ap_plus(const TrigPoly& p, double eps_sign) {
    bool uncertain = false;
    for (auto& [f, c] : p.terms()) {
        switch (sign_of(f, eps_sign)) {
            case Sign::Positive:
            case Sign::Zero: break;
            case Sign::Negative: return ApPlusVerdict::No;
            case Sign::Uncertain: uncertain = true; break;
        }
    }
    return uncertain ? ApPlusVerdict::Uncertain : ApPlusVerdict::Yes;
}

std::complex<double> extend(const TrigPoly& p, const HalfPlanePoint& z, double eps_sign) {
    if (is_ap_plus(p, eps_sign) != ApPlusVerdict::Yes)
        throw Error("extend requires an AP+ polynomial (nonnegative spectrum)");
    std::complex<double> sum = 0.0;
    for (auto& [f, c] : p.terms()) {
        double decay = std::exp(-f.shadow * z.y);
        sum += c.to_complex() * decay *
               std::complex<double>(std::cos(f.shadow * z.x), std::sin(f.shadow * z.x));
    }
    return sum;
}

std::complex<double> poisson_extension_quadrature(const TrigPoly& p, const HalfPlanePoint& z,
                                                  long panels) {
    if (panels < 2) throw Error("poisson quadrature needs at least 2 panels");
    if (panels % 2 != 0) ++panels;
    const double radius = 1e3 / z.y;
    const double a = z.x - radius;
    const double h = 2.0 * radius / static_cast<double>(panels);
    CompiledTrigPoly cp(p);
    auto kernel = [&](double t) {
        double u = z.x - t;
        return z.y / (M_PI * (u * u + z.y * z.y));
    };
    auto g = [&](double t) { return cp.eval(t) * kernel(t); };
    std::complex<double> sum = g(a) + g(a + 2.0 * radius);
    for (long k = 1; k < panels; ++k) {
        sum += g(a + h * static_cast<double>(k)) * (k % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * (h / 3.0);
}

std::vector<MeanValueEstimate> negative_spectrum_decay(const TrigPoly& p, const Frequency& lambda,
                                                       const std::vector<double>& ts,
                                                       double eps_sign) {
    if (is_ap_plus(p, eps_sign) != ApPlusVerdict::Yes)
        throw Error("negative_spectrum_decay requires an AP+ polynomial");
    if (sign_of(lambda, eps_sign) != Sign::Negative)
        throw Error("negative_spectrum_decay requires a negative frequency");
    std::vector<MeanValueEstimate> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(fb_numeric(p, lambda, t, eps_sign));
    return out;
}

const char* to_string(ApPlusVerdict v) {
    switch (v) {
        case ApPlusVerdict::Yes: return "yes";
        case ApPlusVerdict::No: return "no";
        case ApPlusVerdict::Uncertain: return "uncertain";
    }
    return "?";
}

}  // namespace apalg
