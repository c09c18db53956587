#pragma once

#include "apalg/freqmod.hpp"
#include "apalg/trigpoly.hpp"

#include <complex>
#include <functional>

namespace apalg {

/// Exact Fourier coefficient of a trig polynomial at lambda: the coefficient
/// stored for lambda, or 0 (orthogonality of distinct characters).
CRat fb_exact(const TrigPoly& p, const Frequency& lambda);

// Mean value of p(t) e^{-i lambda t} over [-T, T] together with a rigorous
// bound on the distance to the exact coefficient.
struct MeanValueEstimate {
    double T = 0.0;
    std::complex<double> value;
    double error_bound = 0.0;
};

/// Closed-form symmetric-interval mean: sum_j a_j sinc((lambda_j - lambda) T)
/// with error bound sum_{lambda_j != lambda} |a_j| / (|gap_j| T). Throws when
/// some gap's float value falls inside the sign guard band.
MeanValueEstimate fb_numeric(const TrigPoly& p, const Frequency& lambda, double T,
                             double eps_sign = kEpsSign);

enum class SpectrumVerdict { Yes, No, Inconclusive };

/// Conjunction of membership over the spectrum; No beats Inconclusive.
SpectrumVerdict spectrum_in(const TrigPoly& p, const SemigroupSpec& spec,
                            const MembershipOptions& opts = {});

/// Composite-Simpson mean value of f(t) e^{-i lambda t} over [-T, T] for a
/// black-box sampler. The step honors max_abs_freq (largest |frequency| in
/// play, including lambda): step <= 2 pi / (8 max_abs_freq).
std::complex<double> fb_quadrature(const std::function<std::complex<double>(double)>& f,
                                   double lambda, double T, double max_abs_freq);

const char* to_string(SpectrumVerdict v);

}  // namespace apalg
