#pragma once

#include "apalg/bohr.hpp"
#include "apalg/trigpoly.hpp"

#include <complex>
#include <vector>

namespace apalg {

struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;

    HalfPlanePoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0)) throw Error("half-plane point requires y > 0");
    }
};

enum class ApPlusVerdict { Yes, No, Uncertain };

/// Yes iff every spectrum frequency has sign Positive or Zero; No beats
/// Uncertain only in the sense that any Negative frequency settles it.
ApPlusVerdict is_ap_plus(const TrigPoly& p, double eps_sign = kEpsSign);

/// Bounded holomorphic extension of an AP+ polynomial to the upper half
/// plane: sum a_j e^{i lambda_j (x+iy)}. Modulus never exceeds the Wiener
/// norm. Throws on non-AP+ input.
std::complex<double> extend(const TrigPoly& p, const HalfPlanePoint& z, double eps_sign = kEpsSign);

/// Cross-check oracle: Poisson integral of the boundary values, truncated at
/// |t - x| <= 1e3 / y, composite Simpson with the given number of panels.
std::complex<double> poisson_extension_quadrature(const TrigPoly& p, const HalfPlanePoint& z,
                                                  long panels = 100000);

/// Mean-value estimates of the coefficient at a negative frequency of an AP+
/// polynomial at increasing T; the exact limit is 0 with the 1/T bound.
std::vector<MeanValueEstimate> negative_spectrum_decay(const TrigPoly& p, const Frequency& lambda,
                                                       const std::vector<double>& ts,
                                                       double eps_sign = kEpsSign);

const char* to_string(ApPlusVerdict v);

}  // namespace apalg
