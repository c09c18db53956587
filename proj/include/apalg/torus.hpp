#pragma once

#include "apalg/freqmod.hpp"
#include "apalg/trigpoly.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace apalg {

using ExponentVec = std::vector<std::int64_t>;

// Laurent polynomial on a torus: finite map from integer exponent vectors to
// exact complex rational coefficients. dim() is the number of torus
// variables; exponents may be negative.
class LaurentPoly {
public:
    explicit LaurentPoly(int dim = 0);

    static LaurentPoly constant(int dim, CRat value);
    static LaurentPoly monomial(int dim, ExponentVec k, CRat coeff = CRat(1));

    int dim() const { return dim_; }
    const std::map<ExponentVec, CRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(ExponentVec k, const CRat& c);
    /// Coefficient of an exponent vector, 0 when absent.
    CRat coefficient(const ExponentVec& k) const;

    LaurentPoly conjugated() const;  // coefficients conjugated, exponents negated
    std::complex<double> eval_angles(std::span<const double> angles) const;
    std::complex<double> eval_points(std::span<const std::complex<double>> z) const;

    double wiener_norm() const;
    /// Lipschitz constant of the polynomial on the torus in the l1 exponent
    /// weighting: sum |coeff| * ||exponent||_1.
    double lipschitz() const;

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a);
    bool operator==(const LaurentPoly& o) const;

private:
    int dim_;
    std::map<ExponentVec, CRat> terms_;
};

// Result of rewriting a trig polynomial as a Laurent polynomial on T^M via a
// basis of its own spectrum: substituting z_n = e^{i (omega_n / s) t} into q
// reproduces the input exactly.
struct TransferResult {
    LaurentPoly q;
    FrequencyBasis basis;
    std::vector<Frequency> scaled_freqs;  // omega_n / s
};

TransferResult transfer(const TrigPoly& p);

// Joint transfer of a tuple over one shared basis of the union spectrum.
struct JointTransferResult {
    std::vector<LaurentPoly> qs;
    FrequencyBasis basis;
    std::vector<Frequency> scaled_freqs;
    std::vector<Frequency> union_spectrum;  // nonzero frequencies, input order
};

JointTransferResult transfer_joint(std::span<const TrigPoly> ps);

/// Exact symbolic back-substitution z_n = e^{i (omega_n / s) t}; the inverse
/// of transfer on its image.
TrigPoly back_substitute(const LaurentPoly& q, const std::vector<Frequency>& scaled_freqs,
                         TablePtr table);

enum class ExtremumKind { Min, Max };

struct ExtremumReport {
    ExtremumKind kind = ExtremumKind::Min;
    std::string objective;  // "abs" or "sumabs"
    double value = 0.0;
    std::vector<double> point;  // angles in [0, 2pi)
    // true global bound from the grid plus the Lipschitz argument: a lower
    // bound for Min, an upper bound for Max
    double certified_bound = 0.0;
    long grid_density = 0;
    int refinements = 0;
};

constexpr int kDefaultRefinements = 24;
constexpr double kMaxGridEvaluations = 1e8;

/// grid == 0 picks the default density for the dimension (64 for M <= 3, 16
/// for M <= 6, 8 beyond). Throws when grid^M exceeds the evaluation cap.
ExtremumReport torus_min_abs(const LaurentPoly& q, long grid = 0,
                             int refinements = kDefaultRefinements);
ExtremumReport torus_max_abs(const LaurentPoly& q, long grid = 0,
                             int refinements = kDefaultRefinements);
ExtremumReport torus_min_sumabs(std::span<const LaurentPoly> qs, long grid = 0,
                                int refinements = kDefaultRefinements);

// Occupancy of a coarse 8^M cell partition of the torus by the orbit
// (e^{i lambda_1 t}, ..., e^{i lambda_M t}) sampled at t = k dt. A density
// diagnostic, not a proof.
struct OrbitReport {
    long cells_total = 0;
    long cells_occupied = 0;
    double fraction = 0.0;
    long count = 0;
    double dt = 0.0;
};

/// Requires the frequencies to be exactly independent (extract_basis must
/// select all of them).
OrbitReport kronecker_orbit_sample(const std::vector<Frequency>& freqs, long count, double dt);

// Sup and inf of |p(t)| over t in [0, t_max] sampled with step dt.
struct LineScan {
    double sup = 0.0;
    double inf = 0.0;
    double t_sup = 0.0;
    double t_inf = 0.0;
};

LineScan line_scan_abs(const TrigPoly& p, double t_max, double dt);

const char* to_string(ExtremumKind k);

}  // namespace apalg
