#pragma once

#include "apalg/torus.hpp"
#include "apalg/trigpoly.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace apalg {

/// Winding-number subdivision hit a boundary zero that survived jittered cut
/// lines.
struct WindingAmbiguousError : Error {
    using Error::Error;
};

/// Multistart descent did not reach the requested tolerance.
struct DescentFailedError : Error {
    using Error::Error;
};

enum class InvVerdict { Invertible, NotInvertible, Uncertain };

// delta estimates inf |F| (or inf sum |F_j|) over the line, computed as the
// torus extremum of the transfer; certified_delta is the Lipschitz-certified
// lower bound. Invertible requires certified_delta > 0; NotInvertible
// requires a point with objective <= 1e-9.
struct InvertibilityReport {
    double delta = 0.0;
    double certified_delta = 0.0;
    InvVerdict verdict = InvVerdict::Uncertain;
    ExtremumReport extremum;
};

constexpr double kZeroObjective = 1e-9;

InvertibilityReport invertible(const TrigPoly& f, long grid = 0,
                               int refinements = kDefaultRefinements);
InvertibilityReport unimodular(const std::vector<TrigPoly>& fs, long grid = 0,
                               int refinements = kDefaultRefinements);

struct SampleGrid {
    long count = 10000;
    double t_max = 1000.0;
};

// Explicit corona data: solvers evaluate Q_j(t) = conj(F_j(t)) / sum |F_k(t)|^2,
// so sum Q_j F_j = 1 identically; residual_bound is the float residual
// observed on the sample grid.
struct BezoutSolution {
    std::vector<TrigPoly> tuple;
    std::vector<std::function<std::complex<double>(double)>> solvers;
    double delta = 0.0;
    double residual_bound = 0.0;
};

/// Requires report.verdict == Invertible.
BezoutSolution bezout(const std::vector<TrigPoly>& fs, const InvertibilityReport& report,
                      const SampleGrid& grid = {});

// Polynomial-form corona solvers: Q_j = conj(F_j) * P(sum |F_k|^2) with P a
// Chebyshev approximation of 1/x on the certified range of the denominator,
// degree chosen so |sum Q_j F_j - 1| <= target uniformly.
struct BezoutPolySolution {
    std::vector<TrigPoly> solvers;
    int degree = 0;
    double residual_bound = 0.0;
};

BezoutPolySolution bezout_poly(const std::vector<TrigPoly>& fs, const InvertibilityReport& report,
                               double target = 1e-6, const SampleGrid& grid = {});

/// Section of the power-sum map: a point z of 2*closed-disk minus the cut
/// (-inf, 0] lifts to a pair on the unit circle with z1^s + z2^s = z.
std::pair<std::complex<double>, std::complex<double>> power_sum_section(std::complex<double> z,
                                                                        int s);

/// z1^s + z2^s for unit-modulus inputs (checked to 1e-9).
std::complex<double> power_sum(std::complex<double> z1, std::complex<double> z2, int s);

// The non-reducible example family on T^{4N}: fs[j] = z_{2j+1}^s + z_{2j+2}^s - 1
// (j = 0..N-1), partners are the same construction shifted by N pairs, and
// g = 1/4 - sum fs[j]*partners[j]. The identity sum partners[j]*fs[j] + g = 1/4
// holds exactly by construction.
struct FundamentalExample {
    int n = 0;
    int s = 0;
    std::vector<LaurentPoly> fs;        // f_1 .. f_N
    std::vector<LaurentPoly> partners;  // f_{N+1} .. f_{2N}
    LaurentPoly g;
};

FundamentalExample example_fundamental(int n, int s);

/// F_j(t) = e^{i lambda_{2j-1} t} + e^{i lambda_{2j} t} - 1 for a list of 2N
/// exactly independent frequencies.
std::vector<TrigPoly> example_general(const std::vector<Frequency>& lambdas, TablePtr table);

enum class WitnessMethod { WindingSubdivision, MultistartDescent };

struct ZeroWitness {
    std::vector<double> torus_point;  // 4N angles
    std::optional<double> line_t;
    double residual = 0.0;  // max_j |f_j + h_j g| at the point
    WitnessMethod method = WitnessMethod::WindingSubdivision;
    std::optional<int> boundary_winding;  // set on the winding path, always 1
};

/// Finds a common zero of (f_j + h_j g) on the conjugation subtorus
/// z_{j+2N} = conj(z_j). N = 1 uses winding-number subdivision with a degree
/// certificate on the boundary circle; N >= 2 uses multistart descent on the
/// squared norm and fails loudly when tol is not reached.
ZeroWitness reduction_zero_witness(int n, int s, const std::vector<LaurentPoly>& hs,
                                   double tol = 1e-6);

// Best line parameter whose orbit point (angles lambda_i t mod 2pi) comes
// closest, in max angular distance, to a given torus point. A density
// diagnostic: the error shrinks as the sample count grows but only slowly in
// high dimension.
struct LineApproximation {
    double t = 0.0;
    double max_angle_error = 0.0;
};

LineApproximation approximate_line_t(const std::vector<Frequency>& freqs,
                                     const std::vector<double>& angles, long count = 1000000,
                                     double dt = 0.01);

// Hypothesis check plus certified bound for the perturbation argument: with
// ||F_j - H_j|| < 1/(24N) the combination F = sum H_j F_{N+j} + G satisfies
// |4F - 1| <= 1/2 on the torus, hence F is invertible.
struct ResistanceReport {
    double required_bound = 0.0;  // 1/(24N)
    std::vector<double> diff_certified;
    double max_value = 0.0;      // observed max of |4F - 1|
    double certified_max = 0.0;  // certified upper bound
    bool f_invertible = false;
};

ResistanceReport approximation_resistance_check(int n, const std::vector<Frequency>& lambdas,
                                                const std::vector<TrigPoly>& hs, TablePtr table,
                                                long grid = 0,
                                                int refinements = kDefaultRefinements);

// Reference stable ranks: the polydisk algebra on D^N and continuous
// functions on T^N. The almost periodic families with infinite-dimensional
// frequency module all carry infinite ranks and are reported as such by the
// CLI serializer.
struct StableRanks {
    int n = 0;
    int polydisk_bsr = 0;
    int polydisk_tsr = 0;
    int torus_bsr = 0;
    int torus_tsr = 0;
};

StableRanks stable_rank_reference(int n);

const char* to_string(InvVerdict v);
const char* to_string(WitnessMethod m);

}  // namespace apalg
