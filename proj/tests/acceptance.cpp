// Acceptance suite: end-to-end checks with pinned tolerances, one line per
// criterion. Exit code is the number of failed criteria.

#include "apalg/aplus.hpp"
#include "apalg/bohr.hpp"
#include "apalg/corona.hpp"
#include "apalg/expr.hpp"
#include "apalg/freqmod.hpp"
#include "apalg/torus.hpp"
#include "apalg/trigpoly.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace apalg;

namespace {

double unit(std::mt19937& rng) { return static_cast<double>(rng()) / 4294967296.0; }

long pick(std::mt19937& rng, long lo, long hi) {
    return lo + static_cast<long>(unit(rng) * static_cast<double>(hi - lo + 1));
}

Rat random_rational(std::mt19937& rng, long num_range, long max_den) {
    return Rat(pick(rng, -num_range, num_range), pick(rng, 1, max_den));
}

TablePtr sqrt_table(int count) {
    static const std::vector<std::pair<std::string, std::string>> roots = {
        {"r2", "1.41421356237309504880168872420969808"},
        {"r3", "1.73205080756887729352744634150587237"},
        {"r5", "2.23606797749978969640917366873127624"},
        {"r6", "2.44948974278317809819728407470589139"},
        {"r7", "2.64575131106459059050161575363926043"},
        {"r10", "3.16227766016837933199889354443271853"},
        {"r11", "3.31662479035539984911493273667068668"},
        {"r13", "3.60555127546398929311922126747049595"},
    };
    std::vector<std::pair<std::string, std::string>> chosen(roots.begin(), roots.begin() + count);
    return make_table(std::move(chosen));
}

struct Criterion {
    int number;
    std::string label;
    double time_limit_s;
    std::function<bool(std::string&)> body;
};

// --- 1: exact Bezout identity ---------------------------------------------------

bool check_quarter_identity(std::string& detail) {
    for (int n : {1, 2, 3}) {
        for (int s : {1, 2, 3}) {
            auto ex = example_fundamental(n, s);
            LaurentPoly sum = LaurentPoly::constant(4 * n, CRat(0));
            for (int j = 0; j < n; ++j) sum = sum + ex.partners[j] * ex.fs[j];
            sum = sum + ex.g;
            if (!(sum == LaurentPoly::constant(4 * n, CRat(Rat(1, 4))))) {
                detail = "identity failed at N=" + std::to_string(n) + " s=" + std::to_string(s);
                return false;
            }
        }
    }
    detail = "sum f_{N+j} f_j + g = 1/4 exactly for N,s in {1,2,3}^2";
    return true;
}

// --- 2: transfer round trip -----------------------------------------------------

bool check_transfer_roundtrip(std::string& detail) {
    auto table = sqrt_table(3);
    std::mt19937 rng(20260810u);
    for (int trial = 0; trial < 100; ++trial) {
        TrigPoly p(table);
        int terms = static_cast<int>(pick(rng, 1, 6));
        for (int i = 0; i < terms; ++i) {
            std::vector<Rat> coords;
            for (int c = 0; c < 3; ++c) coords.push_back(random_rational(rng, 6, 6));
            p.add_term(make_frequency(std::move(coords), *table),
                       CRat(random_rational(rng, 4, 4), random_rational(rng, 4, 4)));
        }
        TransferResult tr = transfer(p);
        if (!(back_substitute(tr.q, tr.scaled_freqs, table) == p)) {
            detail = "round trip broke at trial " + std::to_string(trial);
            return false;
        }
    }
    detail = "100 random transfers reproduced exactly by back-substitution";
    return true;
}

// --- 3: power-sum section is a section ------------------------------------------

bool check_section_identity(std::string& detail) {
    std::mt19937 rng(31337);
    double worst = 0.0;
    for (int s : {1, 2, 3}) {
        for (int i = 0; i < 200; ++i) {
            double r = 2.0 * std::sqrt(unit(rng));
            double theta = (2.0 * unit(rng) - 1.0) * (M_PI - 1e-9);
            std::complex<double> z = std::polar(std::max(r, 1e-9), theta);
            if (z.imag() == 0.0 && z.real() <= 0.0) z += std::complex<double>(0.0, 1e-12);
            auto [z1, z2] = power_sum_section(z, s);
            worst = std::max(worst, std::abs(power_sum(z1, z2, s) - z));
        }
    }
    std::ostringstream os;
    os << "max |f_s(g_s(z)) - z| = " << worst << " over 600 points";
    detail = os.str();
    return worst <= 1e-12;
}

// --- 4: torus extrema against line sampling --------------------------------------

bool check_kronecker_extrema(std::string& detail) {
    auto table = make_table({{"w1", "1.0"}, {"w2", "1.41421356237309504880168872420969808"}});
    TrigPoly f1 = TrigPoly::character(table, unit_frequency(0, *table)) +
                  TrigPoly::character(table, unit_frequency(1, *table)) -
                  TrigPoly::constant(table, CRat(1));
    auto tr = transfer(f1);
    auto min_rep = torus_min_abs(tr.q);
    auto max_rep = torus_max_abs(tr.q);
    auto scan = line_scan_abs(f1, 1e4, 1e-3);

    std::ostringstream os;
    os << "torus min " << min_rep.value << ", torus max " << max_rep.value << ", line inf "
       << scan.inf << ", line sup " << scan.sup;
    detail = os.str();
    if (!(std::abs(min_rep.value) <= 1e-6)) return false;
    if (!(std::abs(max_rep.value - 3.0) <= 1e-9)) return false;
    if (!(scan.sup >= 3.0 - 1e-2)) return false;
    if (!(scan.inf <= 1e-2)) return false;
    return true;
}

// --- 5: mean value convergence ----------------------------------------------------

bool check_fb_convergence(std::string& detail) {
    auto table = sqrt_table(3);
    std::mt19937 rng(5005);
    int done = 0;
    while (done < 10) {
        TrigPoly p(table);
        int terms = static_cast<int>(pick(rng, 1, 4));
        for (int i = 0; i < terms; ++i) {
            std::vector<Rat> coords;
            for (int c = 0; c < 3; ++c) coords.push_back(random_rational(rng, 3, 2));
            p.add_term(make_frequency(std::move(coords), *table),
                       CRat(random_rational(rng, 3, 3), random_rational(rng, 3, 3)));
        }
        Frequency lambda = unit(rng) < 0.5 && !p.is_zero()
                               ? p.spectrum().front()
                               : zero_frequency(*table);
        std::complex<double> exact = fb_exact(p, lambda).to_complex();
        std::vector<double> bounds;
        bool usable = true;
        for (double T : {1e2, 1e3, 1e4}) {
            MeanValueEstimate est;
            try {
                est = fb_numeric(p, lambda, T);
            } catch (const Error&) {
                usable = false;
                break;
            }
            if (std::abs(est.value - exact) > est.error_bound + 1e-15) {
                detail = "estimate left its error bound";
                return false;
            }
            bounds.push_back(est.error_bound);
        }
        if (!usable) continue;
        // the bound scales exactly like 1/T
        if (bounds[0] > 0.0) {
            double r1 = bounds[0] / (10.0 * bounds[1]);
            double r2 = bounds[1] / (10.0 * bounds[2]);
            if (std::abs(r1 - 1.0) > 0.01 || std::abs(r2 - 1.0) > 0.01) {
                detail = "error bound does not scale as 1/T";
                return false;
            }
        }
        ++done;
    }
    detail = "10 polynomials stayed inside the 1/T bounds at T = 1e2, 1e3, 1e4";
    return true;
}

// --- 6: corona solvers ------------------------------------------------------------

bool check_bezout_residuals(std::string& detail) {
    auto table = sqrt_table(3);
    std::mt19937 rng(60606);
    int done = 0;
    long attempts = 0;
    double worst = 0.0;
    while (done < 20 && attempts < 400) {
        ++attempts;
        TrigPoly a(table), b(table);
        int terms = static_cast<int>(pick(rng, 1, 3));
        for (int i = 0; i < terms; ++i) {
            std::vector<Rat> coords;
            for (int c = 0; c < 3; ++c) coords.push_back(random_rational(rng, 2, 2));
            a.add_term(make_frequency(std::move(coords), *table),
                       CRat(random_rational(rng, 2, 2), random_rational(rng, 2, 2)));
        }
        b.add_term(zero_frequency(*table), CRat(pick(rng, 2, 4)));
        for (int i = 0; i < 2; ++i) {
            std::vector<Rat> coords;
            for (int c = 0; c < 3; ++c) coords.push_back(random_rational(rng, 2, 2));
            b.add_term(make_frequency(std::move(coords), *table),
                       CRat(random_rational(rng, 1, 2), random_rational(rng, 1, 2)));
        }
        std::vector<TrigPoly> tuple{a, b};
        InvertibilityReport rep;
        try {
            rep = unimodular(tuple);
        } catch (const Error&) {
            continue;
        }
        if (rep.verdict != InvVerdict::Invertible || rep.certified_delta < 0.1) continue;
        auto sol = bezout(tuple, rep, {10000, 1000.0});
        worst = std::max(worst, sol.residual_bound);
        if (sol.residual_bound > 1e-8) {
            std::ostringstream os;
            os << "residual " << sol.residual_bound << " above 1e-8";
            detail = os.str();
            return false;
        }
        ++done;
    }
    if (done < 20) {
        detail = "could not certify 20 tuples with delta >= 0.1";
        return false;
    }
    std::ostringstream os;
    os << "20 certified tuples, worst residual " << worst << " at 1e4 samples";
    detail = os.str();
    return true;
}

// --- 7: zero witnesses ---------------------------------------------------------------

bool check_zero_witnesses(std::string& detail) {
    std::mt19937 rng(70707);
    std::vector<std::vector<LaurentPoly>> cases;
    cases.push_back({LaurentPoly(4)});  // h = 0
    for (int i = 0; i < 20; ++i) {
        LaurentPoly h(4);
        int terms = static_cast<int>(pick(rng, 1, 3));
        for (int j = 0; j < terms; ++j) {
            ExponentVec k(4);
            for (auto& e : k) e = pick(rng, -2, 2);
            double modulus = unit(rng);
            double phase = 2.0 * M_PI * unit(rng);
            h.add_term(std::move(k), CRat(rat_from_double(modulus * std::cos(phase)),
                                          rat_from_double(modulus * std::sin(phase))));
        }
        cases.push_back({h});
    }

    double worst_residual = 0.0;
    double worst_time = 0.0;
    auto ex = example_fundamental(1, 1);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        ZeroWitness wit;
        try {
            wit = reduction_zero_witness(1, 1, cases[i], 1e-6);
        } catch (const Error& e) {
            detail = "witness " + std::to_string(i) + " failed: " + e.what();
            return false;
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        worst_time = std::max(worst_time, elapsed);
        if (elapsed > 10.0) {
            detail = "instance " + std::to_string(i) + " took " + std::to_string(elapsed) + " s";
            return false;
        }
        if (!wit.boundary_winding || *wit.boundary_winding != 1) {
            detail = "boundary winding was not 1";
            return false;
        }
        // independent re-verification
        std::vector<std::complex<double>> z;
        for (double a : wit.torus_point) z.push_back(std::polar(1.0, a));
        double residual =
            std::abs(ex.fs[0].eval_points(z) + cases[i][0].eval_points(z) * ex.g.eval_points(z));
        worst_residual = std::max(worst_residual, residual);
        if (residual > 1e-6) {
            std::ostringstream os;
            os << "re-verified residual " << residual << " above 1e-6 at case " << i;
            detail = os.str();
            return false;
        }
    }
    std::ostringstream os;
    os << "21 witnesses, worst residual " << worst_residual << ", worst time " << worst_time
       << " s, winding 1 in every run";
    detail = os.str();
    return true;
}

// --- 8: approximation resistance -------------------------------------------------------

bool check_resistance(std::string& detail) {
    std::ostringstream os;
    for (int n : {1, 2}) {
        auto table = sqrt_table(4 * n);
        std::vector<Frequency> freqs;
        for (int i = 0; i < 4 * n; ++i) freqs.push_back(unit_frequency(i, *table));
        auto fs = example_general(freqs, table);
        std::vector<TrigPoly> hs;
        CRat c(Rat(1, 48 * n));
        for (int j = 0; j < n; ++j) hs.push_back(fs[j] + TrigPoly::constant(table, c));
        ResistanceReport rep;
        try {
            rep = approximation_resistance_check(n, freqs, hs, table);
        } catch (const Error& e) {
            detail = std::string("hypothesis check failed: ") + e.what();
            return false;
        }
        if (!(rep.certified_max <= 0.5 + 1e-9)) {
            os << "certified max " << rep.certified_max << " above 1/2 at N=" << n;
            detail = os.str();
            return false;
        }
        os << "N=" << n << " certified |4F-1| <= " << rep.certified_max << "; ";
    }
    detail = os.str();
    return true;
}

// --- 9: negative coefficient decay -------------------------------------------------------

bool check_negative_decay(std::string& detail) {
    auto table = sqrt_table(2);
    std::mt19937 rng(90909);
    Frequency lambda = unit_frequency(0, *table).negated();
    for (int trial = 0; trial < 10; ++trial) {
        TrigPoly p(table);
        int terms = static_cast<int>(pick(rng, 1, 4));
        for (int i = 0; i < terms; ++i) {
            std::vector<Rat> coords(2, Rat(0));
            for (auto& c : coords) c = Rat(pick(rng, 0, 2));
            p.add_term(make_frequency(std::move(coords), *table),
                       CRat(random_rational(rng, 2, 2), random_rational(rng, 2, 2)));
        }
        if (p.is_zero()) continue;

        // C = sum |a_j| / min gap
        double min_gap = 1e300;
        double norm = 0.0;
        for (auto& [f, coeff] : p.terms()) {
            min_gap = std::min(min_gap, std::abs(f.shadow - lambda.shadow));
            norm += coeff.abs();
        }
        double big_c = norm / min_gap;

        std::vector<MeanValueEstimate> ests;
        try {
            ests = negative_spectrum_decay(p, lambda, {1e2, 1e3, 1e4});
        } catch (const Error&) {
            continue;
        }
        for (auto& est : ests) {
            if (std::abs(est.value) > big_c / est.T + 1e-15) {
                std::ostringstream os;
                os << "|value| " << std::abs(est.value) << " above C/T " << big_c / est.T;
                detail = os.str();
                return false;
            }
        }
    }
    detail = "10 polynomials decayed within C/T at T = 1e2, 1e3, 1e4";
    return true;
}

// --- 10: stable ranks ----------------------------------------------------------------------

bool check_stable_ranks(std::string& detail) {
    for (int n = 1; n <= 8; ++n) {
        auto r = stable_rank_reference(n);
        if (r.polydisk_bsr != n / 2 + 1 || r.polydisk_tsr != n + 1 || r.torus_bsr != n / 2 + 1 ||
            r.torus_tsr != n / 2 + 1) {
            detail = "mismatch at N=" + std::to_string(n);
            return false;
        }
    }
    detail = "floor(N/2)+1 and N+1 reproduced for N = 1..8";
    return true;
}

// --- 11: Poisson consistency ---------------------------------------------------------------

bool check_poisson(std::string& detail) {
    auto table = sqrt_table(2);
    std::mt19937 rng(111111);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        TrigPoly p(table);
        int terms = static_cast<int>(pick(rng, 1, 3));
        for (int i = 0; i < terms; ++i) {
            std::vector<Rat> coords(2, Rat(0));
            for (auto& c : coords) c = Rat(pick(rng, 0, 1));
            p.add_term(make_frequency(std::move(coords), *table),
                       CRat(Rat(pick(rng, -2, 2), 4), Rat(pick(rng, -2, 2), 4)));
        }
        for (int j = 0; j < 5; ++j) {
            HalfPlanePoint z(6.0 * unit(rng) - 3.0, 0.4 + 0.5 * unit(rng));
            auto closed = extend(p, z);
            auto quad = poisson_extension_quadrature(p, z);
            double err = std::abs(closed - quad);
            worst = std::max(worst, err);
            if (err > 1e-3) {
                std::ostringstream os;
                os << "gap " << err << " above 1e-3 at trial " << trial;
                detail = os.str();
                return false;
            }
        }
    }
    std::ostringstream os;
    os << "20 polynomials x 5 points, worst closed-form/quadrature gap " << worst;
    detail = os.str();
    return true;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "exact quarter identity of the fundamental tuples", 1.0, check_quarter_identity},
        {2, "transfer round trip on 100 random polynomials", 5.0, check_transfer_roundtrip},
        {3, "power-sum section identity to 1e-12", 1.0, check_section_identity},
        {4, "torus extrema vs line sampling for the pair polynomial", 30.0, check_kronecker_extrema},
        {5, "mean value estimates within 1/T bounds", 1.0, check_fb_convergence},
        {6, "corona solver residuals at 1e4 samples", 10.0, check_bezout_residuals},
        {7, "zero witnesses with winding certificates", 215.0, check_zero_witnesses},
        {8, "approximation resistance bound |4F-1| <= 1/2", 20.0, check_resistance},
        {9, "negative coefficient decay within C/T", 1.0, check_negative_decay},
        {10, "stable rank reference table", 1.0, check_stable_ranks},
        {11, "Poisson quadrature consistency to 1e-3", 30.0, check_poisson},
    };

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.time_limit_s) {
            ok = false;
            detail += " [over time limit " + std::to_string(c.time_limit_s) + " s]";
        }
        std::printf("%s criterion %2d: %s (%s; %.2f s)\n", ok ? "PASS" : "FAIL", c.number,
                    c.label.c_str(), detail.c_str(), elapsed);
        if (!ok) ++failures;
    }
    return failures;
}
