#include "apalg/torus.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace apalg;
using namespace apalg::testutil;

namespace {

TrigPoly fundamental_pair(const TablePtr& t) {
    return TrigPoly::character(t, unit_frequency(0, *t)) +
           TrigPoly::character(t, unit_frequency(1, *t)) - TrigPoly::constant(t, CRat(1));
}

}  // namespace

TEST_CASE("transfer of independent frequencies keeps unit exponents") {
    auto t = table2();
    TrigPoly p = fundamental_pair(t);
    TransferResult tr = transfer(p);
    CHECK(tr.q.dim() == 2);
    CHECK(tr.basis.scale == 1);
    CHECK(tr.q.term_count() == 3);
    CHECK(tr.q.coefficient({0, 0}) == CRat(-1));
    CHECK(tr.q.coefficient({1, 0}) == CRat(1));
    CHECK(tr.q.coefficient({0, 1}) == CRat(1));
    // round trip
    CHECK(back_substitute(tr.q, tr.scaled_freqs, t) == p);
}

TEST_CASE("transfer of a single dependent-style frequency is its own basis") {
    auto t = table2();
    // e^{i (1 + sqrt2/2) t}: the spectrum is a singleton, so it is its own
    // basis with s = 1 and the transfer is one variable
    TrigPoly p = TrigPoly::character(t, freq_parse("w1 + 1/2*w2", *t));
    TransferResult tr = transfer(p);
    CHECK(tr.q.dim() == 1);
    CHECK(tr.basis.scale == 1);
    CHECK(tr.q.coefficient({1}) == CRat(1));
    CHECK(back_substitute(tr.q, tr.scaled_freqs, t) == p);
}

TEST_CASE("transfer scales dependent spectra into integer exponents") {
    auto t = table2();
    // spectrum {1, sqrt2, 1 + sqrt2/2}: the scaling 2 makes the rewrite of
    // the third frequency the integer vector (2, 1)
    TrigPoly p = TrigPoly::character(t, unit_frequency(0, *t)) +
                 TrigPoly::character(t, unit_frequency(1, *t)) +
                 TrigPoly::character(t, freq_parse("w1 + 1/2*w2", *t));
    TransferResult tr = transfer(p);
    CHECK(tr.q.dim() == 2);
    CHECK(tr.basis.scale == 2);
    for (auto& f : tr.scaled_freqs) CHECK(f.coords.size() == 2);
    CHECK(back_substitute(tr.q, tr.scaled_freqs, t) == p);

    // one term must carry exponent (s, 0), one (0, s), one the mixed rewrite
    bool mixed = false;
    for (auto& [k, c] : tr.q.terms())
        if (k[0] != 0 && k[1] != 0) mixed = true;
    CHECK(mixed);
}

TEST_CASE("constants transfer to the empty torus") {
    auto t = table2();
    TrigPoly c = TrigPoly::constant(t, CRat(Rat(2), Rat(1)));
    TransferResult tr = transfer(c);
    CHECK(tr.q.dim() == 0);
    CHECK(tr.q.term_count() == 1);
    CHECK(back_substitute(tr.q, tr.scaled_freqs, t) == c);

    TransferResult zero = transfer(TrigPoly::zero(t));
    CHECK(zero.q.dim() == 0);
    CHECK(zero.q.is_zero());
}

TEST_CASE("transfer round trip is exact on random polynomials") {
    auto t = table3();
    std::mt19937 rng(1789);
    for (int trial = 0; trial < 30; ++trial) {
        TrigPoly p = random_poly(rng, t, 6);
        TransferResult tr = transfer(p);
        CHECK(back_substitute(tr.q, tr.scaled_freqs, t) == p);
    }
}

TEST_CASE("joint transfer shares one basis across the tuple") {
    auto t = table2();
    std::vector<TrigPoly> fs{fundamental_pair(t),
                             TrigPoly::character(t, freq_parse("w1 + w2", *t))};
    auto tr = transfer_joint(fs);
    REQUIRE(tr.qs.size() == 2);
    CHECK(tr.qs[0].dim() == tr.qs[1].dim());
    for (std::size_t i = 0; i < fs.size(); ++i)
        CHECK(back_substitute(tr.qs[i], tr.scaled_freqs, t) == fs[i]);
}

TEST_CASE("torus minimum of the fundamental transfer is zero") {
    auto t = table2();
    auto tr = transfer(fundamental_pair(t));
    auto rep = torus_min_abs(tr.q);
    CHECK(rep.value <= 1e-9);
    CHECK(rep.certified_bound <= rep.value);
    // the zero sits at angles (pi/3, -pi/3) up to swapping the variables
    double a = rep.point[0], b = rep.point[1];
    double pi3 = M_PI / 3.0, mpi3 = 2.0 * M_PI - M_PI / 3.0;
    bool at_zero = (std::abs(a - pi3) < 1e-4 && std::abs(b - mpi3) < 1e-4) ||
                   (std::abs(a - mpi3) < 1e-4 && std::abs(b - pi3) < 1e-4);
    CHECK(at_zero);
}

TEST_CASE("torus minimum with a dominating constant is certified positive") {
    LaurentPoly q = LaurentPoly::constant(1, CRat(3));
    q.add_term({1}, CRat(1));  // z + 3
    auto rep = torus_min_abs(q);
    CHECK(rep.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.point[0] == doctest::Approx(M_PI).epsilon(1e-9));
    CHECK(rep.certified_bound > 1.9);

    LaurentPoly c = LaurentPoly::constant(0, CRat(Rat(-5, 2)));
    auto crep = torus_min_abs(c);
    CHECK(crep.value == doctest::Approx(2.5));
    CHECK(crep.certified_bound == doctest::Approx(2.5));
}

TEST_CASE("torus maximum reports the aligned peak and the wiener cap") {
    auto t = table2();
    auto tr = transfer(fundamental_pair(t));
    auto rep = torus_max_abs(tr.q);
    CHECK(rep.value == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rep.certified_bound == doctest::Approx(3.0));  // capped by the wiener norm
    CHECK(rep.point[0] == doctest::Approx(M_PI).epsilon(1e-6));
    CHECK(rep.point[1] == doctest::Approx(M_PI).epsilon(1e-6));

    LaurentPoly z1 = LaurentPoly::monomial(1, {1});
    auto single = torus_max_abs(z1);
    CHECK(single.value == doctest::Approx(1.0));
    CHECK(single.certified_bound == doctest::Approx(1.0));
}

TEST_CASE("line sampling approaches the torus extrema from inside") {
    auto t = table2();
    TrigPoly p = fundamental_pair(t);
    auto rep = torus_max_abs(transfer(p).q);
    auto scan = line_scan_abs(p, 2000.0, 1e-3);
    CHECK(scan.sup <= rep.value + 1e-9);
    CHECK(scan.sup >= rep.value - 5e-2);
}

TEST_CASE("sum of moduli objective") {
    // (z1, 1) on the circle: |z1| + 1 is constantly 2
    std::vector<LaurentPoly> qs{LaurentPoly::monomial(1, {1}), LaurentPoly::constant(1, CRat(1))};
    auto rep = torus_min_sumabs(qs);
    CHECK(rep.value == doctest::Approx(2.0));

    // independent pairs on T^4 reach zero jointly
    LaurentPoly f1(4), f2(4);
    f1.add_term({1, 0, 0, 0}, CRat(1));
    f1.add_term({0, 1, 0, 0}, CRat(1));
    f1.add_term({0, 0, 0, 0}, CRat(-1));
    f2.add_term({0, 0, 1, 0}, CRat(1));
    f2.add_term({0, 0, 0, 1}, CRat(1));
    f2.add_term({0, 0, 0, 0}, CRat(-1));
    std::vector<LaurentPoly> pair{f1, f2};
    auto zero = torus_min_sumabs(pair, 16, 40);
    CHECK(zero.value <= 1e-6);

    // |z + 3| + |z - 3| on the circle: minimum 6 at z = +-1
    LaurentPoly p1 = LaurentPoly::constant(1, CRat(3));
    p1.add_term({1}, CRat(1));
    LaurentPoly p2 = LaurentPoly::constant(1, CRat(-3));
    p2.add_term({1}, CRat(1));
    std::vector<LaurentPoly> both{p1, p2};
    auto six = torus_min_sumabs(both);
    // brute-force circle oracle
    double oracle = 1e300;
    for (int k = 0; k < 100000; ++k) {
        double a = 2.0 * M_PI * k / 100000.0;
        std::complex<double> z = std::polar(1.0, a);
        oracle = std::min(oracle, std::abs(z + 3.0) + std::abs(z - 3.0));
    }
    CHECK(six.value == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(six.value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("extremum reports are deterministic and internally consistent") {
    auto t = table3();
    std::mt19937 rng(404);
    for (int trial = 0; trial < 8; ++trial) {
        TrigPoly p = random_poly(rng, t, 4);
        if (p.is_zero()) continue;
        auto tr = transfer(p);
        if (tr.q.dim() > 3) continue;
        auto a = torus_min_abs(tr.q);
        auto b = torus_min_abs(tr.q);
        CHECK(a.value == b.value);
        CHECK(a.point == b.point);
        CHECK(a.certified_bound <= a.value + 1e-15);

        auto mx = torus_max_abs(tr.q);
        CHECK(mx.value <= mx.certified_bound + 1e-15);
        // the reported point reproduces the reported value
        CHECK(std::abs(std::abs(tr.q.eval_angles(mx.point)) - mx.value) < 1e-12);
    }
}

TEST_CASE("grid blow-up guard") {
    LaurentPoly q(9);
    ExponentVec k(9, 0);
    k[0] = 1;
    q.add_term(std::move(k), CRat(1));
    CHECK_THROWS_AS(torus_min_abs(q, 64), Error);
}

TEST_CASE("orbit sampling covers the cells of independent frequencies") {
    auto t = table2();
    auto rep = kronecker_orbit_sample({unit_frequency(0, *t), unit_frequency(1, *t)}, 1000000, 0.1);
    CHECK(rep.cells_total == 64);
    CHECK(rep.fraction >= 0.99);

    auto circle = kronecker_orbit_sample({unit_frequency(0, *t)}, 2000, 0.1);
    CHECK(circle.cells_occupied == 8);

    // 2 = 2 * 1 is a rational dependence
    CHECK_THROWS_AS(
        kronecker_orbit_sample({unit_frequency(0, *t), freq_parse("2*w1", *t)}, 100, 0.1),
        Error);
}
