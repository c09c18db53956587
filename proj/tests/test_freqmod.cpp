#include "apalg/freqmod.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace apalg;
using namespace apalg::testutil;

TEST_CASE("freq_parse reads rational combinations") {
    auto table = table2();
    Frequency f = freq_parse("3/2*w1 - w2", *table);
    CHECK(f.coords[0] == Rat(3, 2));
    CHECK(f.coords[1] == Rat(-1));

    Frequency zero = freq_parse("0", *table);
    CHECK(zero.is_zero());

    Frequency collected = freq_parse("w1 + 1/2*w1", *table);
    CHECK(collected.coords[0] == Rat(3, 2));
    CHECK(collected.coords[1] == Rat(0));
}

TEST_CASE("freq_parse rejects bad input") {
    auto table = table2();
    CHECK_THROWS_AS(freq_parse("w7", *table), Error);
    CHECK_THROWS_AS(freq_parse("3/0*w1", *table), Error);
    CHECK_THROWS_AS(freq_parse("3/2", *table), Error);  // bare nonzero rational
    CHECK_THROWS_AS(freq_parse("w1 + ", *table), Error);
}

TEST_CASE("freq_parse accepts a leading minus") {
    auto table = table2();
    Frequency f = freq_parse("-w1", *table);
    CHECK(f.coords[0] == Rat(-1));
    CHECK(f == freq_parse("0 - w1", *table));
}

TEST_CASE("extract_basis on independent input is the identity") {
    auto table = table2();
    std::vector<Frequency> freqs{unit_frequency(0, *table), unit_frequency(1, *table)};
    auto basis = extract_basis(freqs);
    REQUIRE(basis.basis_indices == std::vector<std::size_t>{0, 1});
    CHECK(basis.scale == 1);
    CHECK(basis.rewrite[0] == std::vector<Int>{1, 0});
    CHECK(basis.rewrite[1] == std::vector<Int>{0, 1});
}

TEST_CASE("extract_basis clears denominators into the scaling") {
    auto table = table2();
    // {1, sqrt2, 1 + sqrt2/2}: the third is dependent with a denominator of 2
    Frequency third = freq_parse("w1 + 1/2*w2", *table);
    std::vector<Frequency> freqs{unit_frequency(0, *table), unit_frequency(1, *table), third};
    auto basis = extract_basis(freqs);
    REQUIRE(basis.basis_indices == std::vector<std::size_t>{0, 1});
    CHECK(basis.scale == 2);
    // 2 * (1 + sqrt2/2) = 2 * 1 + 1 * sqrt2
    CHECK(basis.rewrite[2] == std::vector<Int>{2, 1});
}

TEST_CASE("extract_basis of a single scaled generator") {
    auto table = table2();
    std::vector<Frequency> freqs{freq_parse("2/3*w1", *table)};
    auto basis = extract_basis(freqs);
    CHECK(basis.basis_indices == std::vector<std::size_t>{0});
    CHECK(basis.scale == 1);
    CHECK(basis.rewrite[0] == std::vector<Int>{1});
}

TEST_CASE("extract_basis handles zero frequencies") {
    auto table = table2();
    std::vector<Frequency> freqs{zero_frequency(*table), unit_frequency(0, *table),
                                 zero_frequency(*table)};
    auto basis = extract_basis(freqs);
    CHECK(basis.basis_indices == std::vector<std::size_t>{1});
    CHECK(basis.rewrite[0] == std::vector<Int>{0});
    CHECK(basis.rewrite[2] == std::vector<Int>{0});

    std::vector<Frequency> zeros{zero_frequency(*table)};
    auto empty = extract_basis(zeros);
    CHECK(empty.basis_indices.empty());
    CHECK(empty.scale == 1);
}

TEST_CASE("extract_basis rewrite identities hold exactly") {
    auto table = table3();
    std::mt19937 rng(7101);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Frequency> freqs;
        int count = static_cast<int>(pick(rng, 1, 5));
        for (int i = 0; i < count; ++i) freqs.push_back(random_frequency(rng, *table));
        auto basis = extract_basis(freqs);

        // s * freq_j == sum_n rewrite[j][n] * basis_n, checked in exact coords
        for (std::size_t j = 0; j < freqs.size(); ++j) {
            for (std::size_t c = 0; c < table->size(); ++c) {
                Rat lhs = freqs[j].coords[c] * Rat(basis.scale);
                Rat rhs = 0;
                for (std::size_t n = 0; n < basis.basis_indices.size(); ++n)
                    rhs += Rat(basis.rewrite[j][n]) * freqs[basis.basis_indices[n]].coords[c];
                CHECK(lhs == rhs);
            }
        }

        // selected vectors have full rank: re-extracting from them keeps all
        std::vector<Frequency> selected;
        for (auto i : basis.basis_indices) selected.push_back(freqs[i]);
        if (!selected.empty())
            CHECK(extract_basis(selected).basis_indices.size() == selected.size());
    }
}

TEST_CASE("sign_of distinguishes zero, signs and the guard band") {
    auto table = table2();
    CHECK(sign_of(zero_frequency(*table)) == Sign::Zero);
    CHECK(sign_of(unit_frequency(0, *table)) == Sign::Positive);
    CHECK(sign_of(unit_frequency(0, *table).negated()) == Sign::Negative);

    // near-dependent generators: shadows 1 and 1 + 1e-12
    auto bad = make_table({{"u", "1.0"}, {"v", "1.000000000001"}});
    Frequency diff = freq_parse("u - v", *bad);
    CHECK_FALSE(diff.is_zero());
    CHECK(sign_of(diff) == Sign::Uncertain);
}

TEST_CASE("sign_of is antisymmetric") {
    auto table = table3();
    std::mt19937 rng(4242);
    for (int i = 0; i < 50; ++i) {
        Frequency f = random_frequency(rng, *table);
        Sign a = sign_of(f);
        Sign b = sign_of(f.negated());
        if (a == Sign::Uncertain || b == Sign::Uncertain) continue;
        if (a == Sign::Zero) CHECK(b == Sign::Zero);
        if (a == Sign::Positive) CHECK(b == Sign::Negative);
        if (a == Sign::Negative) CHECK(b == Sign::Positive);
    }
}

TEST_CASE("membership in integer spans") {
    auto table = table2();
    Frequency w1 = unit_frequency(0, *table);
    Frequency w2 = unit_frequency(1, *table);

    auto m = membership(freq_parse("3*w1", *table), SemigroupSpec::zspan({w1}));
    CHECK(m.verdict == Membership::Member);
    REQUIRE(m.witness.has_value());
    CHECK((*m.witness)[0] == 3);

    // -w1 over NSpan{w1}: the lattice is 0-dimensional, so the unique integer
    // solution x = -1 decides the question
    auto n = membership(freq_parse("-w1", *table), SemigroupSpec::nspan({w1}));
    CHECK(n.verdict == Membership::NonMember);

    auto r = membership(freq_parse("w1 + w2", *table), SemigroupSpec::nonneg_reals());
    CHECK(r.verdict == Membership::Member);

    CHECK(membership(w1, SemigroupSpec::all_reals()).verdict == Membership::Member);
    CHECK(membership(freq_parse("1/2*w1", *table), SemigroupSpec::zspan({w1})).verdict ==
          Membership::NonMember);
}

TEST_CASE("membership NSpan finds nonnegative lattice points") {
    auto table = table2();
    Frequency w1 = unit_frequency(0, *table);
    Frequency two_w1 = freq_parse("2*w1", *table);
    // 5 = 1*1 + 2*2: solvable with nonnegative coefficients
    auto m = membership(freq_parse("5*w1", *table), SemigroupSpec::nspan({w1, two_w1}));
    CHECK(m.verdict == Membership::Member);
    REQUIRE(m.witness.has_value());
    Int sum = (*m.witness)[0] + 2 * (*m.witness)[1];
    CHECK(sum == 5);
    CHECK((*m.witness)[0] >= 0);
    CHECK((*m.witness)[1] >= 0);

    // -w1 over NSpan{w1, 2w1} is unreachable but the lattice is unbounded, so
    // the bounded search surfaces Inconclusive rather than guessing
    auto n = membership(freq_parse("-w1", *table), SemigroupSpec::nspan({w1, two_w1}));
    CHECK(n.verdict == Membership::Inconclusive);
}

TEST_CASE("membership ZSpan agrees with brute force on random instances") {
    auto table = table2();
    std::mt19937 rng(90210);
    for (int trial = 0; trial < 40; ++trial) {
        Frequency g1 = random_frequency(rng, *table, 3, 2);
        Frequency g2 = random_frequency(rng, *table, 3, 2);
        if (g1.is_zero() || g2.is_zero()) continue;
        Frequency target = random_frequency(rng, *table, 4, 2);

        bool brute = false;
        for (long a = -8; a <= 8 && !brute; ++a)
            for (long b = -8; b <= 8 && !brute; ++b) {
                Frequency combo = freq_add(freq_scale(g1, Rat(a)), freq_scale(g2, Rat(b)));
                if (combo == target) brute = true;
            }

        auto m = membership(target, SemigroupSpec::zspan({g1, g2}));
        if (brute) CHECK(m.verdict == Membership::Member);
        if (m.verdict == Membership::NonMember) CHECK_FALSE(brute);
        if (m.verdict == Membership::Member) {
            // verify the returned witness exactly
            REQUIRE(m.witness.has_value());
            Frequency combo = freq_add(freq_scale(g1, Rat((*m.witness)[0])),
                                       freq_scale(g2, Rat((*m.witness)[1])));
            CHECK(combo == target);
        }
    }
}

TEST_CASE("membership requires a shared table") {
    auto t2 = table2();
    auto t3 = table3();
    CHECK_THROWS_AS(
        membership(unit_frequency(0, *t3), SemigroupSpec::zspan({unit_frequency(0, *t2)})),
        Error);
}

TEST_CASE("integer system solver handles rank-deficient systems") {
    // x + 2y = 4 duplicated row; kernel is spanned by (2, -1)
    std::vector<std::vector<Int>> rows{{1, 2}, {1, 2}};
    auto sol = solve_integer_system(rows, {4, 4});
    REQUIRE(sol.solvable);
    CHECK(sol.particular[0] + 2 * sol.particular[1] == 4);
    REQUIRE(sol.kernel.size() == 1);
    CHECK(sol.kernel[0][0] + 2 * sol.kernel[0][1] == 0);
    CHECK((sol.kernel[0][0] != 0 || sol.kernel[0][1] != 0));

    auto bad = solve_integer_system(rows, {4, 5});
    CHECK_FALSE(bad.solvable);

    // 2x = 3 has no integer solution
    auto odd = solve_integer_system({{2}}, {3});
    CHECK_FALSE(odd.solvable);
}
