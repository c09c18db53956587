#pragma once

#include "apalg/rational.hpp"

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apalg {

// Numerical sign decisions on generator values use this guard band; values
// inside the band are reported Uncertain/Inconclusive rather than guessed.
constexpr double kEpsSign = 1e-9;

struct Generator {
    std::string name;
    std::string value_text;  // decimal literal as declared
    Rat value;               // exact rational value of the literal
    bool independent = true;
};

// Ordered table of named real generators. The independence flag records the
// user's claim that the flagged values are linearly independent over Q; the
// algebra trusts the claim and works in exact rational coordinates, so only
// evaluation and sign diagnostics ever touch the decimal values.
class GeneratorTable {
public:
    explicit GeneratorTable(std::vector<Generator> entries);

    std::size_t size() const { return entries_.size(); }
    const Generator& at(std::size_t i) const { return entries_.at(i); }
    std::optional<std::size_t> index_of(std::string_view name) const;
    const std::vector<Generator>& entries() const { return entries_; }

    bool operator==(const GeneratorTable& o) const;

private:
    std::vector<Generator> entries_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

TablePtr make_table(std::vector<std::pair<std::string, std::string>> name_value_pairs);

// A real frequency as an exact rational vector over the generator table,
// together with its float value.
struct Frequency {
    std::vector<Rat> coords;
    double shadow = 0.0;

    bool is_zero() const;
    Frequency negated() const;

    bool operator==(const Frequency& o) const { return coords == o.coords; }
    std::strong_ordering operator<=>(const Frequency& o) const;
};

Frequency make_frequency(std::vector<Rat> coords, const GeneratorTable& table);
Frequency zero_frequency(const GeneratorTable& table);
Frequency unit_frequency(std::size_t index, const GeneratorTable& table);
Frequency freq_add(const Frequency& a, const Frequency& b);
Frequency freq_scale(const Frequency& a, const Rat& c);

/// Parse the frequency grammar
///   freq := ["-"] sterm (("+"|"-") sterm)* ; sterm := [rational "*"] ident | rational
/// against the table (bare rationals must be 0: frequencies are combinations
/// of generators).
Frequency freq_parse(std::string_view text, const GeneratorTable& table);
std::string freq_text(const Frequency& f, const GeneratorTable& table);

enum class Sign { Positive, Negative, Zero, Uncertain };

/// Zero iff coords are exactly zero; otherwise the sign of the shadow with a
/// guard band, Uncertain inside the band.
Sign sign_of(const Frequency& f, double eps_sign = kEpsSign);

// Result of expressing a frequency list over a Q-linearly independent subset
// of itself: s * freqs[j] = sum_n rewrite[j][n] * freqs[basis_indices[n]]
// holds exactly in rational coordinates for every j.
struct FrequencyBasis {
    std::vector<std::size_t> basis_indices;
    Int scale = 1;  // the common denominator s, lcm over all rewrites
    std::vector<std::vector<Int>> rewrite;
};

/// Greedy left-to-right basis selection by exact Gaussian elimination over Q.
/// Zero frequencies get the zero rewrite vector; all-zero input yields an
/// empty basis with s = 1.
FrequencyBasis extract_basis(const std::vector<Frequency>& freqs);

enum class SemigroupKind { NSpan, ZSpan, NonNegReals, AllReals };

struct SemigroupSpec {
    SemigroupKind kind = SemigroupKind::AllReals;
    std::vector<Frequency> generators;  // nonempty for NSpan/ZSpan

    static SemigroupSpec nspan(std::vector<Frequency> gens);
    static SemigroupSpec zspan(std::vector<Frequency> gens);
    static SemigroupSpec nonneg_reals() { return {SemigroupKind::NonNegReals, {}}; }
    static SemigroupSpec all_reals() { return {SemigroupKind::AllReals, {}}; }
};

enum class Membership { Member, NonMember, Inconclusive };

struct MembershipOptions {
    long coeff_bound = 32;        // K: NSpan lattice search box [-K, K]
    long combo_budget = 2000000;  // cap on lattice points tried before giving up
    double eps_sign = kEpsSign;
};

struct MembershipResult {
    Membership verdict = Membership::Inconclusive;
    // integer coefficients over the semigroup generators when one was found
    std::optional<std::vector<Int>> witness;
};

/// ZSpan: exact integer-lattice solve. NSpan: lattice solve plus bounded
/// search for a nonnegative solution (Inconclusive when the box is exhausted
/// without a decision). NonNegReals: sign of the shadow with guard band.
MembershipResult membership(const Frequency& lambda, const SemigroupSpec& spec,
                            const MembershipOptions& opts = {});

// Exact solver for A x = b over the integers (A given as rows). Produces a
// particular solution and a basis of the solution lattice of A x = 0 via
// unimodular column reduction.
struct IntSystemSolution {
    bool solvable = false;
    std::vector<Int> particular;
    std::vector<std::vector<Int>> kernel;
};

IntSystemSolution solve_integer_system(std::vector<std::vector<Int>> rows, std::vector<Int> rhs);

const char* to_string(Sign s);
const char* to_string(Membership m);
const char* to_string(SemigroupKind k);

}  // namespace apalg
