#include "apalg/freqmod.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace apalg {

namespace {

Int int_lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    Int g = boost::multiprecision::gcd(a, b);
    return boost::multiprecision::abs(a / g * b);
}

// extended gcd: returns (g, p, q) with p*a + q*b = g = gcd(a, b), g >= 0
std::tuple<Int, Int, Int> xgcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

}  // namespace

GeneratorTable::GeneratorTable(std::vector<Generator> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw Error("generator table must have at least one entry");
    std::set<std::string> names;
    for (auto& g : entries_) {
        if (g.name.empty()) throw Error("generator name must be nonempty");
        if (!names.insert(g.name).second) throw Error("duplicate generator name: " + g.name);
    }
}

std::optional<std::size_t> GeneratorTable::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i].name == name) return i;
    return std::nullopt;
}

bool GeneratorTable::operator==(const GeneratorTable& o) const {
    if (entries_.size() != o.entries_.size()) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].name != o.entries_[i].name) return false;
        if (entries_[i].value != o.entries_[i].value) return false;
        if (entries_[i].independent != o.entries_[i].independent) return false;
    }
    return true;
}

TablePtr make_table(std::vector<std::pair<std::string, std::string>> name_value_pairs) {
    std::vector<Generator> gens;
    gens.reserve(name_value_pairs.size());
    for (auto& [name, value] : name_value_pairs)
        gens.push_back({name, value, parse_decimal(value), true});
    return std::make_shared<GeneratorTable>(std::move(gens));
}

bool Frequency::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rat& r) { return r == 0; });
}

Frequency Frequency::negated() const {
    Frequency out;
    out.coords.reserve(coords.size());
    for (auto& c : coords) out.coords.push_back(-c);
    out.shadow = -shadow;
    return out;
}

std::strong_ordering Frequency::operator<=>(const Frequency& o) const {
    if (auto c = coords.size() <=> o.coords.size(); c != 0) return c;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < o.coords[i]) return std::strong_ordering::less;
        if (coords[i] > o.coords[i]) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Frequency make_frequency(std::vector<Rat> coords, const GeneratorTable& table) {
    if (coords.size() != table.size())
        throw Error("frequency coordinate count does not match generator table");
    Frequency f;
    f.coords = std::move(coords);
    // exact accumulation, one rounding at the end
    Rat sum = 0;
    for (std::size_t i = 0; i < f.coords.size(); ++i) sum += f.coords[i] * table.at(i).value;
    f.shadow = to_double(sum);
    return f;
}

Frequency zero_frequency(const GeneratorTable& table) {
    return make_frequency(std::vector<Rat>(table.size(), Rat(0)), table);
}

Frequency unit_frequency(std::size_t index, const GeneratorTable& table) {
    std::vector<Rat> c(table.size(), Rat(0));
    c.at(index) = 1;
    return make_frequency(std::move(c), table);
}

Frequency freq_add(const Frequency& a, const Frequency& b) {
    if (a.coords.size() != b.coords.size()) throw Error("frequency table mismatch");
    Frequency out;
    out.coords.reserve(a.coords.size());
    for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords.push_back(a.coords[i] + b.coords[i]);
    out.shadow = a.shadow + b.shadow;
    return out;
}

Frequency freq_scale(const Frequency& a, const Rat& c) {
    Frequency out;
    out.coords.reserve(a.coords.size());
    for (auto& x : a.coords) out.coords.push_back(x * c);
    out.shadow = a.shadow * to_double(c);
    return out;
}

// --- frequency grammar -----------------------------------------------------
//
//   freq  := ["-"] sterm (("+"|"-") sterm)*
//   sterm := [rational "*"] ident | rational
//   rational := int ["/" int]

namespace {

struct FreqLexer {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::optional<Rat> rational() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
                throw Error("malformed rational in frequency at position " + std::to_string(pos));
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        return parse_rational(s.substr(start, pos - start));
    }
    std::optional<std::string> ident() {
        skip_ws();
        if (pos >= s.size()) return std::nullopt;
        char c = s[pos];
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') return std::nullopt;
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return std::string(s.substr(start, pos - start));
    }
};

}  // namespace

Frequency freq_parse(std::string_view text, const GeneratorTable& table) {
    FreqLexer lx{text};
    std::vector<Rat> coords(table.size(), Rat(0));

    bool first = true;
    Rat sign = 1;
    if (lx.eat('-')) sign = -1;
    while (true) {
        if (!first) {
            if (lx.done()) break;
            if (lx.eat('+')) sign = 1;
            else if (lx.eat('-')) sign = -1;
            else throw Error("expected '+' or '-' in frequency at position " + std::to_string(lx.pos));
        }
        first = false;

        if (auto r = lx.rational()) {
            if (lx.eat('*')) {
                auto name = lx.ident();
                if (!name) throw Error("expected generator name after '*' at position " + std::to_string(lx.pos));
                auto idx = table.index_of(*name);
                if (!idx) throw Error("unknown generator name: " + *name);
                coords[*idx] += sign * *r;
            } else {
                // bare rational term: only 0 names a frequency
                if (*r != 0)
                    throw Error("bare nonzero rational '" + rational_text(*r) +
                                "' is not a frequency; use c*name");
            }
        } else if (auto name = lx.ident()) {
            auto idx = table.index_of(*name);
            if (!idx) throw Error("unknown generator name: " + *name);
            coords[*idx] += sign;
        } else {
            throw Error("expected frequency term at position " + std::to_string(lx.pos));
        }
        if (lx.done()) break;
    }
    return make_frequency(std::move(coords), table);
}

std::string freq_text(const Frequency& f, const GeneratorTable& table) {
    if (f.coords.size() != table.size()) throw Error("frequency table mismatch");
    std::string out;
    for (std::size_t i = 0; i < f.coords.size(); ++i) {
        const Rat& c = f.coords[i];
        if (c == 0) continue;
        Rat mag = c < 0 ? Rat(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mag != 1) out += rational_text(mag) + "*";
        out += table.at(i).name;
    }
    if (out.empty()) out = "0";
    return out;
}

Sign sign_of(const Frequency& f, double eps_sign) {
    if (f.is_zero()) return Sign::Zero;
    if (f.shadow > eps_sign) return Sign::Positive;
    if (f.shadow < -eps_sign) return Sign::Negative;
    return Sign::Uncertain;
}

// --- basis extraction -------------------------------------------------------

namespace {

// Solve B c = v exactly over Q, where B's columns are the selected basis
// coordinate vectors. The system is consistent by construction.
std::vector<Rat> solve_over_basis(const std::vector<const Frequency*>& basis,
                                  const Frequency& v) {
    const std::size_t dim = v.coords.size();
    const std::size_t m = basis.size();
    // augmented matrix [B | v], rows indexed by generator coordinate
    std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(m + 1, Rat(0)));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < m; ++c) a[r][c] = basis[c]->coords[r];
        a[r][m] = v.coords[r];
    }
    std::vector<std::size_t> pivot_row(m);
    std::size_t row = 0;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pr = row;
        while (pr < dim && a[pr][col] == 0) ++pr;
        if (pr == dim) throw Error("basis matrix unexpectedly rank deficient");
        std::swap(a[row], a[pr]);
        for (std::size_t r = 0; r < dim; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rat factor = a[r][col] / a[row][col];
            for (std::size_t c = col; c <= m; ++c) a[r][c] -= factor * a[row][c];
        }
        pivot_row[col] = row;
        ++row;
    }
    std::vector<Rat> out(m);
    for (std::size_t col = 0; col < m; ++col)
        out[col] = a[pivot_row[col]][m] / a[pivot_row[col]][col];
    return out;
}

}  // namespace

FrequencyBasis extract_basis(const std::vector<Frequency>& freqs) {
    if (freqs.empty()) throw Error("extract_basis requires a nonempty frequency list");
    const std::size_t dim = freqs.front().coords.size();
    for (auto& f : freqs)
        if (f.coords.size() != dim) throw Error("frequency table mismatch in extract_basis");

    FrequencyBasis out;

    // Greedy left-to-right: keep a row-reduced copy of the selected vectors;
    // a candidate joins the basis iff it does not reduce to zero.
    std::vector<std::vector<Rat>> reduced;      // echelon rows
    std::vector<std::size_t> pivot_col;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        std::vector<Rat> v = freqs[j].coords;
        for (std::size_t k = 0; k < reduced.size(); ++k) {
            if (v[pivot_col[k]] == 0) continue;
            Rat factor = v[pivot_col[k]] / reduced[k][pivot_col[k]];
            for (std::size_t c = 0; c < dim; ++c) v[c] -= factor * reduced[k][c];
        }
        std::size_t pc = 0;
        while (pc < dim && v[pc] == 0) ++pc;
        if (pc == dim) continue;  // dependent on earlier selections
        out.basis_indices.push_back(j);
        reduced.push_back(std::move(v));
        pivot_col.push_back(pc);
    }

    std::vector<const Frequency*> basis;
    for (auto i : out.basis_indices) basis.push_back(&freqs[i]);

    // Express every input over the basis, collect the lcm of denominators as
    // the scaling s, then clear denominators into integer rewrite vectors.
    std::vector<std::vector<Rat>> coeffs(freqs.size());
    Int s = 1;
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        if (freqs[j].is_zero()) {
            coeffs[j].assign(basis.size(), Rat(0));
            continue;
        }
        coeffs[j] = solve_over_basis(basis, freqs[j]);
        for (auto& c : coeffs[j]) s = int_lcm(s, denominator(c));
    }
    out.scale = s;
    out.rewrite.resize(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        out.rewrite[j].reserve(basis.size());
        for (auto& c : coeffs[j]) {
            Rat scaled = c * Rat(s);
            if (denominator(scaled) != 1) throw Error("internal: rewrite not integral");
            out.rewrite[j].push_back(numerator(scaled));
        }
    }
    return out;
}

// --- integer systems ---------------------------------------------------------

IntSystemSolution solve_integer_system(std::vector<std::vector<Int>> rows, std::vector<Int> rhs) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    if (rhs.size() != m) throw Error("rhs size mismatch");

    // Column reduction A -> A U with U unimodular; pivots are placed in
    // consecutive columns, entries right of a pivot are zeroed in its row and
    // stay zero afterwards.
    std::vector<std::vector<Int>> h = rows;
    std::vector<std::vector<Int>> u(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;

    auto combine = [&](std::size_t j1, std::size_t j2, const Int& p, const Int& q,
                       const Int& r1, const Int& r2) {
        // (col j1, col j2) <- (p*j1 + q*j2, r1*j2 - r2*j1); det = p*r1 + q*r2 = 1
        for (std::size_t r = 0; r < m; ++r) {
            Int a = h[r][j1], b = h[r][j2];
            h[r][j1] = p * a + q * b;
            h[r][j2] = r1 * b - r2 * a;
        }
        for (std::size_t r = 0; r < n; ++r) {
            Int a = u[r][j1], b = u[r][j2];
            u[r][j1] = p * a + q * b;
            u[r][j2] = r1 * b - r2 * a;
        }
    };
    auto swap_cols = [&](std::size_t j1, std::size_t j2) {
        for (std::size_t r = 0; r < m; ++r) std::swap(h[r][j1], h[r][j2]);
        for (std::size_t r = 0; r < n; ++r) std::swap(u[r][j1], u[r][j2]);
    };

    std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
    std::size_t col = 0;
    for (std::size_t row = 0; row < m && col < n; ++row) {
        if (h[row][col] == 0) {
            std::size_t j = col + 1;
            while (j < n && h[row][j] == 0) ++j;
            if (j == n) continue;  // no pivot in this row
            swap_cols(col, j);
        }
        for (std::size_t j = col + 1; j < n; ++j) {
            if (h[row][j] == 0) continue;
            auto [g, p, q] = xgcd(h[row][col], h[row][j]);
            combine(col, j, p, q, h[row][col] / g, h[row][j] / g);
        }
        if (h[row][col] < 0) {
            for (std::size_t r = 0; r < m; ++r) h[r][col] = -h[r][col];
            for (std::size_t r = 0; r < n; ++r) u[r][col] = -u[r][col];
        }
        pivots.emplace_back(row, col);
        ++col;
    }
    const std::size_t rank = pivots.size();

    IntSystemSolution sol;
    sol.kernel.reserve(n - rank);
    for (std::size_t j = rank; j < n; ++j) {
        std::vector<Int> k(n);
        for (std::size_t r = 0; r < n; ++r) k[r] = u[r][j];
        sol.kernel.push_back(std::move(k));
    }

    // forward substitution over the pivot columns
    std::vector<Int> y(n, 0);
    std::vector<Int> residual = rhs;
    for (auto [pr, pc] : pivots) {
        if (residual[pr] % h[pr][pc] != 0) return sol;  // unsolvable over Z
        y[pc] = residual[pr] / h[pr][pc];
        if (y[pc] != 0)
            for (std::size_t r = 0; r < m; ++r) residual[r] -= y[pc] * h[r][pc];
    }
    for (auto& r : residual)
        if (r != 0) return sol;

    sol.solvable = true;
    sol.particular.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < rank; ++c) sol.particular[r] += u[r][c] * y[c];
    return sol;
}

// --- semigroup membership ----------------------------------------------------

SemigroupSpec SemigroupSpec::nspan(std::vector<Frequency> gens) {
    if (gens.empty()) throw Error("NSpan requires at least one generator");
    return {SemigroupKind::NSpan, std::move(gens)};
}

SemigroupSpec SemigroupSpec::zspan(std::vector<Frequency> gens) {
    if (gens.empty()) throw Error("ZSpan requires at least one generator");
    return {SemigroupKind::ZSpan, std::move(gens)};
}

namespace {

// Clear denominators row-wise: coordinate r of every generator and of lambda
// is scaled by the same positive integer, which preserves integer solvability.
void build_integer_system(const Frequency& lambda, const std::vector<Frequency>& gens,
                          std::vector<std::vector<Int>>& rows, std::vector<Int>& rhs) {
    const std::size_t dim = lambda.coords.size();
    for (auto& g : gens)
        if (g.coords.size() != dim) throw Error("semigroup generators use a different table");
    rows.assign(dim, std::vector<Int>(gens.size(), 0));
    rhs.assign(dim, 0);
    for (std::size_t r = 0; r < dim; ++r) {
        Int l = denominator(lambda.coords[r]);
        for (auto& g : gens) l = int_lcm(l, denominator(g.coords[r]));
        for (std::size_t c = 0; c < gens.size(); ++c) {
            Rat scaled = gens[c].coords[r] * Rat(l);
            rows[r][c] = numerator(scaled);
        }
        rhs[r] = numerator(lambda.coords[r] * Rat(l));
    }
}

bool all_nonnegative(const std::vector<Int>& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x >= 0; });
}

}  // namespace

MembershipResult membership(const Frequency& lambda, const SemigroupSpec& spec,
                            const MembershipOptions& opts) {
    switch (spec.kind) {
        case SemigroupKind::AllReals:
            return {Membership::Member, std::nullopt};
        case SemigroupKind::NonNegReals: {
            switch (sign_of(lambda, opts.eps_sign)) {
                case Sign::Zero:
                case Sign::Positive: return {Membership::Member, std::nullopt};
                case Sign::Negative: return {Membership::NonMember, std::nullopt};
                case Sign::Uncertain: return {Membership::Inconclusive, std::nullopt};
            }
            return {Membership::Inconclusive, std::nullopt};
        }
        case SemigroupKind::ZSpan:
        case SemigroupKind::NSpan: break;
    }

    std::vector<std::vector<Int>> rows;
    std::vector<Int> rhs;
    build_integer_system(lambda, spec.generators, rows, rhs);
    IntSystemSolution sys = solve_integer_system(std::move(rows), std::move(rhs));
    if (!sys.solvable) return {Membership::NonMember, std::nullopt};
    if (spec.kind == SemigroupKind::ZSpan) return {Membership::Member, sys.particular};

    // NSpan: look for a nonnegative point x0 + sum c_i k_i of the solution
    // lattice. The unique-solution case is decidable outright.
    if (sys.kernel.empty()) {
        if (all_nonnegative(sys.particular)) return {Membership::Member, sys.particular};
        return {Membership::NonMember, std::nullopt};
    }
    if (all_nonnegative(sys.particular)) return {Membership::Member, sys.particular};

    const long K = opts.coeff_bound;
    const std::size_t kd = sys.kernel.size();
    double combos = 1.0;
    for (std::size_t i = 0; i < kd; ++i) combos *= static_cast<double>(2 * K + 1);
    if (combos > static_cast<double>(opts.combo_budget))
        return {Membership::Inconclusive, std::nullopt};

    std::vector<long> c(kd, -K);
    std::vector<Int> x = sys.particular;
    for (std::size_t i = 0; i < kd; ++i)
        for (std::size_t r = 0; r < x.size(); ++r) x[r] += Int(-K) * sys.kernel[i][r];
    // odometer walk updates x incrementally by one kernel vector per step
    while (true) {
        if (all_nonnegative(x)) return {Membership::Member, x};
        std::size_t i = 0;
        while (i < kd && c[i] == K) ++i;
        if (i == kd) break;
        c[i] += 1;
        for (std::size_t r = 0; r < x.size(); ++r) x[r] += sys.kernel[i][r];
        for (std::size_t j = 0; j < i; ++j) {
            Int delta = Int(-K - c[j]);
            for (std::size_t r = 0; r < x.size(); ++r) x[r] += delta * sys.kernel[j][r];
            c[j] = -K;
        }
    }
    return {Membership::Inconclusive, std::nullopt};
}

const char* to_string(Sign s) {
    switch (s) {
        case Sign::Positive: return "positive";
        case Sign::Negative: return "negative";
        case Sign::Zero: return "zero";
        case Sign::Uncertain: return "uncertain";
    }
    return "?";
}

const char* to_string(Membership m) {
    switch (m) {
        case Membership::Member: return "member";
        case Membership::NonMember: return "non-member";
        case Membership::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(SemigroupKind k) {
    switch (k) {
        case SemigroupKind::NSpan: return "nspan";
        case SemigroupKind::ZSpan: return "zspan";
        case SemigroupKind::NonNegReals: return "nonneg";
        case SemigroupKind::AllReals: return "all";
    }
    return "?";
}

}  // namespace apalg
