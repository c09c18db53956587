#include "apalg/torus.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

namespace apalg {

LaurentPoly::LaurentPoly(int dim) : dim_(dim) {
    if (dim < 0) throw Error("negative torus dimension");
}

LaurentPoly LaurentPoly::constant(int dim, CRat value) {
    LaurentPoly q(dim);
    q.add_term(ExponentVec(dim, 0), value);
    return q;
}

LaurentPoly LaurentPoly::monomial(int dim, ExponentVec k, CRat coeff) {
    LaurentPoly q(dim);
    q.add_term(std::move(k), coeff);
    return q;
}

void LaurentPoly::add_term(ExponentVec k, const CRat& c) {
    if (static_cast<int>(k.size()) != dim_) throw Error("exponent vector has wrong dimension");
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CRat LaurentPoly::coefficient(const ExponentVec& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? CRat() : it->second;
}

LaurentPoly LaurentPoly::conjugated() const {
    LaurentPoly out(dim_);
    for (auto& [k, c] : terms_) {
        ExponentVec nk(k.size());
        for (std::size_t i = 0; i < k.size(); ++i) nk[i] = -k[i];
        out.add_term(std::move(nk), c.conjugate());
    }
    return out;
}

std::complex<double> LaurentPoly::eval_angles(std::span<const double> angles) const {
    if (static_cast<int>(angles.size()) != dim_) throw Error("angle vector has wrong dimension");
    std::complex<double> sum = 0.0;
    for (auto& [k, c] : terms_) {
        double ph = 0.0;
        for (std::size_t i = 0; i < k.size(); ++i) ph += static_cast<double>(k[i]) * angles[i];
        sum += c.to_complex() * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return sum;
}

std::complex<double> LaurentPoly::eval_points(std::span<const std::complex<double>> z) const {
    if (static_cast<int>(z.size()) != dim_) throw Error("point has wrong dimension");
    std::complex<double> sum = 0.0;
    for (auto& [k, c] : terms_) {
        std::complex<double> m = c.to_complex();
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (k[i] == 0) continue;
            std::complex<double> base = k[i] > 0 ? z[i] : 1.0 / z[i];
            for (std::int64_t e = 0; e < std::abs(k[i]); ++e) m *= base;
        }
        sum += m;
    }
    return sum;
}

double LaurentPoly::wiener_norm() const {
    double sum = 0.0;
    for (auto& [k, c] : terms_) sum += c.abs();
    return sum;
}

double LaurentPoly::lipschitz() const {
    double sum = 0.0;
    for (auto& [k, c] : terms_) {
        double n1 = 0.0;
        for (auto e : k) n1 += static_cast<double>(std::abs(e));
        sum += c.abs() * n1;
    }
    return sum;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.dim() != b.dim()) throw Error("torus dimension mismatch");
    LaurentPoly out = a;
    for (auto& [k, c] : b.terms()) out.add_term(k, c);
    return out;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.dim() != b.dim()) throw Error("torus dimension mismatch");
    LaurentPoly out = a;
    for (auto& [k, c] : b.terms()) out.add_term(k, -c);
    return out;
}

LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly out(a.dim());
    for (auto& [k, c] : a.terms()) out.add_term(k, -c);
    return out;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.dim() != b.dim()) throw Error("torus dimension mismatch");
    LaurentPoly out(a.dim());
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            ExponentVec k(ka.size());
            for (std::size_t i = 0; i < ka.size(); ++i) k[i] = ka[i] + kb[i];
            out.add_term(std::move(k), ca * cb);
        }
    return out;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
}

// --- transfer ----------------------------------------------------------------

namespace {

std::int64_t to_int64(const Int& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw Error("rewrite exponent exceeds 64-bit range");
    return v.convert_to<std::int64_t>();
}

TransferResult transfer_over(const std::vector<Frequency>& nonzero_spectrum,
                             const std::map<Frequency, CRat>& terms) {
    TransferResult out{LaurentPoly(0), {}, {}};
    if (!nonzero_spectrum.empty()) {
        out.basis = extract_basis(nonzero_spectrum);
        const int m = static_cast<int>(out.basis.basis_indices.size());
        out.q = LaurentPoly(m);
        Rat s_inv(Int(1), out.basis.scale);
        for (auto bi : out.basis.basis_indices)
            out.scaled_freqs.push_back(freq_scale(nonzero_spectrum[bi], s_inv));
    }

    // rewrite lookup by frequency value
    std::map<Frequency, const std::vector<Int>*> rw;
    for (std::size_t j = 0; j < nonzero_spectrum.size(); ++j)
        rw[nonzero_spectrum[j]] = &out.basis.rewrite[j];

    const int m = out.q.dim();
    for (auto& [f, c] : terms) {
        ExponentVec k(m, 0);
        if (!f.is_zero()) {
            auto it = rw.find(f);
            if (it == rw.end()) throw Error("internal: frequency missing from transfer basis");
            for (int n = 0; n < m; ++n) k[n] = to_int64((*it->second)[n]);
        }
        out.q.add_term(std::move(k), c);
    }
    return out;
}

}  // namespace

TransferResult transfer(const TrigPoly& p) {
    std::vector<Frequency> nonzero;
    for (auto& [f, c] : p.terms())
        if (!f.is_zero()) nonzero.push_back(f);
    return transfer_over(nonzero, p.terms());
}

JointTransferResult transfer_joint(std::span<const TrigPoly> ps) {
    if (ps.empty()) throw Error("transfer_joint requires at least one polynomial");
    for (auto& p : ps) require_same_table(ps.front(), p);

    JointTransferResult out;
    std::map<Frequency, bool> seen;
    for (auto& p : ps)
        for (auto& [f, c] : p.terms()) {
            if (f.is_zero() || seen.count(f)) continue;
            seen[f] = true;
            out.union_spectrum.push_back(f);
        }

    if (!out.union_spectrum.empty()) {
        out.basis = extract_basis(out.union_spectrum);
        Rat s_inv(Int(1), out.basis.scale);
        for (auto bi : out.basis.basis_indices)
            out.scaled_freqs.push_back(freq_scale(out.union_spectrum[bi], s_inv));
    }
    const int m = static_cast<int>(out.basis.basis_indices.size());

    std::map<Frequency, const std::vector<Int>*> rw;
    for (std::size_t j = 0; j < out.union_spectrum.size(); ++j)
        rw[out.union_spectrum[j]] = &out.basis.rewrite[j];

    for (auto& p : ps) {
        LaurentPoly q(m);
        for (auto& [f, c] : p.terms()) {
            ExponentVec k(m, 0);
            if (!f.is_zero()) {
                auto it = rw.find(f);
                for (int n = 0; n < m; ++n) k[n] = to_int64((*it->second)[n]);
            }
            q.add_term(std::move(k), c);
        }
        out.qs.push_back(std::move(q));
    }
    return out;
}

TrigPoly back_substitute(const LaurentPoly& q, const std::vector<Frequency>& scaled_freqs,
                         TablePtr table) {
    if (static_cast<int>(scaled_freqs.size()) != q.dim())
        throw Error("scaled frequency list does not match torus dimension");
    TrigPoly out(std::move(table));
    for (auto& [k, c] : q.terms()) {
        Frequency f = zero_frequency(*out.table());
        for (std::size_t n = 0; n < k.size(); ++n)
            f = freq_add(f, freq_scale(scaled_freqs[n], Rat(k[n])));
        out.add_term(f, c);
    }
    return out;
}

// --- extremum search ----------------------------------------------------------

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

long default_grid(int dim) {
    if (dim <= 3) return 64;
    if (dim <= 6) return 16;
    return 8;
}

struct CompiledLaurent {
    struct Term {
        std::vector<double> k;
        std::complex<double> a;
    };
    std::vector<Term> terms;

    explicit CompiledLaurent(const LaurentPoly& q) {
        terms.reserve(q.term_count());
        for (auto& [k, c] : q.terms()) {
            Term t;
            t.k.reserve(k.size());
            for (auto e : k) t.k.push_back(static_cast<double>(e));
            t.a = c.to_complex();
            terms.push_back(std::move(t));
        }
    }

    double abs_at(std::span<const double> angles) const {
        std::complex<double> sum = 0.0;
        for (auto& t : terms) {
            double ph = 0.0;
            for (std::size_t i = 0; i < t.k.size(); ++i) ph += t.k[i] * angles[i];
            sum += t.a * std::complex<double>(std::cos(ph), std::sin(ph));
        }
        return std::abs(sum);
    }
};

struct Objective {
    std::vector<CompiledLaurent> parts;
    int dim = 0;

    double operator()(std::span<const double> angles) const {
        double v = 0.0;
        for (auto& p : parts) v += p.abs_at(angles);
        return v;
    }
};

void decode_index(std::size_t idx, long grid, int dim, double h, std::vector<double>& angles) {
    for (int i = 0; i < dim; ++i) {
        angles[i] = h * static_cast<double>(idx % static_cast<std::size_t>(grid));
        idx /= static_cast<std::size_t>(grid);
    }
}

struct ScanBest {
    double value;
    std::size_t index;
};

// Deterministic parallel scan: chunk results combine in index order, ties
// break toward the smaller flat index.
ScanBest grid_scan(const Objective& f, long grid, int dim, bool maximize) {
    const double h = kTwoPi / static_cast<double>(grid);
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(grid);

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (total < 4096) workers = 1;
    std::size_t chunk = (total + workers - 1) / workers;

    auto scan_range = [&](std::size_t lo, std::size_t hi) {
        ScanBest best{maximize ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity(),
                      lo};
        std::vector<double> angles(dim);
        for (std::size_t idx = lo; idx < hi; ++idx) {
            decode_index(idx, grid, dim, h, angles);
            double v = f(angles);
            bool better = maximize ? v > best.value : v < best.value;
            if (better) best = {v, idx};
        }
        return best;
    };

    std::vector<std::future<ScanBest>> futs;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = std::min<std::size_t>(total, w * chunk);
        std::size_t hi = std::min<std::size_t>(total, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, scan_range, lo, hi));
    }
    ScanBest best = futs.front().get();
    for (std::size_t i = 1; i < futs.size(); ++i) {
        ScanBest b = futs[i].get();
        bool better = maximize ? b.value > best.value : b.value < best.value;
        if (better) best = b;  // equal values keep the earlier index
    }
    return best;
}

double golden_section(const std::function<double(double)>& f, double a, double b,
                      double& best_x, int iters = 48) {
    const double phi = 0.6180339887498949;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    if (f1 <= f2) { best_x = x1; return f1; }
    best_x = x2;
    return f2;
}

// Coordinate-descent polish around the best grid point; window halves each
// round so line minimizers stay bracketed while the iterate converges.
double polish(const Objective& f, std::vector<double>& point, double h, int rounds,
              bool maximize) {
    double sign = maximize ? -1.0 : 1.0;
    std::vector<double> p = point;
    double best = sign * f(p);
    double w = h;
    for (int r = 0; r < rounds; ++r) {
        for (int m = 0; m < f.dim; ++m) {
            double center = p[m];
            auto line = [&](double x) {
                std::vector<double> q = p;
                q[m] = x;
                return sign * f(q);
            };
            double x_best = center;
            double v = golden_section(line, center - w, center + w, x_best);
            if (v < best) {
                best = v;
                p[m] = x_best;
            }
        }
        w = std::max(w * 0.5, 1e-10);
    }
    point = p;
    return sign * best;
}

ExtremumReport extremum(const Objective& f, double lipschitz, double wiener, long grid,
                        int refinements, bool maximize) {
    ExtremumReport rep;
    rep.kind = maximize ? ExtremumKind::Max : ExtremumKind::Min;
    rep.refinements = refinements;

    if (f.dim == 0) {
        std::vector<double> none;
        rep.value = f(none);
        rep.certified_bound = rep.value;
        rep.grid_density = 0;
        return rep;
    }

    if (grid <= 0) grid = default_grid(f.dim);
    if (grid < 8) throw Error("grid density must be at least 8");
    double total = std::pow(static_cast<double>(grid), f.dim);
    if (total > kMaxGridEvaluations)
        throw Error("grid of " + std::to_string(grid) + "^" + std::to_string(f.dim) +
                    " points exceeds the evaluation cap");
    rep.grid_density = grid;

    const double h = kTwoPi / static_cast<double>(grid);
    ScanBest gbest = grid_scan(f, grid, f.dim, maximize);

    std::vector<double> point(f.dim);
    decode_index(gbest.index, grid, f.dim, h, point);
    double value = polish(f, point, h, refinements, maximize);

    for (auto& a : point) {
        a = std::fmod(a, kTwoPi);
        if (a < 0) a += kTwoPi;
    }
    rep.point = point;
    rep.value = value;

    // Any torus point lies within h/2 per coordinate of a grid point, so the
    // objective is within L * h * sqrt(M) / 2 of some grid value. The margin
    // absorbs float roundoff of the evaluations themselves.
    double slack = lipschitz * h * std::sqrt(static_cast<double>(f.dim)) / 2.0;
    double margin = 64.0 * std::numeric_limits<double>::epsilon() * std::max(wiener, 1.0);
    if (maximize) {
        rep.certified_bound = std::min(gbest.value + slack, wiener) + margin;
    } else {
        rep.certified_bound = gbest.value - slack - margin;
    }
    return rep;
}

}  // namespace

ExtremumReport torus_min_abs(const LaurentPoly& q, long grid, int refinements) {
    Objective f{{CompiledLaurent(q)}, q.dim()};
    auto rep = extremum(f, q.lipschitz(), q.wiener_norm(), grid, refinements, false);
    rep.objective = "abs";
    return rep;
}

ExtremumReport torus_max_abs(const LaurentPoly& q, long grid, int refinements) {
    Objective f{{CompiledLaurent(q)}, q.dim()};
    auto rep = extremum(f, q.lipschitz(), q.wiener_norm(), grid, refinements, true);
    rep.objective = "abs";
    return rep;
}

ExtremumReport torus_min_sumabs(std::span<const LaurentPoly> qs, long grid, int refinements) {
    if (qs.empty()) throw Error("torus_min_sumabs requires at least one polynomial");
    int dim = qs.front().dim();
    Objective f;
    f.dim = dim;
    double lip = 0.0, wiener = 0.0;
    for (auto& q : qs) {
        if (q.dim() != dim) throw Error("torus dimension mismatch in tuple");
        f.parts.emplace_back(q);
        lip += q.lipschitz();
        wiener += q.wiener_norm();
    }
    auto rep = extremum(f, lip, wiener, grid, refinements, false);
    rep.objective = "sumabs";
    return rep;
}

OrbitReport kronecker_orbit_sample(const std::vector<Frequency>& freqs, long count, double dt) {
    if (freqs.empty()) throw Error("orbit sampling requires at least one frequency");
    if (freqs.size() > 10) throw Error("orbit sampling supports at most 10 frequencies");
    auto basis = extract_basis(freqs);
    if (basis.basis_indices.size() != freqs.size())
        throw Error("orbit frequencies are rationally dependent");

    const int m = static_cast<int>(freqs.size());
    std::size_t total = 1;
    for (int i = 0; i < m; ++i) total *= 8;
    std::vector<bool> occupied(total, false);
    long hit = 0;

    std::vector<double> shadows;
    for (auto& f : freqs) shadows.push_back(f.shadow);

    for (long k = 0; k < count; ++k) {
        double t = dt * static_cast<double>(k);
        std::size_t cell = 0;
        for (int i = m - 1; i >= 0; --i) {
            double a = std::fmod(shadows[i] * t, kTwoPi);
            if (a < 0) a += kTwoPi;
            long bin = static_cast<long>(a / (kTwoPi / 8.0));
            bin = std::clamp<long>(bin, 0, 7);
            cell = cell * 8 + static_cast<std::size_t>(bin);
        }
        if (!occupied[cell]) {
            occupied[cell] = true;
            ++hit;
        }
    }
    OrbitReport rep;
    rep.cells_total = static_cast<long>(total);
    rep.cells_occupied = hit;
    rep.fraction = static_cast<double>(hit) / static_cast<double>(total);
    rep.count = count;
    rep.dt = dt;
    return rep;
}

LineScan line_scan_abs(const TrigPoly& p, double t_max, double dt) {
    if (!(dt > 0) || !(t_max >= 0)) throw Error("line scan requires dt > 0 and t_max >= 0");
    CompiledTrigPoly cp(p);
    const std::size_t n = cp.terms.size();

    // rotor recurrence: e^{i f (t+dt)} = e^{i f t} * e^{i f dt}
    std::vector<std::complex<double>> rot(n), step(n);
    for (std::size_t j = 0; j < n; ++j) {
        rot[j] = 1.0;
        step[j] = std::polar(1.0, cp.terms[j].freq * dt);
    }

    LineScan scan;
    scan.sup = -std::numeric_limits<double>::infinity();
    scan.inf = std::numeric_limits<double>::infinity();
    long steps = static_cast<long>(std::floor(t_max / dt));
    for (long k = 0; k <= steps; ++k) {
        std::complex<double> v = 0.0;
        for (std::size_t j = 0; j < n; ++j) v += cp.terms[j].coeff * rot[j];
        double a = std::abs(v);
        double t = dt * static_cast<double>(k);
        if (a > scan.sup) { scan.sup = a; scan.t_sup = t; }
        if (a < scan.inf) { scan.inf = a; scan.t_inf = t; }
        for (std::size_t j = 0; j < n; ++j) rot[j] *= step[j];
        if ((k & 0xfff) == 0xfff)
            for (std::size_t j = 0; j < n; ++j) rot[j] /= std::abs(rot[j]);
    }
    if (n == 0) { scan.sup = scan.inf = 0.0; scan.t_sup = scan.t_inf = 0.0; }
    return scan;
}

const char* to_string(ExtremumKind k) { return k == ExtremumKind::Min ? "min" : "max"; }

}  // namespace apalg
