#include "apalg/corona.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

namespace apalg {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

InvVerdict classify(const ExtremumReport& rep) {
    if (rep.certified_bound > 0.0) return InvVerdict::Invertible;
    if (rep.value <= kZeroObjective) return InvVerdict::NotInvertible;
    return InvVerdict::Uncertain;
}

}  // namespace

InvertibilityReport invertible(const TrigPoly& f, long grid, int refinements) {
    InvertibilityReport rep;
    if (f.is_zero()) {
        rep.delta = 0.0;
        rep.certified_delta = 0.0;
        rep.verdict = InvVerdict::NotInvertible;
        rep.extremum.objective = "abs";
        return rep;
    }
    TransferResult tr = transfer(f);
    rep.extremum = torus_min_abs(tr.q, grid, refinements);
    rep.delta = rep.extremum.value;
    rep.certified_delta = rep.extremum.certified_bound;
    rep.verdict = classify(rep.extremum);
    return rep;
}

InvertibilityReport unimodular(const std::vector<TrigPoly>& fs, long grid, int refinements) {
    if (fs.empty()) throw Error("unimodular requires a nonempty tuple");
    JointTransferResult tr = transfer_joint(fs);
    InvertibilityReport rep;
    rep.extremum = torus_min_sumabs(tr.qs, grid, refinements);
    rep.delta = rep.extremum.value;
    rep.certified_delta = rep.extremum.certified_bound;
    rep.verdict = classify(rep.extremum);
    return rep;
}

BezoutSolution bezout(const std::vector<TrigPoly>& fs, const InvertibilityReport& report,
                      const SampleGrid& grid) {
    if (report.verdict != InvVerdict::Invertible)
        throw Error("bezout requires an Invertible report");
    if (fs.empty()) throw Error("bezout requires a nonempty tuple");

    BezoutSolution sol;
    sol.tuple = fs;
    sol.delta = report.delta;

    std::vector<CompiledTrigPoly> compiled;
    compiled.reserve(fs.size());
    for (auto& f : fs) compiled.emplace_back(f);

    for (std::size_t j = 0; j < fs.size(); ++j) {
        auto all = std::make_shared<std::vector<CompiledTrigPoly>>(compiled);
        sol.solvers.push_back([all, j](double t) {
            std::complex<double> fj = (*all)[j].eval(t);
            double denom = 0.0;
            for (auto& f : *all) denom += std::norm(f.eval(t));
            return std::conj(fj) / denom;
        });
    }

    double worst = 0.0;
    for (long k = 0; k < grid.count; ++k) {
        double t = grid.t_max * static_cast<double>(k) / static_cast<double>(grid.count);
        std::complex<double> sum = 0.0;
        for (std::size_t j = 0; j < fs.size(); ++j) sum += sol.solvers[j](t) * compiled[j].eval(t);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    sol.residual_bound = worst;
    return sol;
}

// --- Chebyshev reciprocal ------------------------------------------------------

namespace {

std::vector<double> chebyshev_recip(double a, double b, double target, int& degree_out) {
    auto map_node = [&](double u) { return 0.5 * (a + b) + 0.5 * (b - a) * u; };
    auto recip = [](double x) { return 1.0 / x; };
    for (int n = 4; n <= 200; n += 2) {
        std::vector<double> c(n + 1, 0.0);
        int nodes = n + 1;
        std::vector<double> fx(nodes);
        for (int k = 0; k < nodes; ++k)
            fx[k] = recip(map_node(std::cos(M_PI * (k + 0.5) / nodes)));
        for (int j = 0; j <= n; ++j) {
            double sum = 0.0;
            for (int k = 0; k < nodes; ++k)
                sum += fx[k] * std::cos(M_PI * j * (k + 0.5) / nodes);
            c[j] = 2.0 * sum / nodes;
        }
        // uniform error probe
        double err = 0.0;
        for (int k = 0; k <= 512; ++k) {
            double x = a + (b - a) * k / 512.0;
            double u = (2.0 * x - a - b) / (b - a);
            // Clenshaw
            double b1 = 0.0, b2 = 0.0;
            for (int j = n; j >= 1; --j) {
                double t = 2.0 * u * b1 - b2 + c[j];
                b2 = b1;
                b1 = t;
            }
            double px = u * b1 - b2 + 0.5 * c[0];
            err = std::max(err, std::abs(px - recip(x)));
        }
        if (err <= target) {
            degree_out = n;
            return c;
        }
    }
    throw Error("Chebyshev degree cap reached before meeting the requested error");
}

}  // namespace

BezoutPolySolution bezout_poly(const std::vector<TrigPoly>& fs, const InvertibilityReport& report,
                               double target, const SampleGrid& grid) {
    if (report.verdict != InvVerdict::Invertible)
        throw Error("bezout_poly requires an Invertible report");

    // Certified range of S = sum |F_k|^2: the tuple bound gives
    // sum |F_k| >= delta, so S >= delta^2 / n; the Wiener norms cap S above.
    double delta = report.certified_delta;
    double upper = 0.0;
    for (auto& f : fs) upper += f.wiener_norm() * f.wiener_norm();
    double lower = delta * delta / static_cast<double>(fs.size());
    if (!(lower > 0.0)) throw Error("bezout_poly needs a positive certified delta");

    int degree = 0;
    std::vector<double> cheb = chebyshev_recip(lower, upper, target / upper, degree);

    TablePtr table = fs.front().table();
    TrigPoly s_poly = TrigPoly::zero(table);
    for (auto& f : fs) s_poly = s_poly + f * f.conjugated();

    // u = (2S - (a+b)) / (b-a), exact dyadic coefficients
    CRat two_over(rat_from_double(2.0 / (upper - lower)));
    CRat shift(rat_from_double(-(lower + upper) / (upper - lower)));
    TrigPoly u_poly = two_over * s_poly + TrigPoly::constant(table, shift);

    TrigPoly t_prev = TrigPoly::constant(table, CRat(1));  // T_0
    TrigPoly t_cur = u_poly;                               // T_1
    TrigPoly p = CRat(rat_from_double(0.5 * cheb[0])) * t_prev;
    if (degree >= 1) p = p + CRat(rat_from_double(cheb[1])) * t_cur;
    for (int j = 2; j <= degree; ++j) {
        TrigPoly t_next = CRat(2) * (u_poly * t_cur) - t_prev;
        p = p + CRat(rat_from_double(cheb[j])) * t_next;
        t_prev = std::move(t_cur);
        t_cur = std::move(t_next);
    }

    BezoutPolySolution sol;
    sol.degree = degree;
    for (auto& f : fs) sol.solvers.push_back(f.conjugated() * p);

    std::vector<CompiledTrigPoly> cf, cq;
    for (auto& f : fs) cf.emplace_back(f);
    for (auto& q : sol.solvers) cq.emplace_back(q);
    double worst = 0.0;
    for (long k = 0; k < grid.count; ++k) {
        double t = grid.t_max * static_cast<double>(k) / static_cast<double>(grid.count);
        std::complex<double> sum = 0.0;
        for (std::size_t j = 0; j < cf.size(); ++j) sum += cq[j].eval(t) * cf[j].eval(t);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    sol.residual_bound = worst;
    return sol;
}

// --- power-sum section ----------------------------------------------------------

std::pair<std::complex<double>, std::complex<double>> power_sum_section(std::complex<double> z,
                                                                        int s) {
    if (s < 1) throw Error("power_sum_section requires s >= 1");
    double r = std::abs(z);
    if (r > 2.0 * (1.0 + 1e-12)) throw Error("power_sum_section input outside 2*closed disk");
    if (z.imag() == 0.0 && z.real() <= 0.0)
        throw Error("power_sum_section input on the cut (-inf, 0]");
    double theta = std::arg(z);  // principal, in (-pi, pi]
    double alpha = std::acos(std::min(r / 2.0, 1.0));
    double ds = static_cast<double>(s);
    return {std::polar(1.0, (alpha + theta) / ds), std::polar(1.0, (-alpha + theta) / ds)};
}

std::complex<double> power_sum(std::complex<double> z1, std::complex<double> z2, int s) {
    if (s < 1) throw Error("power_sum requires s >= 1");
    if (std::abs(std::abs(z1) - 1.0) > 1e-9 || std::abs(std::abs(z2) - 1.0) > 1e-9)
        throw Error("power_sum requires unit-modulus inputs");
    std::complex<double> a = 1.0, b = 1.0;
    for (int i = 0; i < s; ++i) {
        a *= z1;
        b *= z2;
    }
    return a + b;
}

// --- example tuples -------------------------------------------------------------

namespace {

LaurentPoly pair_poly(int dim, int pair_index, int s) {
    // z_{2j+1}^s + z_{2j+2}^s - 1 with 0-based variables (2j, 2j+1)
    LaurentPoly f(dim);
    ExponentVec k1(dim, 0), k2(dim, 0);
    k1[2 * pair_index] = s;
    k2[2 * pair_index + 1] = s;
    f.add_term(std::move(k1), CRat(1));
    f.add_term(std::move(k2), CRat(1));
    f.add_term(ExponentVec(dim, 0), CRat(-1));
    return f;
}

}  // namespace

FundamentalExample example_fundamental(int n, int s) {
    if (n < 1) throw Error("example_fundamental requires N >= 1");
    if (s < 1) throw Error("example_fundamental requires s >= 1");
    FundamentalExample ex;
    ex.n = n;
    ex.s = s;
    const int dim = 4 * n;
    for (int j = 0; j < n; ++j) ex.fs.push_back(pair_poly(dim, j, s));
    for (int j = 0; j < n; ++j) ex.partners.push_back(pair_poly(dim, n + j, s));
    LaurentPoly acc = LaurentPoly::constant(dim, CRat(Rat(1, 4)));
    for (int j = 0; j < n; ++j) acc = acc - ex.fs[j] * ex.partners[j];
    ex.g = std::move(acc);
    return ex;
}

std::vector<TrigPoly> example_general(const std::vector<Frequency>& lambdas, TablePtr table) {
    if (lambdas.empty() || lambdas.size() % 2 != 0)
        throw Error("example_general requires 2N frequencies");
    auto basis = extract_basis(lambdas);
    if (basis.basis_indices.size() != lambdas.size())
        throw Error("example_general frequencies are rationally dependent");
    std::vector<TrigPoly> out;
    for (std::size_t j = 0; j + 1 < lambdas.size(); j += 2) {
        TrigPoly f = TrigPoly::character(table, lambdas[j]);
        f = f + TrigPoly::character(table, lambdas[j + 1]);
        f = f - TrigPoly::constant(table, CRat(1));
        out.push_back(std::move(f));
    }
    return out;
}

// --- zero witness ----------------------------------------------------------------

namespace {

// The reduced map on w in C^N. Components: w_j + h_j(z(w)) * max(1/4 - |w|^2, 0),
// where z(w) is the conjugation-symmetric torus point assembled from the
// power-sum sections of w_j + 1. The clamp extends the map continuously
// beyond the ball with the identity inside-out behavior: zeros of the
// extension are exactly the zeros of the original map inside the ball.
struct ReducedMap {
    int n;
    int s;
    const std::vector<LaurentPoly>* hs;

    std::vector<std::complex<double>> torus_point(const std::vector<std::complex<double>>& w) const {
        std::vector<std::complex<double>> z(4 * n);
        // the sections fill z_1..z_{2N}; the conjugation subtorus fixes the rest
        for (int j = 0; j < n; ++j) {
            auto [z1, z2] = power_sum_section(w[j] + 1.0, s);
            z[2 * j] = z1;
            z[2 * j + 1] = z2;
        }
        for (int j = 0; j < 2 * n; ++j) z[2 * n + j] = std::conj(z[j]);
        return z;
    }

    std::vector<std::complex<double>> eval(const std::vector<std::complex<double>>& w) const {
        double ball = 0.25;
        for (auto& wj : w) ball -= std::norm(wj);
        double factor = std::max(ball, 0.0);
        std::vector<std::complex<double>> out(n);
        if (factor == 0.0) {
            for (int j = 0; j < n; ++j) out[j] = w[j];
            return out;
        }
        auto z = torus_point(w);
        for (int j = 0; j < n; ++j) out[j] = w[j] + (*hs)[j].eval_points(z) * factor;
        return out;
    }
};

constexpr int kBoundarySamples = 512;
constexpr int kMaxEdgeRefine = 42;

// Argument increments along a discretized closed curve; segments with an
// increment above pi/2 are bisected. Throws WindingAmbiguousError when
// refinement bottoms out (a zero on or next to the curve).
int winding_number(const std::function<std::complex<double>(double)>& curve) {
    struct Node {
        double t;
        std::complex<double> v;
    };
    std::vector<Node> nodes(kBoundarySamples + 1);
    for (int i = 0; i <= kBoundarySamples; ++i) {
        double t = static_cast<double>(i) / kBoundarySamples;
        nodes[i] = {t, curve(t)};
    }
    nodes.back().v = nodes.front().v;  // closed

    double total = 0.0;
    std::function<double(Node, Node, int)> segment = [&](Node a, Node b, int depth) -> double {
        if (std::abs(a.v) < 1e-280 || std::abs(b.v) < 1e-280)
            throw WindingAmbiguousError("zero on subdivision boundary");
        double d = std::arg(b.v / a.v);
        if (std::abs(d) <= M_PI / 2.0) return d;
        if (depth >= kMaxEdgeRefine)
            throw WindingAmbiguousError("argument increment did not settle under refinement");
        Node mid{0.5 * (a.t + b.t), curve(0.5 * (a.t + b.t))};
        return segment(a, mid, depth + 1) + segment(mid, b, depth + 1);
    };
    for (int i = 0; i < kBoundarySamples; ++i) total += segment(nodes[i], nodes[i + 1], 0);

    double turns = total / kTwoPi;
    double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.25)
        throw WindingAmbiguousError("winding sum is not close to an integer");
    return static_cast<int>(rounded);
}

struct Box {
    double x0, x1, y0, y1;
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    std::complex<double> center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
};

std::function<std::complex<double>(double)> box_boundary(const ReducedMap& map, const Box& b) {
    return [&map, b](double t) {
        double u = t * 4.0;
        std::complex<double> w;
        if (u < 1.0) w = {b.x0 + u * (b.x1 - b.x0), b.y0};
        else if (u < 2.0) w = {b.x1, b.y0 + (u - 1.0) * (b.y1 - b.y0)};
        else if (u < 3.0) w = {b.x1 - (u - 2.0) * (b.x1 - b.x0), b.y1};
        else w = {b.x0, b.y1 - (u - 3.0) * (b.y1 - b.y0)};
        return map.eval({w})[0];
    };
}

ZeroWitness witness_by_winding(const ReducedMap& map, double tol) {
    ZeroWitness wit;
    wit.method = WitnessMethod::WindingSubdivision;

    // Degree certificate: on |w| = 1/2 the ball factor vanishes, so the map
    // restricts to the identity and must wind once.
    int circle_winding = winding_number([&](double t) {
        std::complex<double> w = std::polar(0.5, kTwoPi * t);
        return map.eval({w})[0];
    });
    if (circle_winding != 1)
        throw Error("boundary winding is " + std::to_string(circle_winding) + ", expected 1");
    wit.boundary_winding = circle_winding;

    Box box{-0.5, 0.5, -0.5, 0.5};
    int box_winding = winding_number(box_boundary(map, box));
    if (box_winding != 1)
        throw Error("outer square winding is " + std::to_string(box_winding) + ", expected 1");

    const double jitters[] = {0.0, 0.07, -0.07, 0.13, -0.13, 0.19};  // initial cut + 5 retries
    int depth = 0;
    while (true) {
        std::complex<double> c = box.center();
        double residual = std::abs(map.eval({c})[0]);
        if (residual <= tol / 4.0) break;
        if (std::max(box.width(), box.height()) < 1e-12) break;
        if (depth > 200) throw Error("subdivision depth cap reached");

        bool split_x = box.width() >= box.height();
        bool advanced = false;
        for (double j : jitters) {
            Box a = box, b = box;
            if (split_x) {
                double cut = box.x0 + (0.5 + j) * box.width();
                a.x1 = cut;
                b.x0 = cut;
            } else {
                double cut = box.y0 + (0.5 + j) * box.height();
                a.y1 = cut;
                b.y0 = cut;
            }
            try {
                int wa = winding_number(box_boundary(map, a));
                int wb = winding_number(box_boundary(map, b));
                if (wa + wb != box_winding) continue;  // zero lost on the cut
                if (wa != 0) {
                    box = a;
                    box_winding = wa;
                } else if (wb != 0) {
                    box = b;
                    box_winding = wb;
                } else {
                    continue;
                }
                advanced = true;
                break;
            } catch (const WindingAmbiguousError&) {
                continue;
            }
        }
        if (!advanced)
            throw WindingAmbiguousError("all jittered cuts were ambiguous at box size " +
                                        std::to_string(box.width()));
        ++depth;
    }

    std::complex<double> w0 = box.center();
    auto z = map.torus_point({w0});
    wit.torus_point.reserve(z.size());
    for (auto& p : z) {
        double a = std::arg(p);
        if (a < 0) a += kTwoPi;
        wit.torus_point.push_back(a);
    }
    return wit;
}

struct DescentOutcome {
    double value = std::numeric_limits<double>::infinity();
    std::vector<std::complex<double>> point;
};

DescentOutcome compass_descent(const ReducedMap& map, std::vector<std::complex<double>> w,
                               double stop) {
    const int n = map.n;
    auto objective = [&](const std::vector<std::complex<double>>& x) {
        auto v = map.eval(x);
        double sum = 0.0;
        for (auto& c : v) sum += std::norm(c);
        return sum;
    };
    double cur = objective(w);
    double step = 0.1;
    while (step > 1e-10 && cur > stop) {
        bool improved = false;
        for (int j = 0; j < 2 * n && !improved; ++j) {
            for (double dir : {1.0, -1.0}) {
                auto cand = w;
                int idx = j / 2;
                if (j % 2 == 0) cand[idx] += dir * step;
                else cand[idx] += std::complex<double>(0.0, dir * step);
                if (std::abs(cand[idx]) > 0.72) continue;  // stay in the section's domain
                double v = objective(cand);
                if (v < cur) {
                    w = std::move(cand);
                    cur = v;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return {cur, std::move(w)};
}

ZeroWitness witness_by_descent(const ReducedMap& map, double tol) {
    ZeroWitness wit;
    wit.method = WitnessMethod::MultistartDescent;
    const int n = map.n;
    const double stop = (tol / 8.0) * (tol / 8.0);

    // 64 seeded starts in the ball; starts run in parallel and reduce in
    // index order, so ties always resolve to the smallest start index
    std::mt19937 rng(20240811u);
    auto next_unit = [&]() { return static_cast<double>(rng()) / 4294967296.0; };
    std::vector<std::vector<std::complex<double>>> starts;
    for (int start = 0; start < 64; ++start) {
        std::vector<std::complex<double>> w(n);
        while (true) {
            double norm2 = 0.0;
            for (int j = 0; j < n; ++j) {
                w[j] = {0.9 * next_unit() - 0.45, 0.9 * next_unit() - 0.45};
                norm2 += std::norm(w[j]);
            }
            if (norm2 <= 0.45 * 0.45) break;
        }
        starts.push_back(std::move(w));
    }

    std::vector<std::future<DescentOutcome>> futs;
    futs.reserve(starts.size());
    for (auto& w : starts)
        futs.push_back(std::async(std::launch::async | std::launch::deferred,
                                  [&map, w, stop] { return compass_descent(map, w, stop); }));

    DescentOutcome best;
    for (auto& fut : futs) {
        DescentOutcome out = fut.get();
        if (out.value < best.value) best = std::move(out);
    }

    if (!(best.value <= stop))
        throw DescentFailedError("descent reached " + std::to_string(std::sqrt(best.value)) +
                                 ", tolerance " + std::to_string(tol));

    auto z = map.torus_point(best.point);
    for (auto& p : z) {
        double a = std::arg(p);
        if (a < 0) a += kTwoPi;
        wit.torus_point.push_back(a);
    }
    return wit;
}

}  // namespace

ZeroWitness reduction_zero_witness(int n, int s, const std::vector<LaurentPoly>& hs, double tol) {
    if (n < 1) throw Error("reduction_zero_witness requires N >= 1");
    if (s < 1) throw Error("reduction_zero_witness requires s >= 1");
    if (static_cast<int>(hs.size()) != n)
        throw Error("reduction_zero_witness needs one perturbation per component");
    for (auto& h : hs)
        if (h.dim() != 4 * n) throw Error("perturbations must live on T^{4N}");
    if (!(tol > 0)) throw Error("tolerance must be positive");

    ReducedMap map{n, s, &hs};
    ZeroWitness wit = n == 1 ? witness_by_winding(map, tol) : witness_by_descent(map, tol);

    // independent re-verification straight from the polynomials
    FundamentalExample ex = example_fundamental(n, s);
    std::vector<std::complex<double>> z;
    z.reserve(wit.torus_point.size());
    for (double a : wit.torus_point) z.push_back(std::polar(1.0, a));
    double residual = 0.0;
    for (int j = 0; j < n; ++j) {
        std::complex<double> v = ex.fs[j].eval_points(z) + hs[j].eval_points(z) * ex.g.eval_points(z);
        residual = std::max(residual, std::abs(v));
    }
    wit.residual = residual;
    if (residual > tol)
        throw Error("witness residual " + std::to_string(residual) + " exceeds tolerance");
    return wit;
}

LineApproximation approximate_line_t(const std::vector<Frequency>& freqs,
                                     const std::vector<double>& angles, long count, double dt) {
    if (freqs.size() != angles.size())
        throw Error("approximate_line_t needs one frequency per angle");
    if (freqs.empty()) throw Error("approximate_line_t needs at least one frequency");
    if (!(dt > 0) || count < 1) throw Error("approximate_line_t needs dt > 0 and count >= 1");

    auto circ_dist = [](double a, double b) {
        double d = std::fmod(std::abs(a - b), kTwoPi);
        return std::min(d, kTwoPi - d);
    };
    LineApproximation best;
    best.max_angle_error = std::numeric_limits<double>::infinity();
    for (long k = 0; k < count; ++k) {
        double t = dt * static_cast<double>(k);
        double worst = 0.0;
        for (std::size_t i = 0; i < freqs.size(); ++i) {
            double a = std::fmod(freqs[i].shadow * t, kTwoPi);
            if (a < 0) a += kTwoPi;
            worst = std::max(worst, circ_dist(a, angles[i]));
            if (worst >= best.max_angle_error) break;
        }
        if (worst < best.max_angle_error) best = {t, worst};
    }
    return best;
}

// --- approximation resistance -----------------------------------------------------

ResistanceReport approximation_resistance_check(int n, const std::vector<Frequency>& lambdas,
                                                const std::vector<TrigPoly>& hs, TablePtr table,
                                                long grid, int refinements) {
    if (n < 1) throw Error("approximation_resistance_check requires N >= 1");
    if (static_cast<int>(lambdas.size()) != 4 * n)
        throw Error("approximation_resistance_check needs 4N frequencies");
    if (static_cast<int>(hs.size()) != n)
        throw Error("approximation_resistance_check needs N approximants");

    std::vector<TrigPoly> fs = example_general(lambdas, table);  // F_1 .. F_{2N}
    ResistanceReport rep;
    rep.required_bound = 1.0 / (24.0 * static_cast<double>(n));

    for (int j = 0; j < n; ++j) {
        TrigPoly diff = fs[j] - hs[j];
        double certified;
        if (diff.is_zero()) {
            certified = 0.0;
        } else {
            auto tr = transfer(diff);
            certified = torus_max_abs(tr.q, grid, refinements).certified_bound;
        }
        rep.diff_certified.push_back(certified);
        if (!(certified < rep.required_bound))
            throw Error("approximation hypothesis violated: ||F_" + std::to_string(j + 1) +
                        " - H_" + std::to_string(j + 1) + "|| not certified below 1/(24N)");
    }

    TrigPoly g = TrigPoly::constant(table, CRat(Rat(1, 4)));
    for (int j = 0; j < n; ++j) g = g - fs[j] * fs[n + j];

    TrigPoly f = g;
    for (int j = 0; j < n; ++j) f = f + hs[j] * fs[n + j];

    TrigPoly r = CRat(4) * f - TrigPoly::constant(table, CRat(1));
    if (r.is_zero()) {
        rep.max_value = 0.0;
        rep.certified_max = 0.0;
    } else {
        auto tr = transfer(r);
        auto max = torus_max_abs(tr.q, grid, refinements);
        rep.max_value = max.value;
        rep.certified_max = max.certified_bound;
    }
    rep.f_invertible = rep.certified_max <= 0.5;
    return rep;
}

StableRanks stable_rank_reference(int n) {
    if (n < 1) throw Error("stable_rank_reference requires N >= 1");
    StableRanks r;
    r.n = n;
    r.polydisk_bsr = n / 2 + 1;
    r.polydisk_tsr = n + 1;
    r.torus_bsr = n / 2 + 1;
    r.torus_tsr = n / 2 + 1;
    return r;
}

const char* to_string(InvVerdict v) {
    switch (v) {
        case InvVerdict::Invertible: return "invertible";
        case InvVerdict::NotInvertible: return "not-invertible";
        case InvVerdict::Uncertain: return "uncertain";
    }
    return "?";
}

const char* to_string(WitnessMethod m) {
    return m == WitnessMethod::WindingSubdivision ? "winding-subdivision" : "multistart-descent";
}

}  // namespace apalg
