#include "apalg/cli.hpp"

#include "apalg/aplus.hpp"
#include "apalg/bohr.hpp"
#include "apalg/corona.hpp"
#include "apalg/expr.hpp"
#include "apalg/freqmod.hpp"
#include "apalg/torus.hpp"
#include "apalg/trigpoly.hpp"
#include "apalg/workspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace apalg {

using nlohmann::json;

namespace {

json to_json(const std::complex<double>& z) { return json{{"im", z.imag()}, {"re", z.real()}}; }

json to_json(const ExtremumReport& rep) {
    return json{{"certified_bound", rep.certified_bound},
                {"grid", rep.grid_density},
                {"kind", to_string(rep.kind)},
                {"objective", rep.objective},
                {"point", rep.point},
                {"refinements", rep.refinements},
                {"value", rep.value}};
}

json to_json(const InvertibilityReport& rep) {
    return json{{"certified_delta", rep.certified_delta},
                {"delta", rep.delta},
                {"extremum", to_json(rep.extremum)},
                {"verdict", to_string(rep.verdict)}};
}

json to_json(const MeanValueEstimate& est) {
    return json{{"T", est.T}, {"error_bound", est.error_bound}, {"value", to_json(est.value)}};
}

json basis_json(const FrequencyBasis& basis) {
    json rewrite = json::array();
    for (auto& row : basis.rewrite) {
        json r = json::array();
        for (auto& v : row) r.push_back(v.str());
        rewrite.push_back(r);
    }
    return json{{"indices", basis.basis_indices}, {"rewrite", rewrite}, {"s", basis.scale.str()}};
}

json laurent_json(const LaurentPoly& q) {
    json terms = json::array();
    for (auto& [k, c] : q.terms())
        terms.push_back(json{{"coeff", complex_text(c)}, {"exponents", k}});
    return json{{"dim", q.dim()}, {"terms", terms}, {"text", render_laurent(q)}};
}

struct Session {
    std::string ws_path;
    Workspace ws;
    bool loaded = false;
    bool compact = false;

    // command-line overrides
    std::optional<long> grid;
    std::optional<int> refinements;
    std::optional<double> tol;

    void load() {
        if (ws_path.empty()) throw Error("this command requires --ws <path>");
        ws = load_workspace(ws_path);
        loaded = true;
    }
    void load_or_init() {
        if (ws_path.empty()) throw Error("this command requires --ws <path>");
        std::ifstream probe(ws_path);
        if (probe.good()) {
            ws = load_workspace(ws_path);
        }
        loaded = true;
    }
    void save() const { save_workspace(ws, ws_path); }

    const TablePtr& table() const {
        if (!ws.table) throw Error("workspace has no generators; run declare first");
        return ws.table;
    }
    TrigPoly expr(const std::string& text) const { return parse_expr(text, table(), ws.polys); }
    Frequency freq(const std::string& text) const { return freq_parse(text, *table()); }
    long grid_setting() const { return grid.value_or(ws.settings.grid); }
    int refine_setting() const { return refinements.value_or(ws.settings.refinements); }
    double tol_setting() const { return tol.value_or(ws.settings.tol); }

    SemigroupSpec semigroup(const std::string& text) const {
        if (text == "all") return SemigroupSpec::all_reals();
        if (text == "nonneg") return SemigroupSpec::nonneg_reals();
        auto colon = text.find(':');
        if (colon == std::string::npos)
            throw Error("semigroup spec must be all, nonneg, zspan:..., or nspan:...");
        std::string kind = text.substr(0, colon);
        std::vector<Frequency> gens;
        std::string rest = text.substr(colon + 1);
        std::size_t start = 0;
        while (start <= rest.size()) {
            auto semi = rest.find(';', start);
            std::string piece =
                semi == std::string::npos ? rest.substr(start) : rest.substr(start, semi - start);
            if (!piece.empty()) gens.push_back(freq(piece));
            if (semi == std::string::npos) break;
            start = semi + 1;
        }
        if (kind == "zspan") return SemigroupSpec::zspan(std::move(gens));
        if (kind == "nspan") return SemigroupSpec::nspan(std::move(gens));
        throw Error("unknown semigroup kind: " + kind);
    }
};

void emit(const Session& session, std::ostream& out, const json& doc) {
    out << (session.compact ? doc.dump() : doc.dump(2)) << "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Session session;
    json result;
    bool have_result = false;

    CLI::App app{"almost periodic polynomial toolkit"};
    app.require_subcommand(1);
    app.add_option("--ws", session.ws_path, "workspace file");
    app.add_flag_callback("--json", [&] { session.compact = true; }, "compact JSON output");
    app.add_option_function<long>(
        "--grid", [&](long v) { session.grid = v; }, "grid density per torus dimension");
    app.add_option_function<int>(
        "--refine", [&](int v) { session.refinements = v; }, "polish rounds");
    app.add_option_function<double>(
        "--tol", [&](double v) { session.tol = v; }, "tolerance for witness search");

    // declare NAME VALUE
    auto* declare = app.add_subcommand("declare", "add a generator to the workspace");
    std::string decl_name, decl_value;
    bool decl_dependent = false;
    declare->add_option("name", decl_name)->required();
    declare->add_option("value", decl_value)->required();
    declare->add_flag("--dependent", decl_dependent, "do not claim Q-linear independence");
    declare->callback([&] {
        session.load_or_init();
        std::vector<Generator> gens;
        if (session.ws.table) gens = session.ws.table->entries();
        gens.push_back({decl_name, decl_value, parse_decimal(decl_value), !decl_dependent});
        session.ws.table = std::make_shared<GeneratorTable>(std::move(gens));
        // named polynomials must match the table width; re-parse them
        auto old = std::move(session.ws.polys);
        session.ws.polys.clear();
        for (auto& [name, poly] : old)
            session.ws.polys.emplace(name, parse_expr(render(poly), session.ws.table));
        session.save();
        result = json{{"generators", session.ws.table->size()}, {"name", decl_name}};
        have_result = true;
    });

    // def NAME EXPR
    auto* def = app.add_subcommand("def", "define a named polynomial");
    std::string def_name, def_expr;
    def->add_option("name", def_name)->required();
    def->add_option("expr", def_expr)->required();
    def->callback([&] {
        session.load();
        TrigPoly p = session.expr(def_expr);
        session.ws.polys.insert_or_assign(def_name, p);
        session.save();
        result = json{{"name", def_name}, {"terms", p.term_count()}, {"text", render(p)}};
        have_result = true;
    });

    // spectrum EXPR
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Bohr spectrum of an expression");
    std::string spec_expr;
    spectrum_cmd->add_option("expr", spec_expr)->required();
    spectrum_cmd->callback([&] {
        session.load();
        TrigPoly p = session.expr(spec_expr);
        json freqs = json::array();
        for (auto& f : p.spectrum())
            freqs.push_back(json{{"freq", freq_text(f, *session.table())},
                                 {"shadow", f.shadow},
                                 {"sign", to_string(sign_of(f, session.ws.settings.eps_sign))}});
        result = json{{"count", p.term_count()}, {"spectrum", freqs}};
        have_result = true;
    });

    // fb EXPR --freq F [--T X]
    auto* fb = app.add_subcommand("fb", "Fourier coefficient, exact or by mean value");
    std::string fb_expr, fb_freq;
    double fb_T = 0.0;
    fb->add_option("expr", fb_expr)->required();
    fb->add_option("--freq", fb_freq, "frequency")->required();
    auto* fb_T_opt = fb->add_option("--T", fb_T, "mean value over [-T, T]");
    fb->callback([&] {
        session.load();
        TrigPoly p = session.expr(fb_expr);
        Frequency lambda = session.freq(fb_freq);
        CRat exact = fb_exact(p, lambda);
        result = json{{"exact", complex_text(exact)}};
        if (fb_T_opt->count() > 0)
            result["numeric"] = to_json(fb_numeric(p, lambda, fb_T, session.ws.settings.eps_sign));
        have_result = true;
    });

    // basis FREQ...
    auto* basis_cmd = app.add_subcommand("basis", "Q-basis and rewrite data for frequencies");
    std::vector<std::string> basis_freqs;
    basis_cmd->add_option("freqs", basis_freqs)->required()->expected(-1);
    basis_cmd->callback([&] {
        session.load();
        std::vector<Frequency> freqs;
        for (auto& s : basis_freqs) freqs.push_back(session.freq(s));
        auto basis = extract_basis(freqs);
        result = basis_json(basis);
        json names = json::array();
        for (auto i : basis.basis_indices) names.push_back(freq_text(freqs[i], *session.table()));
        result["basis"] = names;
        have_result = true;
    });

    // transfer EXPR
    auto* transfer_cmd = app.add_subcommand("transfer", "Laurent transfer of an expression");
    std::string transfer_expr;
    transfer_cmd->add_option("expr", transfer_expr)->required();
    transfer_cmd->callback([&] {
        session.load();
        TrigPoly p = session.expr(transfer_expr);
        TransferResult tr = transfer(p);
        json scaled = json::array();
        for (auto& f : tr.scaled_freqs) scaled.push_back(freq_text(f, *session.table()));
        result = json{{"basis", basis_json(tr.basis)},
                      {"q", laurent_json(tr.q)},
                      {"scaled_freqs", scaled}};
        have_result = true;
    });

    // inf EXPR / sup EXPR
    auto* inf_cmd = app.add_subcommand("inf", "line infimum of |expr| via the torus");
    auto* sup_cmd = app.add_subcommand("sup", "line supremum of |expr| via the torus");
    std::string inf_expr, sup_expr;
    inf_cmd->add_option("expr", inf_expr)->required();
    sup_cmd->add_option("expr", sup_expr)->required();
    inf_cmd->callback([&] {
        session.load();
        TrigPoly p = session.expr(inf_expr);
        auto rep = torus_min_abs(transfer(p).q, session.grid_setting(), session.refine_setting());
        result = to_json(rep);
        result["certified"] = rep.certified_bound > 0.0;
        result["value"] = rep.value;
        have_result = true;
    });
    sup_cmd->callback([&] {
        session.load();
        TrigPoly p = session.expr(sup_expr);
        auto rep = torus_max_abs(transfer(p).q, session.grid_setting(), session.refine_setting());
        result = to_json(rep);
        result["certified"] = true;
        have_result = true;
    });

    // invertible EXPR
    auto* inv_cmd = app.add_subcommand("invertible", "invertibility of a single element");
    std::string inv_expr;
    inv_cmd->add_option("expr", inv_expr)->required();
    inv_cmd->callback([&] {
        session.load();
        result = to_json(
            invertible(session.expr(inv_expr), session.grid_setting(), session.refine_setting()));
        have_result = true;
    });

    // unimodular EXPR...
    auto* uni_cmd = app.add_subcommand("unimodular", "invertibility of a tuple");
    std::vector<std::string> uni_exprs;
    uni_cmd->add_option("exprs", uni_exprs)->required()->expected(-1);
    uni_cmd->callback([&] {
        session.load();
        std::vector<TrigPoly> fs;
        for (auto& s : uni_exprs) fs.push_back(session.expr(s));
        result = to_json(unimodular(fs, session.grid_setting(), session.refine_setting()));
        have_result = true;
    });

    // bezout-check EXPR...
    auto* bez_cmd = app.add_subcommand("bezout-check", "corona solvers and residual bound");
    std::vector<std::string> bez_exprs;
    bez_cmd->add_option("exprs", bez_exprs)->required()->expected(-1);
    bez_cmd->callback([&] {
        session.load();
        std::vector<TrigPoly> fs;
        for (auto& s : bez_exprs) fs.push_back(session.expr(s));
        auto rep = unimodular(fs, session.grid_setting(), session.refine_setting());
        json doc = to_json(rep);
        if (rep.verdict == InvVerdict::Invertible) {
            auto sol = bezout(fs, rep, {session.ws.settings.sample_count, session.ws.settings.sample_tmax});
            doc["residual_bound"] = sol.residual_bound;
            doc["samples"] = session.ws.settings.sample_count;
        }
        result = std::move(doc);
        have_result = true;
    });

    // member FREQ --semigroup SPEC
    auto* member_cmd = app.add_subcommand("member", "semigroup membership of a frequency");
    std::string member_freq, member_spec;
    member_cmd->add_option("freq", member_freq)->required();
    member_cmd->add_option("--semigroup", member_spec, "all | nonneg | zspan:F;F | nspan:F;F")
        ->required();
    member_cmd->callback([&] {
        session.load();
        MembershipOptions opts;
        opts.coeff_bound = session.ws.settings.coeff_bound;
        opts.eps_sign = session.ws.settings.eps_sign;
        auto res =
            membership(session.freq(member_freq), session.semigroup(member_spec), opts);
        result = json{{"verdict", to_string(res.verdict)}};
        if (res.witness) {
            json w = json::array();
            for (auto& v : *res.witness) w.push_back(v.str());
            result["witness"] = w;
        }
        have_result = true;
    });

    // aplus-check EXPR
    auto* aplus_cmd = app.add_subcommand("aplus-check", "analytic trace membership");
    std::string aplus_expr;
    aplus_cmd->add_option("expr", aplus_expr)->required();
    aplus_cmd->callback([&] {
        session.load();
        result = json{
            {"verdict",
             to_string(is_ap_plus(session.expr(aplus_expr), session.ws.settings.eps_sign))}};
        have_result = true;
    });

    // extend EXPR --x X --y Y
    auto* extend_cmd = app.add_subcommand("extend", "holomorphic extension value");
    std::string extend_expr;
    double ext_x = 0.0, ext_y = 1.0;
    extend_cmd->add_option("expr", extend_expr)->required();
    extend_cmd->add_option("--x", ext_x, "real part");
    extend_cmd->add_option("--y", ext_y, "imaginary part, > 0")->required();
    extend_cmd->callback([&] {
        session.load();
        auto v = extend(session.expr(extend_expr), HalfPlanePoint(ext_x, ext_y),
                        session.ws.settings.eps_sign);
        result = json{{"value", to_json(v)}, {"x", ext_x}, {"y", ext_y}};
        have_result = true;
    });

    // decay EXPR --freq F --T X...
    auto* decay_cmd = app.add_subcommand("decay", "negative-coefficient mean value decay");
    std::string decay_expr, decay_freq;
    std::vector<double> decay_ts;
    decay_cmd->add_option("expr", decay_expr)->required();
    decay_cmd->add_option("--freq", decay_freq, "negative frequency")->required();
    decay_cmd->add_option("--T", decay_ts, "interval half-lengths")->required();
    decay_cmd->callback([&] {
        session.load();
        auto ests = negative_spectrum_decay(session.expr(decay_expr), session.freq(decay_freq),
                                            decay_ts, session.ws.settings.eps_sign);
        json arr = json::array();
        for (auto& est : ests) arr.push_back(to_json(est));
        result = json{{"estimates", arr}};
        have_result = true;
    });

    // example fundamental|general
    auto* example_cmd = app.add_subcommand("example", "reference tuples");
    example_cmd->require_subcommand(1);
    auto* ex_fund = example_cmd->add_subcommand("fundamental", "Laurent tuple on T^{4N}");
    int ex_n = 1, ex_s = 1;
    ex_fund->add_option("--n", ex_n, "number of tuple components")->required();
    ex_fund->add_option("--s", ex_s, "power")->capture_default_str();
    ex_fund->callback([&] {
        auto ex = example_fundamental(ex_n, ex_s);
        json fs = json::array(), partners = json::array();
        for (auto& f : ex.fs) fs.push_back(laurent_json(f));
        for (auto& f : ex.partners) partners.push_back(laurent_json(f));
        result = json{{"fs", fs},
                      {"g", laurent_json(ex.g)},
                      {"n", ex.n},
                      {"partners", partners},
                      {"s", ex.s}};
        have_result = true;
    });
    auto* ex_gen = example_cmd->add_subcommand("general", "trig tuple from 2N frequencies");
    std::vector<std::string> ex_freqs;
    ex_gen->add_option("--freq", ex_freqs, "frequency (repeat 2N times)")->required();
    ex_gen->callback([&] {
        session.load();
        std::vector<Frequency> freqs;
        for (auto& s : ex_freqs) freqs.push_back(session.freq(s));
        auto fs = example_general(freqs, session.table());
        json arr = json::array();
        for (auto& f : fs)
            arr.push_back(json{{"terms", f.term_count()},
                               {"text", render(f)},
                               {"wiener_norm", f.wiener_norm()}});
        result = json{{"fs", arr}, {"n", fs.size()}};
        have_result = true;
    });

    // witness --n N --s S [--h EXPR...]
    auto* witness_cmd = app.add_subcommand("witness", "common zero of the perturbed tuple");
    witness_cmd->set_help_flag("--help", "print help");  // frees -h for the perturbation flag
    int wit_n = 1, wit_s = 1;
    std::vector<std::string> wit_hs, wit_line_freqs;
    witness_cmd->add_option("--n", wit_n)->required();
    witness_cmd->add_option("--s", wit_s)->capture_default_str();
    witness_cmd->add_option("--h", wit_hs, "perturbation Laurent expression (repeat N times)");
    witness_cmd->add_option("--line-freq", wit_line_freqs,
                            "bind torus variables to frequencies (repeat 4N times) and report a "
                            "line parameter approximating the witness");
    witness_cmd->callback([&] {
        double tol = session.tol.value_or(session.ws.settings.tol);
        std::vector<LaurentPoly> hs;
        if (wit_hs.empty()) {
            hs.assign(wit_n, LaurentPoly(4 * wit_n));
        } else {
            for (auto& s : wit_hs) hs.push_back(parse_laurent(s, 4 * wit_n));
        }
        auto wit = reduction_zero_witness(wit_n, wit_s, hs, tol);
        std::optional<double> line_angle_error;
        if (!wit_line_freqs.empty()) {
            session.load();
            std::vector<Frequency> freqs;
            for (auto& s : wit_line_freqs) freqs.push_back(session.freq(s));
            auto approx = approximate_line_t(freqs, wit.torus_point);
            wit.line_t = approx.t;
            line_angle_error = approx.max_angle_error;
        }
        result = json{{"certificate", wit.boundary_winding ? "winding-degree" : "heuristic"},
                      {"method", to_string(wit.method)},
                      {"residual", wit.residual},
                      {"tol", tol},
                      {"torus_point", wit.torus_point}};
        if (wit.boundary_winding) result["boundary_winding"] = *wit.boundary_winding;
        if (wit.line_t) result["line_t"] = *wit.line_t;
        if (line_angle_error) result["line_angle_error"] = *line_angle_error;
        have_result = true;
    });

    // resist --n N --freq F... --H EXPR...
    auto* resist_cmd = app.add_subcommand("resist", "approximation resistance check");
    int res_n = 1;
    std::vector<std::string> res_freqs, res_hs;
    resist_cmd->add_option("--n", res_n)->required();
    resist_cmd->add_option("--freq", res_freqs, "frequency (repeat 4N times)")->required();
    resist_cmd->add_option("--H", res_hs, "approximant expression (repeat N times)")->required();
    resist_cmd->callback([&] {
        session.load();
        std::vector<Frequency> freqs;
        for (auto& s : res_freqs) freqs.push_back(session.freq(s));
        std::vector<TrigPoly> hs;
        for (auto& s : res_hs) hs.push_back(session.expr(s));
        auto rep = approximation_resistance_check(res_n, freqs, hs, session.table(),
                                                  session.grid_setting(), session.refine_setting());
        result = json{{"certified_max", rep.certified_max},
                      {"diff_certified", rep.diff_certified},
                      {"f_invertible", rep.f_invertible},
                      {"max_value", rep.max_value},
                      {"required_bound", rep.required_bound}};
        have_result = true;
    });

    // ranks --n N
    auto* ranks_cmd = app.add_subcommand("ranks", "stable rank reference table");
    int ranks_n = 1;
    ranks_cmd->add_option("--n", ranks_n)->required();
    ranks_cmd->callback([&] {
        auto r = stable_rank_reference(ranks_n);
        json inf_pair = json{{"bsr", "inf"}, {"tsr", "inf"}};
        result = json{{"ap", inf_pair},
                      {"ap_lambda_infinite_dim", inf_pair},
                      {"ap_plus", inf_pair},
                      {"apw_plus", inf_pair},
                      {"n", r.n},
                      {"polydisk", json{{"bsr", r.polydisk_bsr}, {"tsr", r.polydisk_tsr}}},
                      {"torus_continuous", json{{"bsr", r.torus_bsr}, {"tsr", r.torus_tsr}}}};
        have_result = true;
    });

    // orbit --freq F... --count N --dt X
    auto* orbit_cmd = app.add_subcommand("orbit", "Kronecker orbit cell occupancy");
    std::vector<std::string> orbit_freqs;
    long orbit_count = 100000;
    double orbit_dt = 0.1;
    orbit_cmd->add_option("--freq", orbit_freqs, "frequency (repeatable)")->required();
    orbit_cmd->add_option("--count", orbit_count)->capture_default_str();
    orbit_cmd->add_option("--dt", orbit_dt)->capture_default_str();
    orbit_cmd->callback([&] {
        session.load();
        std::vector<Frequency> freqs;
        for (auto& s : orbit_freqs) freqs.push_back(session.freq(s));
        auto rep = kronecker_orbit_sample(freqs, orbit_count, orbit_dt);
        result = json{{"cells_occupied", rep.cells_occupied},
                      {"cells_total", rep.cells_total},
                      {"count", rep.count},
                      {"dt", rep.dt},
                      {"fraction", rep.fraction}};
        have_result = true;
    });

    // let global flags appear after the subcommand as well
    for (auto* sc : app.get_subcommands(std::function<bool(CLI::App*)>{})) {
        sc->fallthrough();
        for (auto* nested : sc->get_subcommands(std::function<bool(CLI::App*)>{}))
            nested->fallthrough();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (have_result) emit(session, out, result);
    return 0;
}

}  // namespace apalg
