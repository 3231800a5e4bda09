// Batch interface over the exact tables: evaluate spectra, check
// residuals, compute multiplicities and bases, and run the floating
// oracles. Everything is emitted as JSON lines; exact inputs are "p/q"
// strings, floats appear only for the genuinely transcendental commands.
//
// Exit codes: 0 success, 1 verification failure, 2 mathematical pole or
// degeneracy, 3 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <thread>

#include "sbo/quadrature.hpp"
#include "sbo/solver.hpp"

using json = nlohmann::ordered_json;
using namespace sbo;

namespace {

struct Options {
    std::string family = "real";
    int n = 3;
    int window = 0; // 0 = choose from the singular class
    std::string out;
    int jobs = 0;

    std::string r = "0", rp = "0";
    std::string pair;
    std::string variant = "t";
    bool printed = false;
    int i = 0, j = 0, N = 0;
    std::string v = "full", w = "full";
    int sweep_imax = -1, sweep_jmax = -1;
    double rf = 0.0, rpf = 0.0;
    int alpha = 0, alphap = 0;
    int samples = 5, level = 0;
    int alpha_max = 4, alphap_max = 20, lmax = 200;
    int imax = 2, jmax = 2, trials = 5;
    std::string suite = "relations";
};

GroupCase parse_case(const Options& o) {
    if (o.family == "real") return GroupCase::real(o.n);
    if (o.family == "complex") return GroupCase::complex(o.n);
    throw CLI::ValidationError("--case must be 'real' or 'complex'");
}

int default_window(const GroupCase& cse, const Params& ps) {
    auto cls = singular_set_membership(cse, ps);
    if (cls.kind == SingularClass::Generic) return 10;
    return std::max(10, 2 * (cls.i + cls.j) + 10);
}

json job_echo(const std::string& command, const Options& o, std::initializer_list<std::string> keys) {
    json j;
    j["command"] = command;
    j["case"] = o.family;
    j["n"] = o.n;
    auto want = [&](const char* k) {
        for (const auto& s : keys)
            if (s == k) return true;
        return false;
    };
    if (want("r")) j["r"] = o.r;
    if (want("rp")) j["rp"] = o.rp;
    if (want("rf")) j["r"] = o.rf;
    if (want("rpf")) j["rp"] = o.rpf;
    if (want("pair")) j["pair"] = o.pair;
    if (want("variant")) j["variant"] = o.variant;
    if (want("window")) j["window"] = o.window;
    if (want("v")) j["v"] = o.v;
    if (want("w")) j["w"] = o.w;
    if (want("alpha")) j["alpha"] = o.alpha;
    if (want("alphap")) j["alphap"] = o.alphap;
    if (want("samples")) j["samples"] = o.samples;
    if (want("level")) j["level"] = o.level;
    if (want("alpha_max")) j["alpha_max"] = o.alpha_max;
    if (want("N")) j["N"] = o.N;
    if (want("i")) j["i"] = o.i;
    if (want("j")) j["j"] = o.j;
    if (want("suite")) j["suite"] = o.suite;
    return j;
}

json table_json(const SpectralTable& t) {
    json values = json::array();
    for (const auto& [pr, val] : t.values) values.push_back({pr.str(), val.str()});
    return json{{"case", t.cse.name()},
                {"n", t.cse.n},
                {"params", {{"r", t.params.r.str()}, {"rp", t.params.r_prime.str()}}},
                {"window", t.window},
                {"values", values}};
}

int run_parallel(int jobs, int count, const std::function<void(int)>& fn) {
    int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, count));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            int k;
            while ((k = next.fetch_add(1)) < count) fn(k);
        });
    for (auto& th : pool) th.join();
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_eval(const Options& o, json& out) {
    GroupCase cse = parse_case(o);
    Params ps{Rat::parse(o.r), Rat::parse(o.rp)};
    PairIndex pr = PairIndex::parse(cse.family, o.pair);
    out = job_echo("eval", o, {"r", "rp", "pair", "variant"});
    if (o.variant == "t") {
        if (cse.is_real()) {
            out["value"] = spectral_real(cse, ps, pr).str();
        } else {
            out["form"] = o.printed ? "printed" : "corrected";
            out["value"] = (o.printed ? spectral_complex_printed(cse, ps, pr)
                                      : spectral_complex(cse, ps, pr))
                               .str();
            if (!o.printed)
                out["prefactor_base"] = calibrated_complex_prefactor().str();
        }
    } else if (o.variant == "t1") {
        out["value"] = spectral_real_entire(cse, ps, pr).str();
    } else if (o.variant == "t2") {
        out["j"] = o.j;
        out["value"] = spectral_real_singular_line(cse, ps.r, o.j, pr).str();
    } else if (o.variant == "t3") {
        out["N"] = o.N;
        out["value"] = juhl_eigenvalue(cse, ps.r, o.N, pr).str();
    } else if (o.variant == "tplus") {
        out["i"] = o.i;
        out["j"] = o.j;
        out["value"] = spectral_complex_plus(cse, o.i, o.j, pr).str();
    } else {
        throw CLI::ValidationError("--variant must be one of t|t1|t2|t3|tplus");
    }
    return 0;
}

int cmd_residuals(const Options& o, json& out) {
    GroupCase cse = parse_case(o);
    Params ps{Rat::parse(o.r), Rat::parse(o.rp)};
    int window = o.window > 0 ? o.window : 8;
    out = job_echo("residuals", o, {"r", "rp", "window"});
    out["window"] = window;
    auto max_residual = [&](const SpectralTable& t) {
        Rat worst(0);
        int rows = 0;
        for (const auto& [src, d] : relation_instances(cse, window)) {
            Rat res = abs(row_residual(cse, ps, src, d, t));
            if (res > worst) worst = res;
            ++rows;
        }
        return std::make_pair(worst, rows);
    };
    if (cse.is_real()) {
        SpectralTable t = build_table_real(cse, ps, window);
        auto [worst, rows] = max_residual(t);
        out["rows"] = rows;
        out["max_abs_residual"] = worst.str();
        return worst.is_zero() ? 0 : 1;
    }
    SpectralTable corr = build_table_complex(cse, ps, window, true);
    SpectralTable prnt = build_table_complex(cse, ps, window, false);
    auto [wc, rows] = max_residual(corr);
    auto [wp, rows2] = max_residual(prnt);
    out["rows"] = rows;
    out["gamma"] = calibrated_complex_prefactor().str();
    out["corrected_max_abs_residual"] = wc.str();
    out["printed_max_abs_residual"] = wp.str();
    return wc.is_zero() ? 0 : 1;
}

json mult_record(const GroupCase& cse, const Params& ps, const CompositionFactor& v,
                 const CompositionFactor& w, int window) {
    json rec;
    rec["params"] = {{"r", ps.r.str()}, {"rp", ps.r_prime.str()}};
    rec["v"] = v.str();
    rec["w"] = w.str();
    rec["set"] = singular_set_membership(cse, ps).str();
    try {
        rec["multiplicity"] = multiplicity(cse, ps, v, w, window);
        rec["stable"] = true;
    } catch (const WindowUnstable&) {
        rec["multiplicity"] = nullptr;
        rec["stable"] = false;
    }
    rec["window"] = window;
    return rec;
}

int cmd_mult(const Options& o, json& out) {
    GroupCase cse = parse_case(o);
    CompositionFactor v = CompositionFactor::parse(o.v);
    CompositionFactor w = CompositionFactor::parse(o.w);
    if (o.sweep_imax >= 0 && o.sweep_jmax >= 0) {
        out = job_echo("mult", o, {"v", "w", "window"});
        out["sweep"] = {{"imax", o.sweep_imax}, {"jmax", o.sweep_jmax}};
        std::vector<json> records((o.sweep_imax + 1) * (o.sweep_jmax + 1));
        Rat step = cse.is_real() ? Rat(1) : Rat(2);
        run_parallel(o.jobs, static_cast<int>(records.size()), [&](int k) {
            int i = k / (o.sweep_jmax + 1);
            int j = k % (o.sweep_jmax + 1);
            Params ps{-cse.rho() - step * Rat(i), -cse.rho_prime() - step * Rat(j)};
            int window = o.window > 0 ? o.window : default_window(cse, ps);
            records[k] = mult_record(cse, ps, v, w, window);
        });
        out["results"] = records;
        return 0;
    }
    Params ps{Rat::parse(o.r), Rat::parse(o.rp)};
    int window = o.window > 0 ? o.window : default_window(cse, ps);
    out = job_echo("mult", o, {"r", "rp", "v", "w", "window"});
    json rec = mult_record(cse, ps, v, w, window);
    for (auto& [key, val] : rec.items()) out[key] = val;
    if (!out["stable"].get<bool>()) throw WindowUnstable("multiplicity not window-stable");
    return 0;
}

int cmd_basis(const Options& o, json& out) {
    GroupCase cse = parse_case(o);
    Params ps{Rat::parse(o.r), Rat::parse(o.rp)};
    int window = o.window > 0 ? o.window : default_window(cse, ps);
    CompositionFactor v = CompositionFactor::parse(o.v);
    CompositionFactor w = CompositionFactor::parse(o.w);
    out = job_echo("basis", o, {"r", "rp", "v", "w", "window"});
    out["window"] = window;
    auto basis = nullspace(assemble(cse, ps, window, v, w));
    out["dimension"] = basis.dimension;
    json vecs = json::array();
    for (const auto& vec : basis.vectors) {
        SpectralTable t;
        t.cse = cse;
        t.params = ps;
        t.window = window;
        t.values = vec;
        vecs.push_back(table_json(t));
    }
    out["basis"] = vecs;
    return 0;
}

int cmd_compare(const Options& o, json& out) {
    GroupCase cse = parse_case(o);
    Params ps{Rat::parse(o.r), Rat::parse(o.rp)};
    int window = o.window > 0 ? o.window : default_window(cse, ps);
    out = job_echo("compare", o, {"r", "rp", "window"});
    out["window"] = window;
    auto basis = nullspace(assemble(cse, ps, window, CompositionFactor::full(),
                                    CompositionFactor::full()));
    out["dimension"] = basis.dimension;
    auto rep = compare_with_closed_form(cse, ps, basis);
    out["proportional"] = rep.proportional;
    out["scale"] = rep.scale.str();
    return 0;
}

int cmd_funk_hecke(const Options& o, json& out) {
    out = job_echo("funk-hecke", o, {"rf", "rpf", "alpha", "alphap", "samples", "level"});
    auto rep = verify_funk_hecke(o.n, o.alpha, o.alphap, o.rf, o.rpf, o.samples, o.level);
    out["odd_parity"] = rep.odd_parity;
    out["refinements"] = o.level + 1;
    json samples = json::array();
    for (const auto& s : rep.samples)
        samples.push_back(
            {{"y", s.y}, {"value", s.integral}, {"reference", s.reference}, {"rel_error", s.rel_error}});
    out["samples"] = samples;
    out["max_rel_error"] = rep.max_rel_error;
    double tol = rep.odd_parity ? 1e-6 : 1e-5;
    return rep.max_rel_error <= tol ? 0 : 1;
}

int cmd_norms(const Options& o, json& out) {
    out = job_echo("norms", o, {"alpha_max"});
    auto rep = verify_norm_formulas(o.n, o.alpha_max);
    out["max_rel_plancherel"] = rep.max_rel_plancherel;
    out["max_rel_restriction"] = rep.max_rel_restriction;
    json checks = json::array();
    for (const auto& c : rep.plancherel)
        checks.push_back({{"alpha", c.alpha},
                          {"alphap", c.alpha_prime},
                          {"quadrature", c.ratio_quadrature},
                          {"formula", c.ratio_formula},
                          {"rel_error", c.rel_error}});
    out["plancherel"] = checks;
    return 0;
}

int cmd_growth(const Options& o, json& out) {
    out = job_echo("growth", o, {"rf", "N"});
    out["alphap_max"] = o.alphap_max;
    out["lmax"] = o.lmax;
    auto prof = boundedness_profile(o.n, o.rf, o.N, o.alphap_max, o.lmax);
    auto prof2 = boundedness_profile(o.n, o.rf, o.N, o.alphap_max, 2 * o.lmax);
    out["r_prime"] = prof.r_prime;
    out["sup"] = prof.sup;
    out["sup_doubled_lmax"] = prof2.sup;
    out["normalized"] = prof.normalized;
    return 0;
}

int cmd_verify(const Options& o, json& out);

// ---------------------------------------------------------------------------

struct RatGen {
    std::uint64_t s;
    explicit RatGen(std::uint64_t seed) : s(seed) {}
    Rat next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        long num = static_cast<long>((s >> 33) % 15) - 7;
        long den = 1 + static_cast<long>((s >> 21) % 7);
        return Rat(num, den);
    }
};

int cmd_verify(const Options& o, json& out) {
    GroupCase cse = parse_case(o);
    out = job_echo("verify", o, {"suite"});
    bool pass = true;
    if (o.suite == "relations") {
        RatGen gen(2024);
        int window = o.window > 0 ? o.window : 10;
        int checked = 0;
        while (checked < o.trials) {
            Params ps{gen.next(), gen.next()};
            try {
                SpectralTable t = cse.is_real() ? build_table_real(cse, ps, window + 1)
                                                : build_table_complex(cse, ps, window + 1);
                for (const auto& [src, d] : relation_instances(cse, window + 1))
                    if (!row_residual(cse, ps, src, d, t).is_zero()) pass = false;
            } catch (const PoleError&) {
                continue;
            }
            ++checked;
        }
        out["points_checked"] = checked;
    } else if (o.suite == "lambda") {
        for (const auto& pr : lattice_pairs(cse, 12))
            for (Direction d : directions_for(cse)) {
                if (!direction_valid(cse, pr, d)) continue;
                auto a = lambda_closed(cse, pr, d);
                auto b = lambda_from_lemma(cse, pr, d);
                Rat sum = a[0].second + a[1].second;
                if (sum != Rat(1)) pass = false;
                if (a[0].second != b[0].second || a[1].second != b[1].second) pass = false;
            }
    } else if (o.suite == "tables") {
        // Principal-series multiplicities plus the full subquotient tables
        // on the singular grid i <= imax, j <= jmax.
        auto full = CompositionFactor::full();
        Rat step = cse.is_real() ? Rat(1) : Rat(2);
        std::vector<std::pair<int, int>> grid;
        for (int i = 0; i <= o.imax; ++i)
            for (int j = 0; j <= o.jmax; ++j) grid.emplace_back(i, j);
        std::vector<std::string> fails(grid.size());
        run_parallel(o.jobs, static_cast<int>(grid.size()), [&](int k) {
            auto [i, j] = grid[k];
            Params ps{-cse.rho() - step * Rat(i), -cse.rho_prime() - step * Rat(j)};
            auto cls = singular_set_membership(cse, ps);
            int window = o.window > 0 ? o.window : default_window(cse, ps);
            int expect_full =
                (cls.kind == SingularClass::LEven || cls.kind == SingularClass::LComplex) ? 2 : 1;
            if (multiplicity(cse, ps, full, full, window) != expect_full) {
                fails[k] = "full/full at (" + std::to_string(i) + "," + std::to_string(j) + ")";
                return;
            }
            std::vector<CompositionFactor::Kind> kinds;
            if (cse.is_real()) kinds = {CompositionFactor::F, CompositionFactor::T};
            else
                kinds = {CompositionFactor::F, CompositionFactor::Tplus, CompositionFactor::Tminus,
                         CompositionFactor::T};
            for (std::size_t vi = 0; vi < kinds.size(); ++vi)
                for (std::size_t wi = 0; wi < kinds.size(); ++wi) {
                    int expect;
                    if (cse.is_real()) {
                        bool even = i >= j && (i - j) % 2 == 0;
                        expect = even ? (vi == wi ? 1 : 0) : (vi == 1 && wi == 0 ? 1 : 0);
                    } else {
                        bool lower = j <= i;
                        expect = lower ? (vi == wi ? 1 : (vi == 3 && wi == 0 ? 1 : 0))
                                       : (vi == 3 && wi == 0 ? 1 : 0);
                    }
                    CompositionFactor v{kinds[vi], i}, w{kinds[wi], j};
                    if (multiplicity(cse, ps, v, w, window) != expect) {
                        fails[k] = "m(" + v.str() + "," + w.str() + ") at (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")";
                        return;
                    }
                }
        });
        json failed = json::array();
        for (auto& f : fails)
            if (!f.empty()) {
                pass = false;
                failed.push_back(f);
            }
        out["failures"] = failed;
    } else if (o.suite == "funk-hecke") {
        double worst = 0.0;
        for (int a = 0; a <= 2 && pass; ++a)
            for (int b = a % 2; b <= a; b += 2) {
                auto rep = verify_funk_hecke(o.n, a, b, 0.2, 0.1, 3, o.level);
                worst = std::max(worst, rep.max_rel_error);
                if (rep.max_rel_error > 1e-5) pass = false;
            }
        out["max_rel_error"] = worst;
    } else if (o.suite == "norms") {
        try {
            auto rep = verify_norm_formulas(o.n, o.alpha_max);
            out["max_rel_plancherel"] = rep.max_rel_plancherel;
            out["max_rel_restriction"] = rep.max_rel_restriction;
        } catch (const ToleranceExceeded&) {
            pass = false;
        }
    } else if (o.suite == "growth") {
        auto prof = boundedness_profile(o.n, o.rf == 0.0 ? -0.7 : o.rf, o.N, 20, o.lmax);
        out["sup"] = prof.sup;
        pass = std::isfinite(prof.sup);
    } else {
        throw CLI::ValidationError("unknown verify suite '" + o.suite + "'");
    }
    out["pass"] = pass;
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Exact symmetry-breaking operator tables for the rank-one orthogonal and "
                 "unitary pairs, with floating-point oracles"};
    app.require_subcommand(1);
    app.add_option("--case", o.family, "Group case: real or complex")->capture_default_str();
    app.add_option("--n", o.n, "Rank parameter n")->capture_default_str();
    app.add_option("--window", o.window, "Lattice truncation window (0 = automatic)");
    app.add_option("--out", o.out, "Write JSON lines to this file instead of stdout");
    app.add_option("--jobs", o.jobs, "Worker pool size for sweeps (0 = hardware)");

    auto* eval = app.add_subcommand("eval", "Evaluate a spectral value at one lattice pair");
    eval->add_option("--r", o.r, "Exact induction parameter r, as p/q")->required();
    eval->add_option("--rp", o.rp, "Exact induction parameter r', as p/q")->required();
    eval->add_option("--pair", o.pair, "Lattice pair: a,ap or a1,a2;a1p,a2p")->required();
    eval->add_option("--variant", o.variant, "t | t1 | t2 | t3 | tplus")->capture_default_str();
    eval->add_flag("--printed", o.printed, "Complex case: use the printed closed form");
    eval->add_option("--i", o.i, "Index i (tplus)");
    eval->add_option("--j", o.j, "Index j (t2, tplus)");
    eval->add_option("--N", o.N, "Order parameter N (t3)");

    auto* residuals = app.add_subcommand("residuals", "Relation residuals of the closed form");
    residuals->add_option("--r", o.r)->required();
    residuals->add_option("--rp", o.rp)->required();

    auto* mult = app.add_subcommand("mult", "Multiplicity between composition factors");
    mult->add_option("--r", o.r);
    mult->add_option("--rp", o.rp);
    mult->add_option("--v", o.v, "Source factor: full, F(i), T(i), T+(i), T-(i)")
        ->capture_default_str();
    mult->add_option("--w", o.w, "Target factor")->capture_default_str();
    mult->add_option("--sweep-imax", o.sweep_imax, "Sweep the singular grid up to this i");
    mult->add_option("--sweep-jmax", o.sweep_jmax, "Sweep the singular grid up to this j");

    auto* basis = app.add_subcommand("basis", "Reduced nullspace basis of the relation system");
    basis->add_option("--r", o.r)->required();
    basis->add_option("--rp", o.rp)->required();
    basis->add_option("--v", o.v)->capture_default_str();
    basis->add_option("--w", o.w)->capture_default_str();

    auto* compare = app.add_subcommand("compare", "Compare nullspace basis with the closed form");
    compare->add_option("--r", o.r)->required();
    compare->add_option("--rp", o.rp)->required();

    auto* fh = app.add_subcommand("funk-hecke", "Quadrature check of the singular integral");
    fh->add_option("--r", o.rf, "Real parameter r")->required();
    fh->add_option("--rp", o.rpf, "Real parameter r'")->required();
    fh->add_option("--alpha", o.alpha)->required();
    fh->add_option("--alphap", o.alphap)->required();
    fh->add_option("--samples", o.samples)->capture_default_str();
    fh->add_option("--level", o.level)->capture_default_str();

    auto* norms = app.add_subcommand("norms", "Quadrature check of the norm formulas");
    norms->add_option("--alpha-max", o.alpha_max)->capture_default_str();

    auto* growth = app.add_subcommand("growth", "Discrete-component boundedness profile");
    growth->add_option("--r", o.rf, "Real parameter r")->required();
    growth->add_option("--N", o.N)->capture_default_str();
    growth->add_option("--alphap-max", o.alphap_max)->capture_default_str();
    growth->add_option("--lmax", o.lmax)->capture_default_str();

    auto* verify = app.add_subcommand(
        "verify", "Verification suites: relations|lambda|tables|funk-hecke|norms|growth");
    verify->add_option("--suite", o.suite)->required();
    verify->add_option("--imax", o.imax)->capture_default_str();
    verify->add_option("--jmax", o.jmax)->capture_default_str();
    verify->add_option("--trials", o.trials)->capture_default_str();
    verify->add_option("--alpha-max", o.alpha_max)->capture_default_str();
    verify->add_option("--level", o.level)->capture_default_str();
    verify->add_option("--lmax", o.lmax)->capture_default_str();
    verify->add_option("--r", o.rf, "Float r for the growth suite");
    verify->add_option("--N", o.N);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 3;
    }

    json out;
    int rc = 0;
    try {
        if (app.got_subcommand(eval)) rc = cmd_eval(o, out);
        else if (app.got_subcommand(residuals)) rc = cmd_residuals(o, out);
        else if (app.got_subcommand(mult)) rc = cmd_mult(o, out);
        else if (app.got_subcommand(basis)) rc = cmd_basis(o, out);
        else if (app.got_subcommand(compare)) rc = cmd_compare(o, out);
        else if (app.got_subcommand(fh)) rc = cmd_funk_hecke(o, out);
        else if (app.got_subcommand(norms)) rc = cmd_norms(o, out);
        else if (app.got_subcommand(growth)) rc = cmd_growth(o, out);
        else if (app.got_subcommand(verify)) rc = cmd_verify(o, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const ParameterError& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }

    std::string line = out.dump();
    if (!o.out.empty()) {
        std::ofstream f(o.out);
        f << line << "\n";
    } else {
        std::cout << line << "\n";
    }
    return rc;
}
