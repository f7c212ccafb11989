#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "resonance/errors.hpp"
#include "resonance/omega.hpp"
#include "resonance/potential.hpp"
#include "resonance/report.hpp"
#include "resonance/variational.hpp"
#include "resonance/volterra.hpp"
#include "resonance/wronskian.hpp"

namespace {

using namespace resonance;

constexpr int kExitUsage = 2;
constexpr int kExitAdmissibility = 3;
constexpr int kExitPrecision = 4;

struct OutputOpts {
    std::string format = "human";  // json | csv | human
    std::string out;               // empty = stdout
    bool no_timestamp = false;
};

void add_output_flags(CLI::App* cmd, OutputOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "Write output to this path instead of stdout");
    cmd->add_flag("--no-timestamp", opts.no_timestamp,
                  "Omit the timestamp for byte-stable output");
}

void write_text(const OutputOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out);
    if (!out) throw std::invalid_argument("cannot open output path: " + opts.out);
    out << text;
}

void emit_report(const OutputOpts& opts, const ResonanceReport& rep) {
    if (opts.format == "json")
        write_text(opts, report_to_json(rep, !opts.no_timestamp));
    else if (opts.format == "csv")
        write_text(opts, report_to_csv(rep));
    else
        write_text(opts, report_to_human(rep));
}

// Exact rationals for the certified bracket endpoints.
const mpq_class kBracketLo(167626, 100000);
const mpq_class kBracketHi(168742, 100000);

ResonanceReport certified_yukawa_report(const yukawa::BracketResult& res) {
    ResonanceReport rep;
    rep.n = 3;
    rep.potential = "yukawa";
    rep.kappa_star = res.bracket;
    rep.method = Method::yukawa_series;
    rep.classification = variational::classify_state(3, SignInfo{true, 0.0});
    rep.certified = true;
    rep.diagnostics = {
        {"interior_pairs", static_cast<double>(res.deepest.interior_pairs)},
        {"exterior_order", static_cast<double>(res.deepest.exterior_order)},
        {"accepted_bisection_steps", static_cast<double>(res.accepted_steps)},
        {"bracket_width", res.bracket.width()},
        {"tol_met", res.tol_met ? 1.0 : 0.0},
    };
    return rep;
}

int cmd_yukawa_bracket(double tol, const OutputOpts& opts) {
    const auto res = yukawa::bracket_first_zero(kBracketLo, kBracketHi, tol);
    emit_report(opts, certified_yukawa_report(res));
    if (!res.tol_met) {
        std::cerr << "precision: escalation exhausted before reaching tol; best certified "
                     "bracket reported (width "
                  << res.bracket.width() << ")\n";
        return kExitPrecision;
    }
    return 0;
}

RadialPotential build_potential(const std::string& spec, double scale, double hardy_eps) {
    RadialPotential base = [&]() {
        if (spec == "yukawa") return RadialPotential::yukawa();
        if (spec == "exponential") return RadialPotential::exponential();
        if (spec == "truncated-hardy") return RadialPotential::truncated_hardy(hardy_eps);
        return RadialPotential::from_file(spec);
    }();
    if (scale != 1.0) return RadialPotential::scaled(scale, base);
    return base;
}

int refuse_inadmissible(const AdmissibilityReport& adm, const OutputOpts& opts,
                        const std::string& potential_name) {
    std::ostringstream text;
    text << "potential " << potential_name << " fails the resonance hypotheses: "
         << adm.failure_reason << "\n"
         << "  r^2 V near 0: " << adm.r2v_at_zero << (adm.decay_at_zero ? " (ok)" : " (fail)")
         << "\n"
         << "  r^2 V near infinity: " << adm.r2v_at_infinity
         << (adm.decay_at_infinity ? " (ok)" : " (fail)") << "\n"
         << "  integral r|V| dr: " << adm.weighted_integral
         << (adm.integral_finite ? " (finite)" : " (did not converge)") << "\n";
    if (opts.format == "json") {
        std::ostringstream js;
        js << "{\n  \"schema\": 1,\n  \"outcome\": \"inadmissible potential\",\n"
           << "  \"potential\": \"" << potential_name << "\",\n"
           << "  \"reason\": \"" << adm.failure_reason << "\"\n}\n";
        write_text(opts, js.str());
    } else {
        write_text(opts, text.str());
    }
    std::cerr << text.str();
    return kExitAdmissibility;
}

ResonanceReport variational_report(const RadialPotential& V, int n, int grid) {
    constexpr double kRMin = 1e-6;
    constexpr double kRMax = 2000.0;
    // Interval ladder 1/8 grid .. 1/1 grid, node-nested.
    const int coarse = std::max(32, grid / 8);
    int levels = 1;
    int fine = coarse;
    for (int g = coarse; g < grid; g *= 2) {
        ++levels;
        fine = 2 * g;
    }
    const auto res = variational::variational_J_refined(V, n, coarse, levels, kRMin, kRMax);
    // The outer cutoff clamps the maximizer's tail; halving it probes the
    // O(1/r_max) bias that pitch refinement alone cannot see.
    const auto extent_probe = variational::variational_J(
        V, n, variational::RadialDiscretization::log_uniform(kRMin, kRMax / 2, fine, n));
    const double extent_sens = std::abs(extent_probe.kappa_estimate - res.kappa_estimate);
    ResonanceReport rep;
    rep.n = n;
    rep.potential = V.describe();
    rep.method = Method::variational;
    rep.classification = variational::classify_state(n, V.sign_info());
    rep.certified = false;
    const auto& hist = res.refinement_history;
    double pitch_sens = res.kappa_estimate;  // fallback when only one level
    if (hist.size() >= 2) {
        const double prev_kappa = 1.0 / hist[hist.size() - 2].second;
        pitch_sens = std::abs(prev_kappa - res.kappa_estimate);
    }
    const double band = 4 * (pitch_sens + extent_sens);
    // kappa_estimate is an upper bound for kappa_*; the band below it is a
    // (non-certified) convergence heuristic from the last refinement step plus
    // the cutoff probe.
    rep.kappa_star = Enclosure(std::max(0.0, res.kappa_estimate - band), res.kappa_estimate);
    rep.diagnostics = {{"J_estimate", res.J_estimate},
                       {"kappa_upper_estimate", res.kappa_estimate},
                       {"convergence_band", band},
                       {"pitch_sensitivity", pitch_sens},
                       {"extent_sensitivity", extent_sens}};
    for (const auto& [dofs, J] : hist)
        rep.diagnostics.emplace_back("J_dofs_" + std::to_string(dofs), J);
    return rep;
}

int cmd_resonance(const std::string& potential_spec, double scale, double hardy_eps, int n,
                  const std::string& method, double tol, int grid, double search_hi,
                  const OutputOpts& opts) {
    const RadialPotential V = build_potential(potential_spec, scale, hardy_eps);
    const auto adm = check_admissible(V);
    if (!adm.pass) return refuse_inadmissible(adm, opts, V.describe());

    if (method == "series") {
        if (V.kind() != PotentialKind::yukawa || n != 3)
            throw CLI::ValidationError(
                "--method series is the certified Yukawa n=3 path; use yukawa-bracket "
                "or another method");
        return cmd_yukawa_bracket(tol, opts);
    }

    if (method == "variational") {
        emit_report(opts, variational_report(V, n, grid));
        return 0;
    }

    // volterra or both
    const auto search = volterra::find_first_resonance_general(V, n, search_hi, tol, grid);
    if (!search.found) {
        ResonanceReport rep;
        rep.n = n;
        rep.potential = V.describe();
        rep.method = Method::volterra;
        rep.classification = variational::classify_state(n, V.sign_info());
        rep.certified = false;
        rep.outcome = search.outcome;
        rep.kappa_star = Enclosure(0.0, 0.0);
        rep.diagnostics = {{"search_hi", search_hi}};
        emit_report(opts, rep);
        return 0;
    }
    ResonanceReport rep = search.report;
    if (method == "both") {
        const ResonanceReport vrep = variational_report(V, n, grid / 2);
        const double gap = std::abs(vrep.kappa_star.hi - search.kappa_estimate);
        rep.diagnostics.emplace_back("variational_kappa_upper", vrep.kappa_star.hi);
        rep.diagnostics.emplace_back("cross_method_gap", gap);
        for (const auto& d : vrep.diagnostics)
            if (d.first.rfind("J_", 0) == 0) rep.diagnostics.emplace_back(d);
    }
    emit_report(opts, rep);
    return 0;
}

int cmd_compare(double c0, double tol, const OutputOpts& opts) {
    const auto res = yukawa::bracket_first_zero(kBracketLo, kBracketHi, tol);
    const double bound = variational::comparison_bound(res.bracket, c0);
    ResonanceReport rep;
    rep.n = 3;
    rep.potential = "any V with V <= C0 * yukawa (caller-asserted domination)";
    rep.method = Method::yukawa_series;
    rep.classification = variational::classify_state(3, SignInfo{true, 0.0});
    rep.certified = true;
    rep.outcome = "lower bound from reference bracket";
    rep.kappa_star = Enclosure(bound, std::numeric_limits<double>::infinity());
    rep.diagnostics = {{"C0", c0},
                       {"kappa_lower_bound", bound},
                       {"reference_lo", res.bracket.lo},
                       {"reference_hi", res.bracket.hi}};
    emit_report(opts, rep);
    return 0;
}

// ---- plot data ----

struct PlotOpts {
    std::string what = "wronskian";
    double lo = std::numeric_limits<double>::quiet_NaN();
    double hi = std::numeric_limits<double>::quiet_NaN();
    int points = 201;
    double kappa = 1.0;
    int order = 3;
};

void default_range(PlotOpts& p) {
    if (!std::isnan(p.lo) && !std::isnan(p.hi)) return;
    if (p.what == "wronskian") {
        p.lo = 0.0;
        p.hi = 2.0;
    } else if (p.what == "u-int") {
        p.lo = 0.01;
        p.hi = 1.0;
    } else {
        p.lo = 1.0;
        p.hi = 10.0;
    }
}

int cmd_plot_data(PlotOpts p, const OutputOpts& opts) {
    default_range(p);
    if (!(p.hi > p.lo) && p.what != "alpha")
        throw CLI::ValidationError("--hi must exceed --lo");
    std::ostringstream csv;
    csv << std::setprecision(17);
    const auto nan = std::numeric_limits<double>::quiet_NaN();

    if (p.what == "wronskian") {
        csv << "kappa,lo,mid,hi,sign,uncertified\n";
        for (int i = 0; i < p.points; ++i) {
            const double k = p.lo + (p.hi - p.lo) * i / (p.points - 1);
            const mpq_class kq(k);  // dyadic double -> exact rational
            try {
                const auto s = yukawa::wronskian_enclosure(kq);
                const char* sign = s.sign == CertifiedSign::positive   ? "+"
                                   : s.sign == CertifiedSign::negative ? "-"
                                                                       : "?";
                csv << k << "," << s.enclosure.lo << "," << s.enclosure.mid() << ","
                    << s.enclosure.hi << "," << sign << ",0\n";
            } catch (const CertificationError&) {
                csv << k << "," << nan << "," << nan << "," << nan << ",?,1\n";
            }
        }
    } else if (p.what == "u-int") {
        csv << "r,lo,mid,hi,uncertified\n";
        const mpq_class kq(p.kappa);
        const yukawa::AlphaTable table(16);
        for (int i = 0; i < p.points; ++i) {
            const double r = p.lo + (p.hi - p.lo) * i / (p.points - 1);
            try {
                const auto e = yukawa::u_int_value(table, kq, mpq_class(r), 8);
                csv << r << "," << e.lo << "," << e.mid() << "," << e.hi << ",0\n";
            } catch (const std::exception&) {
                csv << r << "," << nan << "," << nan << "," << nan << ",1\n";
            }
        }
    } else if (p.what == "u-ext") {
        csv << "r,lo,mid,hi,uncertified\n";
        const mpq_class kq(p.kappa);
        for (int i = 0; i < p.points; ++i) {
            const double r = p.lo + (p.hi - p.lo) * i / (p.points - 1);
            try {
                const auto e = yukawa::u_ext_value(kq, r, 3);
                csv << r << "," << e.lo << "," << e.mid() << "," << e.hi << ",0\n";
            } catch (const std::exception&) {
                csv << r << "," << nan << "," << nan << "," << nan << ",1\n";
            }
        }
    } else if (p.what == "alpha") {
        csv << "k,lo,mid,hi\n";
        const yukawa::AlphaTable table(std::max(4, p.order));
        const auto vals = table.evaluate(mpq_class(p.kappa));
        for (int k = 0; k <= p.order; ++k) {
            const auto e = yukawa::to_enclosure(vals[k]);
            csv << k << "," << e.lo << "," << e.mid() << "," << e.hi << "\n";
        }
    } else {  // omega
        csv << "r,lo,mid,hi,dlo,dmid,dhi\n";
        for (int i = 0; i < p.points; ++i) {
            const double r = p.lo + (p.hi - p.lo) * i / (p.points - 1);
            const auto w = yukawa::omega(p.order, std::max(1.0, r));
            csv << r << "," << w.value.lo << "," << w.value.mid() << "," << w.value.hi << ","
                << w.derivative.lo << "," << w.derivative.mid() << "," << w.derivative.hi
                << "\n";
        }
    }
    write_text(opts, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sided enclosures of the first coupling resonance kappa_* for "
                 "radial Schrodinger operators -Delta - kappa V"};
    app.require_subcommand(1);

    OutputOpts out_yb, out_res, out_cmp, out_plot;

    auto* yb = app.add_subcommand(
        "yukawa-bracket", "Certified bracket for the Yukawa potential e^{-r}/r in n = 3");
    double yb_tol = 0.012;
    yb->add_option("--tol", yb_tol, "Target bracket width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(yb, out_yb);

    auto* res = app.add_subcommand("resonance",
                                   "First-resonance search for a general radial potential");
    std::string res_potential = "yukawa", res_method = "both";
    double res_scale = 1.0, res_tol = 1e-3, res_search_hi = 8.0, res_hardy_eps = 0.0;
    int res_n = 3, res_grid = 2048;
    res->add_option("--potential", res_potential,
                    "Preset (yukawa, exponential, truncated-hardy) or tabulated file path")
        ->capture_default_str();
    res->add_option("--scale", res_scale, "Multiply the potential by this factor")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    res->add_option("--hardy-eps", res_hardy_eps,
                    "Singularity cap for truncated-hardy (<= 0 leaves 1/r^2 uncapped)")
        ->capture_default_str();
    res->add_option("--dim", res_n, "Dimension n >= 3")->check(CLI::Range(3, 12))
        ->capture_default_str();
    res->add_option("--method", res_method, "Computation path")
        ->check(CLI::IsMember({"series", "volterra", "variational", "both"}))
        ->capture_default_str();
    res->add_option("--tol", res_tol, "Bisection tolerance")->check(CLI::PositiveNumber)
        ->capture_default_str();
    res->add_option("--grid", res_grid, "Grid nodes per solver side")
        ->check(CLI::Range(64, 8192))
        ->capture_default_str();
    res->add_option("--search-hi", res_search_hi, "Upper end of the kappa search range")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(res, out_res);

    auto* cmp = app.add_subcommand(
        "compare", "Lower bound kappa_*(V) >= lo(reference)/C0 for V <= C0 * yukawa");
    double cmp_c0 = 1.0, cmp_tol = 0.012;
    cmp->add_option("--c0", cmp_c0, "Domination constant C0 > 0")
        ->required()
        ->check(CLI::PositiveNumber);
    cmp->add_option("--tol", cmp_tol, "Reference bracket width")->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_flags(cmp, out_cmp);

    auto* plot = app.add_subcommand("plot-data", "CSV series for external plotting");
    PlotOpts popt;
    plot->add_option("--what", popt.what, "Quantity to tabulate")
        ->check(CLI::IsMember({"wronskian", "u-int", "u-ext", "alpha", "omega"}))
        ->capture_default_str();
    plot->add_option("--lo", popt.lo, "Range start (default depends on --what)");
    plot->add_option("--hi", popt.hi, "Range end (default depends on --what)");
    plot->add_option("--points", popt.points, "Sample count")->check(CLI::Range(2, 100000))
        ->capture_default_str();
    plot->add_option("--kappa", popt.kappa, "Coupling for u-int/u-ext/alpha")
        ->capture_default_str();
    plot->add_option("--k", popt.order, "Series order for alpha/omega")
        ->check(CLI::Range(1, 16))
        ->capture_default_str();
    add_output_flags(plot, out_plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints message/help
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (yb->parsed()) return cmd_yukawa_bracket(yb_tol, out_yb);
        if (res->parsed())
            return cmd_resonance(res_potential, res_scale, res_hardy_eps, res_n, res_method,
                                 res_tol, res_grid, res_search_hi, out_res);
        if (cmp->parsed()) return cmd_compare(cmp_c0, cmp_tol, out_cmp);
        if (plot->parsed()) return cmd_plot_data(popt, out_plot);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PrecisionError& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const CertificationError& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const ConvergenceError& e) {
        std::cerr << "precision failure: " << e.what() << "\n";
        return kExitPrecision;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
