#include "wom/cli.hpp"

#include "wom/checks.hpp"
#include "wom/config.hpp"
#include "wom/csv.hpp"
#include "wom/parallel.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

namespace wom {

namespace {

constexpr double kTwoPi = constants::two_pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Overrides {
    std::string config_path, out_path;
    std::optional<std::string> axis, spacing, theta_mode;
    std::optional<double> min, max, zeta, gamma_m_Hz;
    std::optional<int> points;
};

void apply_overrides(RunConfig& cfg, const Overrides& o) {
    if (o.axis) cfg.scan.axis = *o.axis;
    if (o.min) cfg.scan.min = *o.min;
    if (o.max) cfg.scan.max = *o.max;
    if (o.points) cfg.scan.points = *o.points;
    if (o.spacing) cfg.scan.spacing = *o.spacing;
    if (o.theta_mode) {
        cfg.system.theta_mode = *o.theta_mode;
        cfg.system.theta_rad.reset();
    }
    if (o.zeta) cfg.app.zeta = *o.zeta;
    if (o.gamma_m_Hz) cfg.app.gamma_m_Hz = *o.gamma_m_Hz;
    validate_config(cfg);
}

const char* coupling_name(CouplingModel m) { return m == CouplingModel::Bare ? "bare" : "self_consistent"; }
const char* shot_name(ShotNoise s) { return s == ShotNoise::Unit ? "unit" : "thermal"; }

std::vector<std::pair<std::string, double>> derived_fields(const DerivedParams& d) {
    return {{"alpha", d.alpha},         {"g_m", d.g_m},
            {"omega_m", d.omega_m},     {"xi", d.xi},
            {"c_theta", d.c_theta},     {"L_theta", d.L_theta},
            {"n_th", d.n_th},           {"N_th", d.N_th},
            {"n_bar", d.n_bar},         {"M_theta", d.M_theta},
            {"lambda_theta", d.lambda_theta}, {"Lambda_theta", d.Lambda_theta},
            {"omega_theta", d.omega_theta},   {"gamma_theta", d.gamma_theta}};
}

// Comment block echoing every resolved input and the derived frequencies at the base point.
void write_header(CsvWriter& w, const std::string& sub, const RunConfig& cfg, const SystemParams& p) {
    w.comment("wiener-optomech " + sub);
    const SystemConfig& s = cfg.system;
    w.comment("system.Omega_Hz", s.Omega_Hz);
    w.comment("system.kappa_Hz", s.kappa_Hz);
    w.comment("system.Gamma_Hz", s.Gamma_Hz);
    w.comment("system.Delta_over_kappa", s.Delta_over_kappa);
    w.comment("system.P_in_W", s.P_in_W);
    w.comment("system.m_kg", s.m_kg);
    w.comment("system.T_K", s.T_K);
    w.comment("system.theta_mode", s.theta_rad ? std::string("explicit") : s.theta_mode);
    w.comment("system.theta_rad", p.theta);
    w.comment("system.ell_m", p.ell);
    w.comment("system.omega_c_rad_s", p.omega_c);
    if (cfg.scan.points > 0) {
        w.comment("scan.axis", cfg.scan.axis);
        w.comment("scan.min", cfg.scan.min);
        w.comment("scan.max", cfg.scan.max);
        w.comment("scan.points", cfg.scan.points);
        w.comment("scan.spacing", cfg.scan.spacing);
    }
    w.comment("scan.theta_points", cfg.scan.theta_points);
    w.comment("app.zeta", cfg.app.zeta);
    w.comment("app.gamma_m_Hz", cfg.app.gamma_m_Hz ? *cfg.app.gamma_m_Hz : s.Gamma_Hz);
    w.comment("app.detuning_ratio", detuning_ratio_of(cfg));
    w.comment("app.xi_eff_mode", cfg.app.xi_eff_mode);
    w.comment("model.coupling_model", coupling_name(cfg.model.coupling));
    w.comment("model.shot_noise", shot_name(cfg.model.shot_noise));
    try {
        const DerivedParams d = derive(p, resolve_options(cfg));
        for (const auto& [k, v] : derived_fields(d)) w.comment("derived." + k, v);
    } catch (const Error& e) {
        w.comment("derived", std::string("unavailable: ") + e.what());
    }
}

std::vector<double> grid_or_default(const RunConfig& cfg, const std::string& axis, double lo, double hi, int n) {
    if (cfg.scan.points > 0) {
        if (cfg.scan.axis != axis) throw ConfigError("scan.axis", "this subcommand scans '" + axis + "'");
        return scan_values(cfg.scan);
    }
    ScanConfig s;
    s.axis = axis;
    s.min = lo;
    s.max = hi;
    s.points = n;
    s.spacing = "log";
    return scan_values(s);
}

int cmd_derive(CsvWriter& w, const RunConfig&, const SystemParams& p, const ModelOptions& opt) {
    const DerivedParams d = derive(p, opt);
    w.header({"field", "value"});
    for (const auto& [k, v] : derived_fields(d)) w.row_text({k, format_number(v)});
    if (opt.coupling == CouplingModel::SelfConsistent)
        w.row_text({"fixed_point_iterations", std::to_string(d.fixed_point_iterations)});
    w.row_text({"spring_residual", format_number(spring_residual(p, d, opt))});
    return kExitOk;
}

int cmd_spectra(CsvWriter& w, const SystemParams& p, const ModelOptions& opt) {
    const DerivedParams d = derive(p, opt);
    const auto s = build_spectra(d);
    const auto closed = closed_form_S_II(s, d);
    if (d.Gamma > 0) {
        const auto u = unconditional_variances(s, d);
        w.comment("unconditional.V_q", u.V_q);
        w.comment("unconditional.V_p", u.V_p);
        w.comment("unconditional.V_qp", u.V_qp);
    }
    w.header({"omega_rad_s", "S_qq", "S_pp", "S_qp_re", "S_qp_im", "S_II", "S_II_closed", "S_qI_re", "S_qI_im",
              "S_pI_re", "S_pI_im"});
    for (double om : frequency_grid(d.omega_m)) {
        const auto qp = s.S_qp(om), qi = s.S_qI(om), pi = s.S_pI(om);
        w.row({om, std::real(s.S_qq(om)), std::real(s.S_pp(om)), std::real(qp), std::imag(qp), std::real(s.S_II(om)),
               std::real(closed(om)), std::real(qi), std::imag(qi), std::real(pi), std::imag(pi)});
    }
    return kExitOk;
}

int cmd_filters(CsvWriter& w, const SystemParams& p, const ModelOptions& opt) {
    const DerivedParams d = derive(p, opt);
    const auto f = closed_form_filters(d);
    const auto dh = derive_as<HighReal>(p, opt);
    const auto fw = wiener_hopf_filters(build_spectra(dh), dh);
    w.comment("orthogonality_residual", orthogonality_residual(build_spectra(d), f));
    w.header({"omega_rad_s", "Hq_causal_re", "Hq_causal_im", "Hp_causal_re", "Hp_causal_im", "Hq_anticausal_re",
              "Hq_anticausal_im", "Hp_anticausal_re", "Hp_anticausal_im", "wiener_hopf_rel_diff"});
    for (double om : frequency_grid(d.omega_m)) {
        const auto a = f.H_q_causal(om), b = f.H_p_causal(om), c = f.H_q_anticausal(om), e = f.H_p_anticausal(om);
        const HighReal x(om);
        double diff = 0;
        auto acc = [&](const RationalFn<HighReal>& h, std::complex<double> v) {
            const auto ref = to_cdouble<HighReal>(h(x));
            diff = std::max(diff, std::abs(ref - v) / std::max(std::abs(ref), 1e-300));
        };
        acc(fw.H_q_causal, a);
        acc(fw.H_p_causal, b);
        acc(fw.H_q_anticausal, c);
        acc(fw.H_p_anticausal, e);
        w.row({om, a.real(), a.imag(), b.real(), b.imag(), c.real(), c.imag(), e.real(), e.imag(), diff});
    }
    return kExitOk;
}

int cmd_variances(CsvWriter& w, const SystemParams& p, const ModelOptions& opt) {
    const DerivedParams d = derive(p, opt);
    const auto v = causal_variances(d);
    const RelativeEstimate r = relative_estimate(p, opt, BiasCheck::On);
    const auto s = build_spectra(d);
    const double V_qp_rec = record_only_covariance(s, closed_form_filters(d));
    double Vq = kNaN, Vp = kNaN;
    if (d.Gamma > 0) {
        const auto u = unconditional_variances(s, d);
        Vq = u.V_q;
        Vp = u.V_p;
    }
    w.header({"V_q", "V_p", "V_q_c", "V_p_c", "V_qp_c", "V_qp_record", "V_dq", "V_dp", "V_dqdp", "alpha", "beta",
              "ratio_q", "ratio_p"});
    w.row({Vq, Vp, v.V_q_c, v.V_p_c, v.V_qp_c, V_qp_rec, r.V_dq, r.V_dp, r.V_dqdp, r.alpha, r.beta, r.V_dq / v.V_q_c,
           r.V_dp / v.V_p_c});
    return kExitOk;
}

struct ScanRow {
    double axis = 0, theta = 0;
    double V_q_c = kNaN, V_p_c = kNaN, V_dq = kNaN, V_dp = kNaN, alpha = kNaN, beta = kNaN;
    std::string flags;
};

int cmd_scan(CsvWriter& w, const RunConfig& cfg) {
    if (cfg.scan.points < 2) throw ConfigError("scan.points", "scan needs an axis with points >= 2");
    const std::vector<double> axis = scan_values(cfg.scan);
    const int nth = std::max(cfg.scan.theta_points, 1);
    std::vector<ScanRow> rows(axis.size() * nth);
    parallel_for(rows.size(), [&](std::size_t idx) {
        ScanRow& row = rows[idx];
        RunConfig c = cfg;
        row.axis = axis[idx / nth];
        set_axis_value(c, cfg.scan.axis, row.axis);
        if (cfg.scan.theta_points > 0) {
            c.system.theta_rad = (kTwoPi / 2) * double(idx % nth) / nth;
            c.system.theta_mode = "x";
        }
        try {
            const SystemParams p = resolve_system(c);
            row.theta = p.theta;
            const DerivedParams d = derive(p, resolve_options(c));
            const auto v = causal_variances(d);
            const auto s = build_spectra(d);
            const auto ri = relative_integrals(s, closed_form_filters(d));
            const auto b = bias_closed(d);
            row.V_q_c = v.V_q_c;
            row.V_p_c = v.V_p_c;
            row.V_dq = ri.V_dq;
            row.V_dp = ri.V_dp;
            row.alpha = b.alpha;
            row.beta = b.beta;
            const double rq = row.V_dq / row.V_q_c, rp = row.V_dp / row.V_p_c;
            if (!(std::abs(rq - 1) <= 0.01 && std::abs(rp - 1) <= 0.01)) row.flags = "RatioOutsideBand";
        } catch (const Error& e) {
            row.flags = to_string(e.kind());
        }
    });
    w.header({cfg.scan.axis, "theta_rad", "V_q_c", "V_p_c", "V_dq", "V_dp", "ratio_q", "ratio_p", "alpha", "beta",
              "flags"});
    for (const auto& r : rows)
        w.row({r.axis, r.theta, r.V_q_c, r.V_p_c, r.V_dq, r.V_dp, r.V_dq / r.V_q_c, r.V_dp / r.V_p_c, r.alpha, r.beta},
              r.flags, true);
    return kExitOk;
}

int cmd_entangle(CsvWriter& w, const RunConfig& cfg) {
    if (!cfg.system.theta_rad && cfg.system.theta_mode == "opt")
        throw ConfigError("system.theta_mode", "entangle needs a fixed angle (x, y, alpha or theta_rad)");
    const TwoModeConfig tm = resolve_two_mode(cfg);
    std::vector<double> grid = grid_or_default(cfg, "gamma_m_Hz", 1e-4, 1e-1, 31);
    for (double& g : grid) g *= kTwoPi;
    const auto rows = entanglement_ratio_scan(tm, grid, cfg.model);
    w.header({"gamma_m_Hz", "E_N_causal", "E_N_est", "ratio", "flags"});
    for (const auto& r : rows) w.row({r.gamma_m_Hz, r.E_N_causal, r.E_N_est, r.ratio}, r.flags, true);
    return kExitOk;
}

int cmd_squeeze(CsvWriter& w, const RunConfig& cfg) {
    if (cfg.system.theta_rad || (cfg.system.theta_mode != "x" && cfg.system.theta_mode != "opt"))
        throw ConfigError("system.theta_mode", "squeeze supports theta_mode x or opt");
    const AngleMode mode = cfg.system.theta_mode == "opt" ? AngleMode::Opt : AngleMode::X;
    const std::vector<double> grid = grid_or_default(cfg, "P_in_W", 1e-3, 10.0, 41);
    const auto rows =
        squeezing_scan(resolve_system(cfg), grid, mode, detuning_ratio_of(cfg), cfg.model, xi_mode_of(cfg));
    w.header({"P_in_W", "ratio_causal", "ratio_est", "theta_rad", "flags"});
    for (const auto& r : rows) w.row({r.P_in, r.ratio_causal, r.ratio_estimated, r.theta_used}, r.flags, true);
    return kExitOk;
}

int cmd_gas(CsvWriter& w, const RunConfig& cfg) {
    const double g = gas_damping(cfg.gas.P_Pa, cfg.system.T_K, cfg.system.m_kg, cfg.gas.rho_kg_m3);
    w.header({"P_gas_Pa", "T_K", "m_kg", "rho_kg_m3", "Gamma_Hz", "Gamma_rad_s"});
    w.row({cfg.gas.P_Pa, cfg.system.T_K, cfg.system.m_kg, cfg.gas.rho_kg_m3, g, kTwoPi * g});
    return kExitOk;
}

std::string line(const CheckResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS " : "FAIL ") << r.name << ": worst " << format_number(r.worst) << " (limit "
       << format_number(r.limit) << ", " << r.points << " points)";
    if (!r.detail.empty()) os << "; " << r.detail;
    return os.str();
}

}  // namespace

bool run_selftest(std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<CorpusPoint> corpus = make_corpus();
    std::vector<CheckResult> results = {check_bias_identity(corpus), check_filter_equivalence(corpus),
                                        check_integral_table(corpus), check_integral_table_quadrature(corpus)};
    for (auto& r : run_property_suite(corpus)) results.push_back(std::move(r));
    bool ok = true;
    for (const auto& r : results) {
        out << line(r) << '\n';
        ok = ok && r.pass;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << (ok ? "selftest passed" : "selftest FAILED") << " in " << format_number(std::round(secs * 100) / 100)
        << " s\n";
    return ok;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Record-only estimation of causal conditional variances in cavity optomechanics"};
    app.set_version_flag("--version", "wiener-optomech 1.0.0");
    app.require_subcommand(1);
    Overrides o;
    app.add_option("--config", o.config_path, "INI configuration file");
    app.add_option("--out", o.out_path, "write CSV here instead of standard output");
    app.add_option("--axis", o.axis, "scan axis");
    app.add_option("--min", o.min, "scan start");
    app.add_option("--max", o.max, "scan end");
    app.add_option("--points", o.points, "scan points (>= 2)");
    app.add_option("--spacing", o.spacing, "linear or log")->check(CLI::IsMember({"linear", "log"}));
    app.add_option("--theta-mode", o.theta_mode, "x, y, opt or alpha")->check(CLI::IsMember({"x", "y", "opt", "alpha"}));
    app.add_option("--zeta", o.zeta, "power-recycling asymmetry");
    app.add_option("--gamma-m-hz", o.gamma_m_Hz, "feedback damping gamma_m / 2pi");

    const std::vector<std::pair<std::string, std::string>> subs = {
        {"derive", "print all derived parameters"},
        {"spectra", "spectral densities on a frequency grid"},
        {"filters", "causal and anti-causal Wiener filters"},
        {"variances", "conditional, record-only and bias values"},
        {"scan", "record-only / causal variance ratios over one axis (and a theta grid)"},
        {"entangle", "log negativity ratio over gamma_m"},
        {"squeeze", "momentum squeezing ratios over input power"},
        {"gas-damping", "gas damping rate estimate"},
        {"selftest", "run the invariant corpus"}};
    for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    const std::string sub = app.get_subcommands().front()->get_name();

    if (sub == "selftest") return run_selftest(out) ? kExitOk : kExitSelftestFailed;

    RunConfig cfg;
    SystemParams p;
    try {
        cfg = o.config_path.empty() ? RunConfig{} : parse_config_file(o.config_path);
        apply_overrides(cfg, o);
        p = resolve_system(cfg);
        validate(p);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidInput) {
            err << "numerical error: " << e.what() << '\n';
            return kExitNumerical;
        }
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::ostringstream buf;
    CsvWriter w(buf);
    int code = kExitOk;
    try {
        write_header(w, sub, cfg, p);
        const ModelOptions opt = resolve_options(cfg);
        if (sub == "derive") code = cmd_derive(w, cfg, p, opt);
        else if (sub == "spectra") code = cmd_spectra(w, p, opt);
        else if (sub == "filters") code = cmd_filters(w, p, opt);
        else if (sub == "variances") code = cmd_variances(w, p, opt);
        else if (sub == "scan") code = cmd_scan(w, cfg);
        else if (sub == "entangle") code = cmd_entangle(w, cfg);
        else if (sub == "squeeze") code = cmd_squeeze(w, cfg);
        else if (sub == "gas-damping") code = cmd_gas(w, cfg);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    }

    if (o.out_path.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f) {
            err << "config error: --out: cannot write '" << o.out_path << "'\n";
            return kExitConfig;
        }
        f << buf.str();
    }
    return code;
}

}  // namespace wom
