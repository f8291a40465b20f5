#include "wom/checks.hpp"

#include "wom/applications.hpp"
#include "wom/parallel.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace wom {

namespace {

using HP = HighReal;

std::string describe(const CorpusPoint& cp, std::size_t index) {
    std::ostringstream os;
    os << "point " << index << " (" << cp.family << ", Gamma/2pi=" << cp.sys.Gamma / constants::two_pi
       << " Hz, P=" << cp.sys.P_in << " W, theta=" << cp.sys.theta << ")";
    return os.str();
}

// Evaluates metric(point) over the corpus in parallel and reduces to the worst value.
CheckResult reduce_over(const std::string& name, const std::vector<CorpusPoint>& corpus, double limit,
                        const std::function<double(const CorpusPoint&)>& metric) {
    std::vector<double> vals(corpus.size(), 0.0);
    std::vector<std::string> errs(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) {
        try {
            vals[i] = metric(corpus[i]);
        } catch (const std::exception& e) {
            errs[i] = e.what();
            vals[i] = std::numeric_limits<double>::infinity();
        }
    });
    CheckResult r;
    r.name = name;
    r.limit = limit;
    r.points = corpus.size();
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!(vals[i] <= vals[worst_i])) worst_i = i;
    }
    r.worst = corpus.empty() ? 0.0 : vals[worst_i];
    r.pass = r.worst <= limit;
    if (!corpus.empty()) {
        r.detail = "worst at " + describe(corpus[worst_i], worst_i);
        if (!errs[worst_i].empty()) r.detail += ": " + errs[worst_i];
    }
    return r;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> w(n);
    for (int k = 0; k < n; ++k) w[k] = lo * std::pow(hi / lo, n == 1 ? 0.0 : double(k) / (n - 1));
    return w;
}

double rel(const Cx<HP>& a, const Cx<HP>& b) {
    using std::abs;
    const HP s = std::max(abs(a), abs(b));
    return s > 0 ? to_double(HP(abs(a - b) / s)) : 0.0;
}

}  // namespace

double filter_equivalence_error(const SystemParams& p, const ModelOptions& opt, int samples) {
    const auto d = derive_as<HP>(p, opt);
    const auto s = build_spectra(d);
    const auto fc = closed_form_filters(d);
    const auto fw = wiener_hopf_filters(s, d);
    const double wm = to_double(d.omega_m), wt = to_double(d.omega_theta);
    const auto grid = log_grid(1e-3 * std::min(wm, wt), 1e3 * std::max(wm, wt), samples);
    double worst = 0;
    for (double w : grid) {
        const HP x(w);
        worst = std::max(worst, rel(fc.H_q_causal(x), fw.H_q_causal(x)));
        worst = std::max(worst, rel(fc.H_p_causal(x), fw.H_p_causal(x)));
        worst = std::max(worst, rel(fc.H_q_anticausal(x), fw.H_q_anticausal(x)));
        worst = std::max(worst, rel(fc.H_p_anticausal(x), fw.H_p_anticausal(x)));
    }
    return worst;
}

double projection_completeness_error(const SystemParams& p, const ModelOptions& opt) {
    const auto d = derive_as<HP>(p, opt);
    const auto s = build_spectra(d);
    const auto fac = spectral_factorize(s.S_II);
    const RationalFn<HP> f = s.S_qI * fac.inverse_anti_causal();
    const RationalFn<HP> plus = causal_part(f), minus = anti_causal_part(f);
    const double wm = to_double(d.omega_m);
    double worst = 0;
    for (double w : log_grid(1e-3 * wm, 1e3 * wm, 64)) {
        for (double sgn : {-1.0, 1.0}) {
            const HP x(sgn * w);
            worst = std::max(worst, rel(plus(x) + minus(x), f(x)));
        }
    }
    return worst;
}

double factorization_symmetry_error(const SystemParams& p, const ModelOptions& opt) {
    const auto d = derive_as<HP>(p, opt);
    const auto s = build_spectra(d);
    const auto fac = spectral_factorize(s.S_II);
    const double wm = to_double(d.omega_m);
    double worst = 0;
    for (double w : log_grid(1e-3 * wm, 1e3 * wm, 64)) {
        for (double sgn : {-1.0, 1.0}) {
            const HP x(sgn * w);
            worst = std::max(worst, rel(fac.anti_causal(x), conj(fac.causal(x))));
        }
    }
    return worst;
}

DissipationSlopes bias_dissipation_slopes(const SystemParams& p, const ModelOptions& opt, int steps, double factor) {
    std::vector<double> lg, la, lb;
    SystemParams q = p;
    // Start where thermal force noise is below 1e-3 of the back-action noise; above that the
    // effective parameters themselves depend on Gamma and beta scales as Gamma^{3/2}.
    const DerivedParams d0 = derive(p, opt);
    const double start = std::min(p.Gamma, 1e-3 * d0.omega_m * d0.xi / (2 * (2 * d0.n_th + 1)));
    for (int k = 0; k < steps; ++k) {
        q.Gamma = start / std::pow(factor, k);
        const auto b = bias_closed(derive_as<HP>(q, opt));
        lg.push_back(std::log(q.Gamma));
        la.push_back(std::log(std::abs(to_double(b.alpha))));
        lb.push_back(std::log(std::abs(to_double(b.beta))));
    }
    auto slope = [&](const std::vector<double>& y) {
        const double n = static_cast<double>(y.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            sx += lg[i];
            sy += y[i];
            sxx += lg[i] * lg[i];
            sxy += lg[i] * y[i];
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    return {slope(la), slope(lb)};
}

CheckResult check_bias_identity(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("bias identity (V_d - V^c = alpha, beta)", corpus, tol, [](const CorpusPoint& cp) {
        const BiasIdentityReport r = bias_identity(cp.sys, cp.opt);
        return std::max(r.rel_err_alpha, r.rel_err_beta);
    });
}

CheckResult check_filter_equivalence(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("closed-form vs Wiener-Hopf filters", corpus, tol,
                       [](const CorpusPoint& cp) { return filter_equivalence_error(cp.sys, cp.opt); });
}

CheckResult check_integral_table(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("integral table closed forms vs residues", corpus, tol, [](const CorpusPoint& cp) {
        double worst = 0;
        for (const auto& row : integral_table(cp.sys, cp.opt, 1.0)) worst = std::max(worst, row.rel_err);
        return worst;
    });
}

CheckResult check_integral_table_quadrature(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("integral table closed forms vs quadrature", corpus, tol, [](const CorpusPoint& cp) {
        const DerivedParams d = derive(cp.sys, cp.opt);
        const auto dh = derive_as<HP>(cp.sys, cp.opt);
        const auto closed = integral_table_closed(dh);
        IntegrateOptions o;
        o.disagreement_tol = 1.0;
        o.max_intervals = 4000;
        double worst = 0;
        for (int m = 1; m <= 2; ++m) {
            for (int k = 1; k <= 4; ++k) {
                const auto rep = integrate_real_line_report(integral_table_integrand(d, k, m), o);
                const std::complex<double> want = to_cdouble<HP>(closed[(m - 1) * 4 + (k - 1)]);
                worst = std::max(worst, std::abs(rep.quad.value - want) / std::abs(want));
            }
        }
        return worst;
    });
}

CheckResult check_projection_completeness(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("causal + anti-causal projection completeness", corpus, tol, [](const CorpusPoint& cp) {
        return projection_completeness_error(cp.sys, cp.opt);
    });
}

CheckResult check_factorization_symmetry(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("factorization conjugate symmetry", corpus, tol, [](const CorpusPoint& cp) {
        return factorization_symmetry_error(cp.sys, cp.opt);
    });
}

CheckResult check_orthogonality(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("orthogonality residual", corpus, tol, [](const CorpusPoint& cp) {
        const auto d = derive_as<HP>(cp.sys, cp.opt);
        const auto s = build_spectra(d);
        return orthogonality_residual(s, closed_form_filters(d));
    });
}

CheckResult check_cross_term_vanishes(const std::vector<CorpusPoint>& corpus, double tol) {
    return reduce_over("V_dqdp = 0", corpus, tol, [](const CorpusPoint& cp) {
        const auto d = derive_as<HP>(cp.sys, cp.opt);
        const auto ri = relative_integrals(build_spectra(d), closed_form_filters(d));
        using std::abs;
        using std::sqrt;
        return to_double(HP(abs(ri.V_dqdp) / sqrt(ri.V_dq * ri.V_dp)));
    });
}

CheckResult check_dissipation_slopes(double tol) {
    std::vector<SystemParams> bases = {ratio_map_system(), squeeze_system()};
    bases[0].theta = 0.3;
    bases[1].theta = 1.2;
    CheckResult r;
    r.name = "alpha, beta -> 0 as Gamma -> 0 (log-log slope 1)";
    r.limit = tol;
    r.points = bases.size();
    std::ostringstream os;
    for (const auto& b : bases) {
        const DissipationSlopes s = bias_dissipation_slopes(b, {});
        r.worst = std::max({r.worst, std::abs(s.alpha_slope - 1), std::abs(s.beta_slope - 1)});
        os << "slopes " << s.alpha_slope << ", " << s.beta_slope << "; ";
    }
    r.pass = r.worst <= tol;
    r.detail = os.str();
    return r;
}

CheckResult check_symmetric_modes(double zeta) {
    TwoModeConfig cfg;
    cfg.base = two_mode_system();
    cfg.zeta = zeta;
    cfg.gamma_m = constants::two_pi * 6.9e-3;
    cfg.detuning_ratio = 0.2;
    CheckResult r;
    r.name = "zeta = 1 gives V12 = 0 exactly";
    r.limit = 0;
    r.points = 2;
    for (CovMethod m : {CovMethod::Causal, CovMethod::MeasurementBased}) {
        const TwoModeResult t = two_mode_covariance(cfg, m);
        r.worst = std::max(r.worst, t.cov.V12().cwiseAbs().maxCoeff());
    }
    r.pass = r.worst == 0.0;
    r.detail = "max |V12| entry";
    return r;
}

CheckResult check_heisenberg(const std::vector<CorpusPoint>& corpus) {
    CheckResult r = reduce_over("V_q^c V_p^c - (V_qp^c)^2 >= 1 (reported)", corpus, 0.0, [](const CorpusPoint& cp) {
        const auto v = causal_variances_closed(derive(cp.sys, cp.opt));
        return std::max(0.0, 1.0 - (v.V_q_c * v.V_p_c - v.V_qp_c * v.V_qp_c));
    });
    r.detail = (r.pass ? "holds on corpus; " : "violated; ") + r.detail;
    r.pass = true;
    return r;
}

std::vector<CheckResult> run_property_suite(const std::vector<CorpusPoint>& corpus) {
    return {check_projection_completeness(corpus), check_factorization_symmetry(corpus),
            check_orthogonality(corpus),           check_cross_term_vanishes(corpus),
            check_dissipation_slopes(),            check_symmetric_modes(),
            check_heisenberg(corpus)};
}

}  // namespace wom
