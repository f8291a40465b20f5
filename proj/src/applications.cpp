#include "wom/applications.hpp"

#include "wom/parallel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace wom {

namespace {

constexpr const char* kModule = "applications";

double det2(const Eigen::Matrix2d& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

std::string flag_of(const Error& e) { return to_string(e.kind()); }

}  // namespace

double optimal_offset(const DerivedParams& d, XiEffMode mode) {
    const double xi_eff = mode == XiEffMode::NbarOverOmegaM ? d.n_bar / d.omega_m : d.xi;
    return -std::atan(2 / xi_eff) / 2;
}

double optimal_angle(const DerivedParams& d, XiEffMode mode) {
    const double pi = constants::two_pi / 2;
    double th = d.alpha + optimal_offset(d, mode);
    th = std::fmod(th, pi);
    if (th < 0) th += pi;
    if (th >= pi) th -= pi;
    return th;
}

ModeSetup mode_system(const TwoModeConfig& cfg, Mode mode, const ModelOptions& base_opt) {
    if (!(cfg.zeta > 0)) throw Error(kModule, ErrorKind::InvalidInput, "zeta must be > 0");
    if (!(cfg.gamma_m > 0)) throw Error(kModule, ErrorKind::InvalidInput, "gamma_m must be > 0");
    if (cfg.gamma_m < cfg.base.Gamma) throw Error(kModule, ErrorKind::InvalidInput, "gamma_m must be >= Gamma");
    ModeSetup s{cfg.base, base_opt};
    s.sys.kappa = mode == Mode::Plus ? cfg.base.kappa / cfg.zeta : cfg.base.kappa;
    s.sys.Delta = cfg.detuning_ratio * s.sys.kappa;
    // omega_m does not depend on the damping, so resolve it first for the effective occupation.
    const double wm = derive(s.sys, base_opt).omega_m;
    const double T_eff = cfg.base.Gamma * cfg.base.T / cfg.gamma_m;
    s.opt.n_th_override = constants::k_B * T_eff * cfg.base.Omega / (constants::hbar * wm * wm);
    s.sys.Gamma = cfg.gamma_m;
    return s;
}

DerivedParams mode_params(const TwoModeConfig& cfg, Mode mode, const ModelOptions& base_opt) {
    const ModeSetup s = mode_system(cfg, mode, base_opt);
    return derive(s.sys, s.opt);
}

Eigen::Matrix4d beam_splitter() {
    Eigen::Matrix4d S;
    S << 1, 0, 1, 0,
         0, 1, 0, 1,
         1, 0, -1, 0,
         0, 1, 0, -1;
    return S / std::sqrt(2.0);
}

// Written out blockwise so that identical modes give an exactly zero V12.
CovMatrix4 assemble_two_mode(const Eigen::Matrix2d& V_plus, const Eigen::Matrix2d& V_minus) {
    CovMatrix4 out;
    const Eigen::Matrix2d sum = (V_plus + V_minus) / 2;
    const Eigen::Matrix2d diff = (V_plus - V_minus) / 2;
    out.V.block<2, 2>(0, 0) = sum;
    out.V.block<2, 2>(2, 2) = sum;
    out.V.block<2, 2>(0, 2) = diff;
    out.V.block<2, 2>(2, 0) = diff;
    return out;
}

SingleModeCovariances single_mode_covariances(const SystemParams& sys, const ModelOptions& opt) {
    const DerivedParams d = derive(sys, opt);
    require_lambda(d);
    const auto s = build_spectra(d);
    const auto f = closed_form_filters(d);
    const auto vc = causal_variances_closed(d);
    const auto ri = relative_integrals(s, f);
    const auto b = bias_closed(d);
    const double V_qp = record_only_covariance(s, f);
    SingleModeCovariances out;
    out.causal << vc.V_q_c, V_qp, V_qp, vc.V_p_c;
    out.measured << ri.V_dq, V_qp, V_qp, ri.V_dp;
    out.V_qp_closed = vc.V_qp_c;
    out.alpha = b.alpha;
    out.beta = b.beta;
    return out;
}

TwoModeResult two_mode_covariance(const TwoModeConfig& cfg, CovMethod method, const ModelOptions& opt) {
    const ModeSetup plus = mode_system(cfg, Mode::Plus, opt);
    const ModeSetup minus = mode_system(cfg, Mode::Minus, opt);
    const SingleModeCovariances cp = single_mode_covariances(plus.sys, plus.opt);
    const SingleModeCovariances cm = single_mode_covariances(minus.sys, minus.opt);
    TwoModeResult r;
    r.cov = method == CovMethod::Causal ? assemble_two_mode(cp.causal, cm.causal)
                                        : assemble_two_mode(cp.measured, cm.measured);
    r.asymmetry_degenerate = cfg.zeta == 1.0;
    return r;
}

double log_negativity(const CovMatrix4& V) {
    const double sigma = det2(V.V11()) + det2(V.V22()) - 2 * det2(V.V12());
    const double det = V.V.determinant();
    const double disc = sigma * sigma - 4 * det;
    if (disc < 0) {
        std::ostringstream os;
        os << "Sigma^2 - 4 det V = " << disc << " < 0";
        throw Error(kModule, ErrorKind::ComplexBranch, os.str());
    }
    const double nu2 = (sigma - std::sqrt(disc)) / 2;
    if (!(nu2 > 0)) throw Error(kModule, ErrorKind::ComplexBranch, "smallest symplectic eigenvalue is not positive");
    return -0.5 * std::log2(nu2);
}

std::vector<EntanglementRow> entanglement_ratio_scan(const TwoModeConfig& cfg, const std::vector<double>& gamma_m_grid,
                                                     const ModelOptions& opt) {
    std::vector<EntanglementRow> rows(gamma_m_grid.size());
    parallel_for(gamma_m_grid.size(), [&](std::size_t i) {
        EntanglementRow& row = rows[i];
        TwoModeConfig c = cfg;
        c.gamma_m = gamma_m_grid[i];
        row.gamma_m_Hz = c.gamma_m / constants::two_pi;
        try {
            const TwoModeResult rc = two_mode_covariance(c, CovMethod::Causal, opt);
            const TwoModeResult re = two_mode_covariance(c, CovMethod::MeasurementBased, opt);
            row.E_N_causal = log_negativity(rc.cov);
            row.E_N_est = log_negativity(re.cov);
            row.ratio = row.E_N_est / row.E_N_causal;
            if (rc.asymmetry_degenerate) row.flags = "AsymmetryDegenerate";
        } catch (const Error& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.E_N_causal = row.E_N_est = row.ratio = nan;
            row.flags = flag_of(e);
        }
    });
    return rows;
}

std::vector<SqueezeScanPoint> squeezing_scan(const SystemParams& base, const std::vector<double>& P_grid,
                                             AngleMode angle_mode, double detuning_ratio, const ModelOptions& opt,
                                             XiEffMode xi_mode) {
    std::vector<SqueezeScanPoint> rows(P_grid.size());
    parallel_for(P_grid.size(), [&](std::size_t i) {
        SqueezeScanPoint& row = rows[i];
        SystemParams p = base;
        p.P_in = P_grid[i];
        p.Delta = detuning_ratio * p.kappa;
        p.theta = 0;
        row.P_in = p.P_in;
        try {
            ModelOptions o = opt;
            if (angle_mode == AngleMode::Opt) {
                const DerivedParams d0 = derive(p, opt);
                p.theta = optimal_angle(d0, xi_mode);
                o.theta_offset = optimal_offset(d0, xi_mode);
            }
            row.theta_used = p.theta;
            const SingleModeCovariances c = single_mode_covariances(p, o);
            row.ratio_causal = c.causal(1, 1) / c.causal(0, 0);
            row.ratio_estimated = c.measured(1, 1) / c.measured(0, 0);
        } catch (const Error& e) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            row.ratio_causal = row.ratio_estimated = nan;
            row.flags = flag_of(e);
        }
    });
    return rows;
}

}  // namespace wom
