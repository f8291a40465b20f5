#include "wom/estimation.hpp"

#include "wom/applications.hpp"

#include <sstream>

namespace wom {

namespace {

double rel_err(double got, double want, double floor = 1e-30) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

}  // namespace

ConditionalVariances causal_variances(const DerivedParams& d) { return causal_variances_closed(d); }

ConditionalVariances causal_variances_checked(const SystemParams& p, const ModelOptions& opt, double rel_tol) {
    const DerivedParams d = derive(p, opt);
    const ConditionalVariances v = causal_variances_closed(d);
    const auto dh = derive_as<HighReal>(p, opt);
    const auto vi = causal_variances_integral(dh);
    const auto vc = causal_variances_closed(dh);
    const double e_q = rel_err(to_double(vi.V_q_c), to_double(vc.V_q_c));
    const double e_p = rel_err(to_double(vi.V_p_c), to_double(vc.V_p_c));
    const double e_qp = rel_err(to_double(vi.V_qp_c), to_double(vc.V_qp_c));
    if (e_q > rel_tol || e_p > rel_tol || e_qp > rel_tol) {
        std::ostringstream os;
        os << "conditional variances: closed form vs integral rel errors " << e_q << ", " << e_p << ", " << e_qp;
        throw Error("estimation", ErrorKind::OracleDisagreement, os.str());
    }
    return v;
}

BiasIdentityReport bias_identity(const SystemParams& p, const ModelOptions& opt) {
    const auto d = derive_as<HighReal>(p, opt);
    const auto s = build_spectra(d);
    const auto f = closed_form_filters(d);
    const auto ri = relative_integrals(s, f);
    const auto vc = causal_variances_closed(d);
    const auto b = bias_closed(d);
    using std::abs;
    const HighReal a_int = ri.V_dq - vc.V_q_c, b_int = ri.V_dp - vc.V_p_c;
    BiasIdentityReport r;
    r.alpha = to_double(b.alpha);
    r.beta = to_double(b.beta);
    r.alpha_from_integral = to_double(a_int);
    r.beta_from_integral = to_double(b_int);
    r.rel_err_alpha = to_double(HighReal(abs(a_int - b.alpha) / std::max(abs(b.alpha), HighReal(1e-300))));
    r.rel_err_beta = to_double(HighReal(abs(b_int - b.beta) / std::max(abs(b.beta), HighReal(1e-300))));
    r.V_dqdp = to_double(ri.V_dqdp);
    return r;
}

RelativeEstimate relative_estimate(const SystemParams& p, const ModelOptions& opt, BiasCheck check) {
    const DerivedParams d = derive(p, opt);
    require_lambda(d);
    const auto s = build_spectra(d);
    const auto f = closed_form_filters(d);
    const auto ri = relative_integrals(s, f);
    const auto b = bias_closed(d);
    RelativeEstimate r{ri.V_dq, ri.V_dp, ri.V_dqdp, b.alpha, b.beta};
    if (check == BiasCheck::On) {
        const BiasIdentityReport rep = bias_identity(p, opt);
        if (rep.rel_err_alpha > 1e-7 || rep.rel_err_beta > 1e-7) {
            std::ostringstream os;
            os << "bias identity violated: alpha rel err " << rep.rel_err_alpha << ", beta rel err "
               << rep.rel_err_beta;
            throw Error("estimation", ErrorKind::BiasMismatch, os.str());
        }
        r.V_dqdp = rep.V_dqdp;
    }
    return r;
}

BiasApproximation bias_approximations(const SystemParams& p, const DerivedParams& d, BiasRegime regime) {
    const double half_pi = constants::two_pi / 4;
    const bool small_damping = p.Gamma < 1e-2 * p.Omega;
    BiasApproximation out;
    std::ostringstream note;
    switch (regime) {
        case BiasRegime::PhaseY: {
            const double C = 4 * d.g_m * d.g_m / (p.Gamma * p.kappa);
            const double Q = p.Omega / p.Gamma;
            out.alpha_approx = 1 / (2 * C);
            out.beta_approx = -4 / Q;
            const bool angle = std::abs(p.theta - half_pi) < 1e-9;
            out.regime_valid = angle && p.Delta == 0 && small_damping;
            if (!angle) note << "theta != pi/2; ";
            if (p.Delta != 0) note << "Delta != 0; ";
            if (!small_damping) note << "Gamma not << Omega; ";
            break;
        }
        case BiasRegime::AmplitudeX: {
            const double Qm = d.omega_m / p.Gamma;
            out.alpha_approx = d.xi / (2 * Qm);
            out.beta_approx = -d.xi / Qm;
            const bool angle = std::abs(p.theta) < 1e-9;
            const bool detuning = 4 * p.Delta * p.Delta <= 0.25 * p.kappa * p.kappa && p.Delta > 0;
            const bool strong = detuning && std::abs(d.xi - p.kappa / p.Delta) < 0.1 * p.kappa / p.Delta;
            out.regime_valid = angle && detuning && strong;
            if (!angle) note << "theta != 0; ";
            if (!detuning) note << "kappa^2 >> Delta^2 > 0 violated; ";
            if (!strong) note << "xi not near kappa/Delta (weak drive); ";
            break;
        }
        case BiasRegime::OptimalAngle: {
            const double Q = p.Omega / p.Gamma;
            out.alpha_approx = 2 * d.xi / Q;
            out.beta_approx = d.xi / Q;
            const double th = optimal_angle(d, XiEffMode::NbarOverOmegaM);
            const bool angle = std::abs(p.theta - th) < 1e-6;
            out.regime_valid = angle && p.Delta == 0 && small_damping;
            if (!angle) note << "theta != theta_opt; ";
            if (p.Delta != 0) note << "Delta != 0; ";
            if (!small_damping) note << "Gamma not << Omega; ";
            break;
        }
    }
    out.note = note.str();
    return out;
}

std::array<IntegralTableRow, 8> integral_table(const SystemParams& p, const ModelOptions& opt, double rel_tol) {
    if (!(p.Gamma > 0)) throw Error("estimation", ErrorKind::InvalidInput, "integral table integrals need Gamma > 0");
    const auto d = derive_as<HighReal>(p, opt);
    const auto closed = integral_table_closed(d);
    std::array<IntegralTableRow, 8> rows;
    for (int m = 1; m <= 2; ++m) {
        for (int k = 1; k <= 4; ++k) {
            const int idx = (m - 1) * 4 + (k - 1);
            IntegralTableRow& r = rows[idx];
            r.k = k;
            r.m = m;
            r.closed = to_cdouble<HighReal>(closed[idx]);
            r.integral = to_cdouble<HighReal>(integrate_residues(integral_table_integrand(d, k, m)));
            r.rel_err = std::abs(r.integral - r.closed) / std::max(std::abs(r.closed), 1e-300);
            if (r.rel_err > rel_tol) {
                std::ostringstream os;
                os << "integral table row k=" << k << " m=" << m << ": closed " << r.closed << " vs integral "
                   << r.integral;
                throw Error("estimation", ErrorKind::OracleDisagreement, os.str());
            }
        }
    }
    return rows;
}

}  // namespace wom
