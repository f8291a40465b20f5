#pragma once

#include "wom/filters.hpp"

#include <array>

namespace wom {

template <class R>
struct ConditionalVariancesT {
    R V_q_c, V_p_c, V_qp_c;
};
using ConditionalVariances = ConditionalVariancesT<Real>;

template <class R>
struct BiasT {
    R alpha, beta;
};

template <class R>
struct RelativeEstimateT {
    R V_dq, V_dp, V_dqdp;
    R alpha, beta;
};
using RelativeEstimate = RelativeEstimateT<Real>;

template <class R>
void require_lambda(const DerivedParamsT<R>& d) {
    if (!(d.lambda_theta > 0)) throw Error("estimation", ErrorKind::ZeroGain, "measurement rate lambda_theta is zero");
}

template <class R>
ConditionalVariancesT<R> causal_variances_closed(const DerivedParamsT<R>& d) {
    require_lambda(d);
    const R wm = d.omega_m, wt = d.omega_theta, gt = d.gamma_theta, G = d.Gamma, lam = d.lambda_theta;
    const R base = (gt - G) / lam;
    return {base, base * ((wt / wm) * (wt / wm) - G * (gt - G) / (2 * wm * wm)),
            (gt - G) * (gt - G) / (2 * lam * wm)};
}

// G = gamma_theta^2 omega_m^2 + Gamma^2 omega_theta^2 + (omega_theta^2 - omega_m^2)^2
//     + gamma_theta Gamma (omega_theta^2 + omega_m^2)
template <class R>
R bias_G(const DerivedParamsT<R>& d) {
    const R wm2 = d.omega_m * d.omega_m, wt2 = d.omega_theta * d.omega_theta;
    const R gt = d.gamma_theta, G = d.Gamma;
    return gt * gt * wm2 + G * G * wt2 + (wt2 - wm2) * (wt2 - wm2) + gt * G * (wt2 + wm2);
}

template <class R>
BiasT<R> bias_closed(const DerivedParamsT<R>& d) {
    require_lambda(d);
    const R wm2 = d.omega_m * d.omega_m, wt2 = d.omega_theta * d.omega_theta;
    const R g = d.gamma_theta, G = d.Gamma, lam = d.lambda_theta;
    const R GG = bias_G(d);
    const R a_num = G * G * wt2 + G * g * wm2 - G * g * wt2 - g * g * wm2 + (wm2 - wt2) * (wm2 - wt2);
    const R g2 = g * g, G2 = G * G;
    const R wm4 = wm2 * wm2, wt4 = wt2 * wt2;
    const R b_num = G2 * G2 * wt2 + G2 * G * g * wm2 + G2 * G * g * wt2 + G2 * g2 * wm2 - 5 * G2 * g2 * wt2 +
                    G2 * wm4 + 3 * G2 * wt4 - 5 * G * g2 * g * wm2 + 3 * G * g2 * g * wt2 - 6 * G * g * wm4 +
                    4 * G * g * wm2 * wt2 + 2 * G * g * wt4 + 3 * g2 * g2 * wm2 + 5 * g2 * wm4 -
                    4 * g2 * wm2 * wt2 - 5 * g2 * wt4 + 2 * wm4 * wm2 - 2 * wm4 * wt2 - 2 * wm2 * wt4 +
                    2 * wt4 * wt2;
    return {2 * G * a_num / (GG * lam), G * b_num / (2 * wm2 * GG * lam)};
}

// Spectral-integral versions (residue sums in R).
template <class R>
ConditionalVariancesT<R> causal_variances_integral(const DerivedParamsT<R>& d) {
    using std::real;
    require_lambda(d);
    const SpectrumSet<R> s = build_spectra(d);
    const FilterPair<R> f = closed_form_filters(d);
    ConditionalVariancesT<R> v;
    v.V_q_c = real(integrate_residues(s.S_qq - abs2(f.H_q_causal) * s.S_II));
    v.V_p_c = real(integrate_residues(s.S_pp - abs2(f.H_p_causal) * s.S_II));
    v.V_qp_c = real(integrate_residues(real_part(s.S_qp - f.H_q_causal * f.H_p_causal.conj_reflect() * s.S_II)));
    return v;
}

// Record-only off-diagonal: -int Re[H_q H_p* S_II].
template <class R>
R record_only_covariance(const SpectrumSet<R>& s, const FilterPair<R>& f) {
    using std::real;
    return -real(integrate_residues(real_part(f.H_q_causal * f.H_p_causal.conj_reflect() * s.S_II)));
}

template <class R>
struct RelativeIntegrals {
    R V_dq, V_dp, V_dqdp;
};

// V_dq = int |H_q^-> - H_q^<-|^2 S_II / 2, and likewise for p; V_dqdp from the cross term.
template <class R>
RelativeIntegrals<R> relative_integrals(const SpectrumSet<R>& s, const FilterPair<R>& f) {
    using C = Cx<R>;
    using std::real;
    const RationalFn<R> dq = f.H_q_causal - f.H_q_anticausal;
    const RationalFn<R> dp = f.H_p_causal - f.H_p_anticausal;
    RelativeIntegrals<R> r;
    r.V_dq = real(integrate_residues(C(R(0.5)) * abs2(dq) * s.S_II));
    r.V_dp = real(integrate_residues(C(R(0.5)) * abs2(dp) * s.S_II));
    r.V_dqdp = real(integrate_residues(C(R(0.5)) * real_part(dq * dp.conj_reflect()) * s.S_II));
    return r;
}

struct IntegralTableRow {
    int k = 0, m = 0;
    std::complex<double> closed, integral;
    double rel_err = 0;
};

// int omega^k d omega / 2pi / (|F|^2 F'^m), k = 1..4, m = 1, 2.
template <class R>
std::array<Cx<R>, 8> integral_table_closed(const DerivedParamsT<R>& d) {
    using C = Cx<R>;
    const R wm = d.omega_m, wm2 = wm * wm, wt2 = d.omega_theta * d.omega_theta;
    const R g = d.gamma_theta, G = d.Gamma;
    const R GG = bias_G(d);
    const R s1 = 1 / (2 * G * GG), s2 = 1 / (2 * G * GG * GG);
    const C i(R(0), R(1));
    std::array<C, 8> out;
    out[0] = i * C((G + g) * s1);
    out[1] = C((wt2 - wm2) * s1);
    out[2] = i * C((G * wt2 + g * wm2) * s1);
    out[3] = C(-(G * G * wt2 + G * g * wm2 + wm2 * wm2 - wm2 * wt2) * s1);
    out[4] = i * C((G + g) * (G * G + G * g - 2 * wm2 + 2 * wt2) * s2);
    out[5] = C(((wt2 - wm2) * (wt2 - wm2) - wm2 * (G + g) * (G + g)) * s2);
    out[6] = i * C((wt2 - wm2) * ((G + 2 * g) * wm2 + G * wt2) * s2);
    out[7] = C(-(G * wt2 + g * wm2 - wm2 * wm + wm * wt2) * (G * wt2 + g * wm2 + wm2 * wm - wm * wt2) * s2);
    return out;
}

template <class R>
RationalFn<R> integral_table_integrand(const DerivedParamsT<R>& d, int k, int m) {
    using C = Cx<R>;
    std::vector<C> mono(k + 1, C(R(0)));
    mono[k] = C(R(1));
    const Poly<R> F = susceptibility_poly<R>(d.omega_m, d.Gamma);
    const Poly<R> Fp = susceptibility_poly<R>(d.omega_theta, d.gamma_theta);
    std::vector<Poly<R>> den = {F, F.conj_reflect()};
    for (int j = 0; j < m; ++j) den.push_back(Fp);
    return RationalFn<R>(Poly<R>(mono), den);
}

enum class BiasRegime { PhaseY, AmplitudeX, OptimalAngle };

struct BiasApproximation {
    double alpha_approx = 0, beta_approx = 0;
    bool regime_valid = false;  // false corresponds to a RegimeViolated warning
    std::string note;
};

// ---- binary64 entry points; implemented in estimation.cpp ----

ConditionalVariances causal_variances(const DerivedParams& d);

// Closed form vs extended-precision spectral integral; throws OracleDisagreement beyond rel_tol.
ConditionalVariances causal_variances_checked(const SystemParams& p, const ModelOptions& opt,
                                              double rel_tol = 1e-8);

enum class BiasCheck { Off, On };

// V_dq, V_dp, V_dqdp are record-only integrals; alpha, beta are the closed forms. With BiasCheck::On
// the identities V_dq - V_q^c = alpha, V_dp - V_p^c = beta are verified in extended precision to
// 1e-7 relative (BiasMismatch otherwise).
RelativeEstimate relative_estimate(const SystemParams& p, const ModelOptions& opt, BiasCheck check = BiasCheck::On);

struct BiasIdentityReport {
    double alpha = 0, beta = 0;
    double alpha_from_integral = 0, beta_from_integral = 0;
    double rel_err_alpha = 0, rel_err_beta = 0;
    double V_dqdp = 0;
};
BiasIdentityReport bias_identity(const SystemParams& p, const ModelOptions& opt);

BiasApproximation bias_approximations(const SystemParams& p, const DerivedParams& d, BiasRegime regime);

// Rows k = 1..4 for m = 1, then m = 2. Throws OracleDisagreement when any row exceeds rel_tol.
std::array<IntegralTableRow, 8> integral_table(const SystemParams& p, const ModelOptions& opt, double rel_tol = 1e-8);

}  // namespace wom
