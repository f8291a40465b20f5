#pragma once

#include "wom/params.hpp"
#include "wom/ratfun.hpp"

namespace wom {

template <class R>
struct SpectrumSet {
    RationalFn<R> S_qq, S_pp, S_qp, S_II, S_qI, S_pI;
    RationalFn<R> F;   // 1/F(omega): mechanical susceptibility carrier
    Poly<R> F_poly;    // F(omega) = omega_m^2 - i Gamma omega - omega^2
    Poly<R> Fp_poly;   // F'(omega) = omega_theta^2 - i gamma_theta omega - omega^2
};

template <class R>
Poly<R> susceptibility_poly(const R& w0, const R& damping) {
    using C = Cx<R>;
    return Poly<R>({C(w0 * w0), C(R(0), -damping), C(R(-1))});
}

template <class R>
SpectrumSet<R> build_spectra(const DerivedParamsT<R>& d) {
    using C = Cx<R>;
    using P = Poly<R>;
    using RF = RationalFn<R>;
    SpectrumSet<R> s;
    s.F_poly = susceptibility_poly<R>(d.omega_m, d.Gamma);
    s.Fp_poly = susceptibility_poly<R>(d.omega_theta, d.gamma_theta);
    const P Fc = s.F_poly.conj_reflect();
    const P iw_over_wm({C(R(0)), C(R(0), R(1) / d.omega_m)});
    const P w2_over_wm2({C(R(0)), C(R(0)), C(R(1) / (d.omega_m * d.omega_m))});
    const R wm = d.omega_m, c = d.c_theta, L = d.L_theta;

    s.F = RF(P::constant(C(R(1))), {s.F_poly});
    s.S_qq = RF(P::constant(C(wm * wm * d.n_bar)), {s.F_poly, Fc});
    s.S_qp = iw_over_wm * s.S_qq;
    s.S_pp = w2_over_wm2 * s.S_qq;
    // S_qI = c S_qq + omega_m L / F over the common denominator F F*.
    s.S_qI = RF(P::constant(C(c * wm * wm * d.n_bar)) + C(wm * L) * Fc, {s.F_poly, Fc});
    s.S_pI = C(R(-1)) * (iw_over_wm * s.S_qI);
    // S_II = 2c Re[S_qI] - c^2 S_qq + M = (c^2 wm^2 nbar + c wm L (F + F*) + M F F*) / (F F*).
    const P num = P::constant(C(c * c * wm * wm * d.n_bar)) + C(c * wm * L) * (s.F_poly + Fc) +
                  C(d.M_theta) * (s.F_poly * Fc);
    s.S_II = RF(num, {s.F_poly, Fc});
    return s;
}

// M |F'|^2 / |F|^2: the closed-form factorization of S_II.
template <class R>
RationalFn<R> closed_form_S_II(const SpectrumSet<R>& s, const DerivedParamsT<R>& d) {
    using C = Cx<R>;
    return RationalFn<R>(C(d.M_theta) * (s.Fp_poly * s.Fp_poly.conj_reflect()),
                         {s.F_poly, s.F_poly.conj_reflect()});
}

template <class R>
struct UnconditionalVariances {
    R V_q, V_p, V_qp;
    // Residue-integral values used for the two-way check.
    R V_q_integral, V_p_integral, V_qp_integral;
};

template <class R>
UnconditionalVariances<R> unconditional_variances(const SpectrumSet<R>& s, const DerivedParamsT<R>& d,
                                                  const IntegrateOptions& opt = {}) {
    using std::abs;
    using std::imag;
    using std::real;
    if (!(d.Gamma > 0)) throw Error("spectra", ErrorKind::Divergent, "unconditional variances diverge at Gamma = 0");
    UnconditionalVariances<R> u;
    u.V_q = d.n_bar / (2 * d.Gamma);
    u.V_p = u.V_q;
    u.V_qp = R(0);
    u.V_q_integral = real(integrate_real_line(s.S_qq, opt));
    u.V_p_integral = real(integrate_real_line(s.S_pp, opt));
    u.V_qp_integral = real(integrate_real_line(real_part(s.S_qp), opt));
    const R tol(1e-9);
    if (abs(u.V_q_integral - u.V_q) > tol * u.V_q || abs(u.V_p_integral - u.V_p) > tol * u.V_p ||
        abs(u.V_qp_integral) > tol * u.V_q) {
        throw Error("spectra", ErrorKind::OracleDisagreement, "closed-form and integral variances disagree");
    }
    return u;
}

// Dense log grid over [1e-3, 1e3] * omega_m at `per_decade` points per decade, plus omega = 0.
std::vector<double> frequency_grid(double omega_m, int per_decade = 64);

}  // namespace wom
