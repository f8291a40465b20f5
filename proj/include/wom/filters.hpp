#pragma once

#include "wom/spectra.hpp"

namespace wom {

template <class R>
struct FilterPair {
    RationalFn<R> H_q_causal, H_p_causal, H_q_anticausal, H_p_anticausal;
};

template <class R>
void require_gain(const DerivedParamsT<R>& d) {
    using std::abs;
    using std::sqrt;
    // Below a few ulps of sin(theta - alpha) the gain carries no significant digits.
    if (abs(d.c_theta) <= R(4) * epsilon_of<R>() * sqrt(d.omega_m * d.xi) || d.c_theta == R(0)) {
        throw Error("filters", ErrorKind::ZeroGain, "homodyne gain vanishes (theta = alpha)");
    }
}

template <class R>
FilterPair<R> closed_form_filters(const DerivedParamsT<R>& d) {
    using C = Cx<R>;
    using P = Poly<R>;
    using RF = RationalFn<R>;
    require_gain(d);
    const R wm = d.omega_m, wt = d.omega_theta, gt = d.gamma_theta, G = d.Gamma, c = d.c_theta;
    const P Fp = susceptibility_poly<R>(wt, gt);
    const P nq({C(wt * wt - wm * wm), C(R(0), -(gt - G))});
    const P np({C(-(gt - G) * wm * wm), C(R(0), -(wt * wt - wm * wm - (gt - G) * G))});
    FilterPair<R> f;
    f.H_q_causal = RF(C(R(1) / c) * nq, {Fp});
    f.H_p_causal = RF(C(R(1) / (c * wm)) * np, {Fp});
    f.H_q_anticausal = f.H_q_causal.conj_reflect();
    f.H_p_anticausal = C(R(-1)) * f.H_p_causal.conj_reflect();
    return f;
}

// Generic construction: H = (1/S_C) [S_xI / S_AC]_+, and the anti-causal estimators from the
// time-reversed cross spectra (momentum flips sign under time reversal).
template <class R>
FilterPair<R> wiener_hopf_filters(const SpectrumSet<R>& s, const DerivedParamsT<R>& d) {
    using C = Cx<R>;
    using P = Poly<R>;
    const Factorization<R> fac = spectral_factorize(s.S_II);
    const RationalFn<R> invC = fac.inverse_causal();
    const RationalFn<R> invAC = fac.inverse_anti_causal();
    FilterPair<R> f;
    f.H_q_causal = invC * causal_part(s.S_qI * invAC);
    f.H_p_causal = invC * causal_part(s.S_pI * invAC);
    const RationalFn<R> S_qI_rev = s.S_qI.conj_reflect();
    const P iw_over_wm({C(R(0)), C(R(0), R(1) / d.omega_m)});
    const RationalFn<R> S_pI_rev = C(R(-1)) * (iw_over_wm * S_qI_rev);
    f.H_q_anticausal = invAC * anti_causal_part(S_qI_rev * invC);
    f.H_p_anticausal = invAC * anti_causal_part(S_pI_rev * invC);
    return f;
}

// Largest |E[(q - q_hat)(t) I(t - tau)]| over tau > 0 relative to the peak of the raw cross
// correlation; zero for the optimal causal filter.
template <class R>
double orthogonality_residual(const SpectrumSet<R>& s, const RationalFn<R>& H, const RationalFn<R>& S_xI,
                              int samples = 64) {
    using std::abs;
    using std::imag;
    const RationalFn<R> err = S_xI - H * s.S_II;
    const PoleSet<R> pe = partial_fractions(err);
    const PoleSet<R> px = partial_fractions(S_xI);
    double slow = 1e300, fast = 0;
    for (const auto& pl : px.poles) {
        const double decay = std::abs(to_double(imag(pl.p)));
        const double freq = std::abs(to_cdouble<R>(pl.p));
        if (decay > 0) slow = std::min(slow, decay);
        fast = std::max(fast, freq);
    }
    for (const auto& pl : pe.poles) fast = std::max(fast, std::abs(to_cdouble<R>(pl.p)));
    if (!(slow < 1e300)) slow = 1;
    if (!(fast > 0)) fast = 1;
    const double t0 = 1e-3 / fast, t1 = 10.0 / slow;
    double peak = 0, worst = 0;
    for (int k = 0; k < samples; ++k) {
        const double t = t0 * std::pow(t1 / t0, samples == 1 ? 0.0 : double(k) / (samples - 1));
        peak = std::max(peak, std::abs(to_cdouble<R>(inverse_transform_positive_time(px, R(t)))));
        worst = std::max(worst, std::abs(to_cdouble<R>(inverse_transform_positive_time(pe, R(t)))));
    }
    return peak > 0 ? worst / peak : worst;
}

template <class R>
double orthogonality_residual(const SpectrumSet<R>& s, const FilterPair<R>& f) {
    return std::max(orthogonality_residual(s, f.H_q_causal, s.S_qI), orthogonality_residual(s, f.H_p_causal, s.S_pI));
}

// Mean-square error of a causal estimate x_hat = H I: int (S_xx - 2 Re[H* S_xI] + |H|^2 S_II).
template <class R>
R estimation_error(const RationalFn<R>& S_xx, const RationalFn<R>& S_xI, const RationalFn<R>& S_II,
                   const RationalFn<R>& H) {
    using std::real;
    const RationalFn<R> e = S_xx - Cx<R>(R(2)) * real_part(H.conj_reflect() * S_xI) + abs2(H) * S_II;
    return real(integrate_residues(e));
}

}  // namespace wom
