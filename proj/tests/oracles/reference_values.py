"""Independent 40-digit reference values for the unit tests.

Everything here is restated from the model definitions and evaluated with mpmath
quadrature on the real frequency axis; no residue calculus and no closed-form
variance or bias expressions are used. Run with `python3 reference_values.py`;
the printed numbers are frozen in tests/test_reference.cpp.
"""

import mpmath as mp

mp.mp.dps = 40

HBAR = mp.mpf("1.054571817e-34")
KB = mp.mpf("1.380649e-23")
TWO_PI = 2 * mp.pi
ELL = mp.mpf("0.1")
OMEGA_C = TWO_PI * mp.mpf("2.818e14")


def derive(m, Om, kap, Delta, Gam, P, T, theta, coupling="bare", shot="unit", nth_override=None):
    alpha = mp.atan(2 * Delta / kap)
    D = kap**2 + 4 * Delta**2
    if coupling == "bare":
        g2 = OMEGA_C * P * kap / (m * Om * ELL**2 * D)
        wm = mp.sqrt(Om**2 + 16 * Delta * g2 * Om / D)
        gm2 = g2 * Om / wm
    else:
        # g_m^2 = A / omega_m, so omega_m solves omega_m^2 = Omega^2 + 16 Delta A Omega / (D omega_m).
        A = OMEGA_C * P * kap / (m * ELL**2 * D)
        wm = mp.findroot(lambda w: w**2 - Om**2 - 16 * Delta * (A / w) * Om / D, Om * 2)
        gm2 = A / wm
    xi = 16 * gm2 * mp.cos(alpha) ** 2 / (kap * wm)
    root = mp.sqrt(wm * xi)
    c = root * mp.sin(theta - alpha)
    L = root * mp.cos(theta - alpha)
    nth = KB * T / (HBAR * wm) if nth_override is None else nth_override
    Nth = KB * T / (HBAR * OMEGA_C)
    M = 1 if shot == "unit" else 2 * Nth + 1
    nbar = 2 * Gam * (2 * nth + 1) + wm * xi
    lam = c * c / M
    Lam = c * L / M
    wt = (wm**4 + 2 * Lam * wm**3 + nbar * lam * wm**2) ** mp.mpf("0.25")
    gt = mp.sqrt(Gam**2 - 2 * wm * (wm + Lam) + 2 * wt**2)
    return dict(alpha=alpha, omega_m=wm, g_m=mp.sqrt(gm2), xi=xi, c_theta=c, L_theta=L, n_th=nth, N_th=Nth,
                n_bar=nbar, M_theta=M, lambda_theta=lam, Lambda_theta=Lam, omega_theta=wt, gamma_theta=gt,
                Gamma=Gam)


def spectra(d):
    wm, G, nb, c, L, M = d["omega_m"], d["Gamma"], d["n_bar"], d["c_theta"], d["L_theta"], d["M_theta"]

    def F(w):
        return wm**2 - 1j * G * w - w**2

    def S_qq(w):
        return wm**2 * nb / abs(F(w)) ** 2

    def S_qI(w):
        return c * S_qq(w) + wm * L / F(w)

    def S_pI(w):
        return -(1j * w / wm) * S_qI(w)

    def S_II(w):
        return 2 * c * mp.re(S_qI(w)) - c * c * S_qq(w) + M

    return S_qq, S_qI, S_pI, S_II


def filters(d):
    wm, G, wt, gt, c = d["omega_m"], d["Gamma"], d["omega_theta"], d["gamma_theta"], d["c_theta"]

    def Fp(w):
        return wt**2 - 1j * gt * w - w**2

    def Hq(w):
        return ((wt**2 - wm**2) - 1j * (gt - G) * w) / (c * Fp(w))

    def Hp(w):
        return (-(gt - G) * wm**2 - 1j * (wt**2 - wm**2 - (gt - G) * G) * w) / (c * wm * Fp(w))

    return Hq, Hp


def integrate(f, d):
    """int_{-inf}^{inf} f(w) dw / 2pi for even-in-|w| real integrands, split at the resonances."""
    wm, wt = d["omega_m"], d["omega_theta"]
    widths = [d["Gamma"], d["gamma_theta"]]
    pts = {mp.mpf(0)}
    for w0 in (wm, wt):
        for h in widths:
            for k in (-8, -2, -1, -mp.mpf("0.5"), 0, mp.mpf("0.5"), 1, 2, 8):
                x = w0 + k * h
                if x > 0:
                    pts.add(x)
    pts = sorted(pts)
    pts.append(mp.inf)
    total = mp.quad(lambda w: f(w) + f(-w), pts, maxdegree=10)
    return total / TWO_PI


def conditional(d):
    S_qq, S_qI, S_pI, S_II = spectra(d)
    Hq, Hp = filters(d)
    wm = d["omega_m"]
    Vq = integrate(lambda w: S_qq(w) - abs(Hq(w)) ** 2 * S_II(w), d)
    Vp = integrate(lambda w: (w / wm) ** 2 * S_qq(w) - abs(Hp(w)) ** 2 * S_II(w), d)
    Vqp_record = -integrate(lambda w: mp.re(Hq(w) * mp.conj(Hp(w))) * S_II(w), d)
    # Anti-causal estimators on the real axis: H_q^<- = conj(H_q^->), H_p^<- = -conj(H_p^->).
    Vdq = integrate(lambda w: abs(Hq(w) - mp.conj(Hq(w))) ** 2 * S_II(w) / 2, d)
    Vdp = integrate(lambda w: abs(Hp(w) + mp.conj(Hp(w))) ** 2 * S_II(w) / 2, d)
    return dict(V_q_c=Vq, V_p_c=Vp, V_qp_record=Vqp_record, V_dq=Vdq, V_dp=Vdp, bias_alpha=Vdq - Vq, bias_beta=Vdp - Vp)


def mode(base, zeta, which, gamma_m, coupling):
    m, Om, kap, dr, Gam, P, T = base
    k = kap / zeta if which == "+" else kap
    wm = derive(m, Om, k, dr * k, Gam, P, T, 0, coupling)["omega_m"]
    nth = KB * (Gam * T / gamma_m) * Om / (HBAR * wm**2)
    return derive(m, Om, k, dr * k, gamma_m, P, T, 0, coupling, nth_override=nth)


def log_negativity(Vplus, Vminus):
    Z = mp.zeros(4, 4)
    for i in range(2):
        for j in range(2):
            Z[i, j] = Vplus[i][j]
            Z[i + 2, j + 2] = Vminus[i][j]
    S = mp.matrix([[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, -1, 0], [0, 1, 0, -1]]) / mp.sqrt(2)
    V = S * Z * S.T

    def det2(r, c):
        return V[r, c] * V[r + 1, c + 1] - V[r, c + 1] * V[r + 1, c]

    sig = det2(0, 0) + det2(2, 2) - 2 * det2(0, 2)
    return -mp.log((sig - mp.sqrt(sig**2 - 4 * mp.det(V))) / 2, 2) / 2


def two_mode(base, zeta, gamma_m, coupling):
    out = {}
    covs = {}
    for which in "+-":
        d = mode(base, zeta, which, gamma_m, coupling)
        v = conditional(d)
        covs[which] = v
    for kind, (q, p) in {"causal": ("V_q_c", "V_p_c"), "est": ("V_dq", "V_dp")}.items():
        mats = {w: [[covs[w][q], covs[w]["V_qp_record"]], [covs[w]["V_qp_record"], covs[w][p]]] for w in "+-"}
        out[kind] = log_negativity(mats["+"], mats["-"])
    return out


def gas_damping(P_pa, T, m, rho):
    return mp.mpf("7e-6") * (P_pa / mp.mpf("1e-3")) * (T / 300) ** mp.mpf("-0.5") * (mp.mpf("1e-6") / m) ** (
        mp.mpf(1) / 3) * (mp.mpf("20e3") / rho) ** (mp.mpf(2) / 3)


def show(label, values):
    for k, v in values.items():
        print(f"{label}.{k} = {mp.nstr(v, 17)}")


RATIO_MAP = (mp.mpf("1e-6"), TWO_PI, TWO_PI * mp.mpf("1e8"), mp.mpf("0.2"), mp.mpf("1e-5"), 300)
SQUEEZE = (mp.mpf("1e-4"), TWO_PI, TWO_PI * mp.mpf("1e3"))
TWO_MODE = (mp.mpf("0.92e-3"), TWO_PI * mp.mpf("2.2"), TWO_PI * mp.mpf("1.64e6"), mp.mpf("0.2"),
        TWO_PI * mp.mpf("1e-6"), mp.mpf(1), 300)

if __name__ == "__main__":
    m, Om, kap, dr, P, T = RATIO_MAP
    points = {
        "ratio_map_theta03": derive(m, Om, kap, dr * kap, TWO_PI * mp.mpf("1e-2"), P, T, mp.mpf("0.3")),
        "ratio_map_thermal_shot": derive(m, Om, kap, dr * kap, TWO_PI * mp.mpf("0.5"), P, T, mp.mpf("2.0"),
                                    shot="thermal"),
        "squeeze_detuned": derive(SQUEEZE[0], SQUEEZE[1], SQUEEZE[2], mp.mpf("0.02") * SQUEEZE[2], TWO_PI, mp.mpf(1), 300,
                               mp.mpf("1.2")),
    }
    for name, d in points.items():
        show(name, {k: d[k] for k in ("alpha", "omega_m", "g_m", "xi", "c_theta", "L_theta", "n_th", "n_bar",
                                      "lambda_theta", "omega_theta", "gamma_theta")})
        show(name, conditional(d))
    sc = derive(m, Om, kap, dr * kap, TWO_PI * mp.mpf("1e-2"), mp.mpf("1e-3"), T, mp.mpf("0.3"),
                coupling="self_consistent")
    show("ratio_map_self_consistent", {k: sc[k] for k in ("omega_m", "g_m", "xi")})
    for coupling in ("bare", "self_consistent"):
        show(f"two_mode_zeta10_{coupling}", two_mode(TWO_MODE, mp.mpf(10), TWO_PI * mp.mpf("6.9e-3"), coupling))
    for P in ("1", "10"):
        d0 = derive(SQUEEZE[0], SQUEEZE[1], SQUEEZE[2], 0, TWO_PI * mp.mpf("1e-2"), mp.mpf(P), 300, 0)
        theta = (d0["alpha"] - mp.atan(2 * d0["omega_m"] / d0["n_bar"]) / 2) % mp.pi
        v = conditional(derive(SQUEEZE[0], SQUEEZE[1], SQUEEZE[2], 0, TWO_PI * mp.mpf("1e-2"), mp.mpf(P), 300, theta))
        show(f"squeeze_opt_P{P}", {"theta": theta, "ratio_causal": v["V_p_c"] / v["V_q_c"],
                                "ratio_est": v["V_dp"] / v["V_dq"]})
    show("gas", {"atm": gas_damping(mp.mpf("1e5"), 300, mp.mpf("1e-6"), mp.mpf("20e3")),
                 "ref": gas_damping(mp.mpf("1e-3"), 300, mp.mpf("1e-6"), mp.mpf("20e3"))})
