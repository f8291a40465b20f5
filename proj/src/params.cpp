#include "wom/params.hpp"

#include "wom/errors.hpp"

#include <cmath>
#include <sstream>

namespace wom {

namespace {

constexpr const char* kModule = "params";

void require(bool ok, const char* what) {
    if (!ok) throw Error(kModule, ErrorKind::InvalidInput, what);
}

}  // namespace

void validate(const SystemParams& p) {
    require(p.m > 0, "m must be > 0");
    require(p.Omega > 0, "Omega must be > 0");
    require(p.kappa > 0, "kappa must be > 0");
    require(p.Gamma >= 0, "Gamma must be >= 0");
    require(p.P_in >= 0, "P_in must be >= 0");
    require(p.T >= 0, "T must be >= 0");
    require(p.ell > 0, "ell must be > 0");
    require(p.omega_c > 0, "omega_c must be > 0");
    require(p.theta >= 0 && p.theta < constants::two_pi / 2, "theta must lie in [0, pi)");
    require(std::isfinite(p.Delta), "Delta must be finite");
}

template <class R>
DerivedParamsT<R> derive_as(const SystemParams& p, const ModelOptions& opt) {
    using std::abs;
    using std::atan;
    using std::cos;
    using std::pow;
    using std::sin;
    using std::sqrt;
    validate(p);

    const R m = p.m, Omega = p.Omega, kappa = p.kappa, Delta = p.Delta, Gamma = p.Gamma;
    const R P = p.P_in, T = p.T, ell = p.ell, wc = p.omega_c;
    const R hbar = constants::hbar, kB = constants::k_B;

    DerivedParamsT<R> d;
    d.Omega = Omega;
    d.Gamma = Gamma;
    d.theta = p.theta;
    d.kappa = kappa;
    d.Delta = Delta;
    d.alpha = atan(2 * Delta / kappa);

    const R D = kappa * kappa + 4 * Delta * Delta;
    // Coupling squared with the given frequency in the zero-point normalization.
    auto coupling_sq = [&](const R& w) { return wc * P * kappa / (m * w * ell * ell * D); };

    if (opt.coupling == CouplingModel::Bare) {
        const R g2 = coupling_sq(Omega);
        d.omega_m = sqrt(Omega * Omega + 16 * Delta * g2 * Omega / D);
        d.g_m = sqrt(g2 * Omega / d.omega_m);
    } else {
        const R tol = R(1e-14);
        const int max_iter = 1000;
        R w = Omega;
        bool converged = false;
        int it = 0;
        for (; it < max_iter; ++it) {
            const R g2 = coupling_sq(w);
            const R radicand = Omega * Omega + 16 * Delta * g2 * Omega / D;
            if (radicand <= 0) {
                throw Error(kModule, ErrorKind::NonConvergent,
                            "optical-spring radicand became non-positive during fixed-point iteration");
            }
            const R target = sqrt(radicand);
            // Damping by 1/2 keeps the map contractive when the spring term dominates.
            const R next = (w + target) / 2;
            const R step = abs(next - w);
            w = next;
            if (step <= tol * w) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            std::ostringstream os;
            os << "(g_m, omega_m) fixed point did not converge in " << max_iter << " iterations";
            throw Error(kModule, ErrorKind::NonConvergent, os.str());
        }
        d.omega_m = w;
        d.g_m = sqrt(coupling_sq(w));
        d.fixed_point_iterations = it + 1;
    }

    const R wm = d.omega_m;
    const R ca = cos(d.alpha);
    d.xi = 16 * d.g_m * d.g_m * ca * ca / (kappa * wm);
    const R root = sqrt(wm * d.xi);
    const R delta = opt.theta_offset ? R(*opt.theta_offset) : R(p.theta) - d.alpha;
    d.c_theta = root * sin(delta);
    d.L_theta = root * cos(delta);
    d.n_th = opt.n_th_override ? R(*opt.n_th_override) : kB * T / (hbar * wm);
    d.N_th = kB * T / (hbar * wc);
    d.M_theta = opt.shot_noise == ShotNoise::Unit ? R(1) : 2 * d.N_th + 1;
    d.n_bar = 2 * Gamma * (2 * d.n_th + 1) + wm * d.xi;
    d.lambda_theta = d.c_theta * d.c_theta / d.M_theta;
    d.Lambda_theta = d.c_theta * d.L_theta / d.M_theta;

    const R wm2 = wm * wm;
    if (d.c_theta == R(0)) {
        d.omega_theta = wm;
        d.gamma_theta = Gamma;
        return d;
    }
    const R quartic = wm2 * wm2 + 2 * d.Lambda_theta * wm2 * wm + d.n_bar * d.lambda_theta * wm2;
    if (quartic <= 0) {
        throw Error(kModule, ErrorKind::ComplexEffectiveParams, "omega_theta radicand is negative");
    }
    d.omega_theta = sqrt(sqrt(quartic));
    const R gsq = Gamma * Gamma - 2 * wm * (wm + d.Lambda_theta) + 2 * d.omega_theta * d.omega_theta;
    if (gsq < 0) {
        throw Error(kModule, ErrorKind::ComplexEffectiveParams, "gamma_theta radicand is negative");
    }
    d.gamma_theta = sqrt(gsq);
    return d;
}

template DerivedParamsT<Real> derive_as<Real>(const SystemParams&, const ModelOptions&);
template DerivedParamsT<HighReal> derive_as<HighReal>(const SystemParams&, const ModelOptions&);

double spring_residual(const SystemParams& p, const DerivedParams& d, const ModelOptions& opt) {
    const double D = p.kappa * p.kappa + 4 * p.Delta * p.Delta;
    const double g2 = opt.coupling == CouplingModel::Bare
                          ? p.omega_c * p.P_in * p.kappa / (p.m * p.Omega * p.ell * p.ell * D)
                          : d.g_m * d.g_m;
    const double w2 = d.omega_m * d.omega_m;
    return std::abs(w2 - p.Omega * p.Omega - 16 * p.Delta * g2 * p.Omega / D) / w2;
}

double gas_damping(double P_gas_Pa, double T_K, double m_kg, double rho_kg_m3) {
    if (!(P_gas_Pa > 0 && T_K > 0 && m_kg > 0 && rho_kg_m3 > 0)) {
        throw Error(kModule, ErrorKind::InvalidInput, "gas_damping inputs must be > 0");
    }
    const double rho_ref = 20e3;  // 20 g/cm^3
    return 7e-6 * (P_gas_Pa / 1e-3) * std::pow(T_K / 300.0, -0.5) * std::cbrt(1e-6 / m_kg) *
           std::pow(rho_ref / rho_kg_m3, 2.0 / 3.0);
}

}  // namespace wom
