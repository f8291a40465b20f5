#pragma once

#include "wom/scalar.hpp"

#include <optional>

namespace wom {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;
inline constexpr double k_B = 1.380649e-23;
inline constexpr double two_pi = 6.283185307179586476925286766559;
inline constexpr double default_ell = 0.1;
inline constexpr double default_omega_c = two_pi * 2.818e14;
}  // namespace constants

// Raw physical inputs. All rates in rad/s.
struct SystemParams {
    double m = 1e-6;
    double Omega = constants::two_pi;
    double kappa = constants::two_pi * 1e8;
    double Delta = 0.0;
    double Gamma = constants::two_pi * 1e-6;
    double P_in = 1e-5;
    double T = 300.0;
    double theta = 0.0;
    double ell = constants::default_ell;
    double omega_c = constants::default_omega_c;
};

// How the optical-spring frequency and the coupling depend on each other.
//   Bare:           omega_m uses the coupling evaluated at Omega, g_m^2 = g^2 Omega / omega_m.
//   SelfConsistent: omega_m uses g_m itself; solved by damped fixed-point iteration.
enum class CouplingModel { Bare, SelfConsistent };

// Unit forces M_theta = 1; Thermal uses M_theta = 2 N_th + 1.
enum class ShotNoise { Unit, Thermal };

struct ModelOptions {
    CouplingModel coupling = CouplingModel::Bare;
    ShotNoise shot_noise = ShotNoise::Unit;
    // Replaces k_B T / (hbar omega_m) when set (feedback / structural damping).
    std::optional<double> n_th_override;
    // theta - alpha used in place of the stored angle when set. Angles within a few ulps of pi
    // (optimal angles at strong drive) lose their offset from alpha once reduced into [0, pi).
    std::optional<double> theta_offset;
};

template <class R>
struct DerivedParamsT {
    // Copied inputs used downstream.
    R Omega, Gamma, theta, kappa, Delta;

    R alpha;
    R g_m;
    R omega_m;
    R xi;
    R c_theta;
    R L_theta;
    R n_th;
    R N_th;
    R n_bar;
    R M_theta;
    R lambda_theta;
    R Lambda_theta;
    R omega_theta;
    R gamma_theta;

    int fixed_point_iterations = 0;
};

using DerivedParams = DerivedParamsT<Real>;

void validate(const SystemParams& p);

template <class R>
DerivedParamsT<R> derive_as(const SystemParams& p, const ModelOptions& opt = {});

inline DerivedParams derive(const SystemParams& p, const ModelOptions& opt = {}) {
    return derive_as<Real>(p, opt);
}

// |omega_m^2 - Omega^2 - 16 Delta g^2 Omega/(kappa^2+4Delta^2)| / omega_m^2 for the active model.
double spring_residual(const SystemParams& p, const DerivedParams& d, const ModelOptions& opt);

// Ideal-gas damping estimate; returns Gamma in Hz.
double gas_damping(double P_gas_Pa, double T_K, double m_kg, double rho_kg_m3);

}  // namespace wom
