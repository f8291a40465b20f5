#pragma once

#include "wom/estimation.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace wom {

enum class XiEffMode { NbarOverOmegaM, Xi };

// theta_opt = alpha - arctan(2/xi_eff)/2, reduced into [0, pi).
double optimal_angle(const DerivedParams& d, XiEffMode mode = XiEffMode::NbarOverOmegaM);

// theta_opt - alpha = -arctan(2/xi_eff)/2, unreduced; pass as ModelOptions::theta_offset.
double optimal_offset(const DerivedParams& d, XiEffMode mode = XiEffMode::NbarOverOmegaM);

struct TwoModeConfig {
    SystemParams base;         // base.kappa is kappa_-; base.Gamma is the intrinsic damping
    double zeta = 1.0;         // kappa_+ = kappa_- / zeta
    double gamma_m = 0.0;      // feedback damping [rad/s]
    double detuning_ratio = 0.2;
};

enum class Mode { Plus, Minus };

struct ModeSetup {
    SystemParams sys;
    ModelOptions opt;
};

ModeSetup mode_system(const TwoModeConfig& cfg, Mode mode, const ModelOptions& base_opt = {});
DerivedParams mode_params(const TwoModeConfig& cfg, Mode mode, const ModelOptions& base_opt = {});

struct CovMatrix4 {
    Eigen::Matrix4d V;
    Eigen::Matrix2d V11() const { return V.block<2, 2>(0, 0); }
    Eigen::Matrix2d V22() const { return V.block<2, 2>(2, 2); }
    Eigen::Matrix2d V12() const { return V.block<2, 2>(0, 2); }
};

Eigen::Matrix4d beam_splitter();
CovMatrix4 assemble_two_mode(const Eigen::Matrix2d& V_plus, const Eigen::Matrix2d& V_minus);

enum class CovMethod { Causal, MeasurementBased };

struct SingleModeCovariances {
    Eigen::Matrix2d causal;    // (V_q^c, V_qp; V_qp, V_p^c)
    Eigen::Matrix2d measured;  // (V_dq, V_qp; V_qp, V_dp)
    double V_qp_closed = 0;    // (gamma_theta - Gamma)^2 / (2 lambda omega_m)
    double alpha = 0, beta = 0;
};

// Off-diagonal V_qp comes from the record-only integral -int Re[H_q H_p* S_II].
SingleModeCovariances single_mode_covariances(const SystemParams& sys, const ModelOptions& opt);

struct TwoModeResult {
    CovMatrix4 cov;
    bool asymmetry_degenerate = false;  // zeta == 1: no entanglement possible
};

TwoModeResult two_mode_covariance(const TwoModeConfig& cfg, CovMethod method, const ModelOptions& opt = {});

// E_N = -1/2 log2((Sigma - sqrt(Sigma^2 - 4 det V))/2), Sigma = det V11 + det V22 - 2 det V12.
double log_negativity(const CovMatrix4& V);

struct EntanglementRow {
    double gamma_m_Hz = 0;
    double E_N_causal = 0, E_N_est = 0, ratio = 0;
    std::string flags;
};

std::vector<EntanglementRow> entanglement_ratio_scan(const TwoModeConfig& cfg, const std::vector<double>& gamma_m_grid,
                                                     const ModelOptions& opt = {});

enum class AngleMode { X, Opt };

struct SqueezeScanPoint {
    double P_in = 0;
    double ratio_causal = 0;     // V_p^c / V_q^c
    double ratio_estimated = 0;  // V_dp / V_dq
    double theta_used = 0;
    std::string flags;
};

std::vector<SqueezeScanPoint> squeezing_scan(const SystemParams& base, const std::vector<double>& P_grid,
                                             AngleMode angle_mode, double detuning_ratio,
                                             const ModelOptions& opt = {},
                                             XiEffMode xi_mode = XiEffMode::NbarOverOmegaM);

}  // namespace wom
