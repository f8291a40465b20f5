#pragma once

#include "wom/applications.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace wom {

// Raised for any malformed or unknown configuration entry; `key()` is "section.name".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct SystemConfig {
    double Omega_Hz = 1.0;
    double kappa_Hz = 1e8;
    double Gamma_Hz = 1e-2;
    double Delta_over_kappa = 0.2;
    double P_in_W = 1e-5;
    double m_kg = 1e-6;
    double T_K = 300;
    std::optional<double> theta_rad;
    std::string theta_mode = "x";  // x, y, opt, alpha
};

struct ScanConfig {
    std::string axis;
    double min = 0, max = 0;
    int points = 0;
    std::string spacing = "linear";  // linear or log
    int theta_points = 0;            // > 0: theta grid k*pi/theta_points for each axis value
};

struct AppConfig {
    double zeta = 1.0;
    std::optional<double> gamma_m_Hz;
    std::optional<double> detuning_ratio;  // defaults to system.Delta_over_kappa
    std::string xi_eff_mode = "nbar_over_omegam";
};

struct GasConfig {
    double P_Pa = 1e-3;
    double rho_kg_m3 = 20e3;
};

struct RunConfig {
    SystemConfig system;
    ScanConfig scan;
    AppConfig app;
    ModelOptions model;
    GasConfig gas;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_string(const std::string& text);

// Checks cross-key invariants (one axis, points >= 2, positive log endpoints, ...).
void validate_config(const RunConfig& cfg);

bool is_scan_axis(const std::string& name);
void set_axis_value(RunConfig& cfg, const std::string& axis, double value);
std::vector<double> scan_values(const ScanConfig& s);

XiEffMode xi_mode_of(const RunConfig& cfg);
double detuning_ratio_of(const RunConfig& cfg);

// SystemParams in SI angular units with theta resolved from theta_rad or theta_mode.
SystemParams resolve_system(const RunConfig& cfg);

// Model options; theta_mode = opt also carries the exact offset from alpha.
ModelOptions resolve_options(const RunConfig& cfg);

TwoModeConfig resolve_two_mode(const RunConfig& cfg);

}  // namespace wom
