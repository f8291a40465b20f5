#include "wom/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace wom {

namespace {

namespace pt = boost::property_tree;

double parse_number(const std::string& key, const std::string& text) {
    const char* b = text.data();
    const char* e = b + text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
    double v = 0;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e || b == e) throw ConfigError(key, "expected a number, got '" + text + "'");
    if (!std::isfinite(v)) throw ConfigError(key, "value must be finite");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    const double v = parse_number(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key, "expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

std::string parse_choice(const std::string& key, const std::string& text, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (text == a) return text;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw ConfigError(key, "expected one of {" + list + "}, got '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"system.Omega_Hz", [](RunConfig& c, auto& k, auto& v) { c.system.Omega_Hz = parse_number(k, v); }},
        {"system.kappa_Hz", [](RunConfig& c, auto& k, auto& v) { c.system.kappa_Hz = parse_number(k, v); }},
        {"system.Gamma_Hz", [](RunConfig& c, auto& k, auto& v) { c.system.Gamma_Hz = parse_number(k, v); }},
        {"system.Delta_over_kappa",
         [](RunConfig& c, auto& k, auto& v) { c.system.Delta_over_kappa = parse_number(k, v); }},
        {"system.P_in_W", [](RunConfig& c, auto& k, auto& v) { c.system.P_in_W = parse_number(k, v); }},
        {"system.m_kg", [](RunConfig& c, auto& k, auto& v) { c.system.m_kg = parse_number(k, v); }},
        {"system.T_K", [](RunConfig& c, auto& k, auto& v) { c.system.T_K = parse_number(k, v); }},
        {"system.theta_rad", [](RunConfig& c, auto& k, auto& v) { c.system.theta_rad = parse_number(k, v); }},
        {"system.theta_mode",
         [](RunConfig& c, auto& k, auto& v) { c.system.theta_mode = parse_choice(k, v, {"x", "y", "opt", "alpha"}); }},
        {"scan.axis", [](RunConfig& c, auto&, auto& v) { c.scan.axis = v; }},
        {"scan.min", [](RunConfig& c, auto& k, auto& v) { c.scan.min = parse_number(k, v); }},
        {"scan.max", [](RunConfig& c, auto& k, auto& v) { c.scan.max = parse_number(k, v); }},
        {"scan.points", [](RunConfig& c, auto& k, auto& v) { c.scan.points = parse_int(k, v); }},
        {"scan.spacing",
         [](RunConfig& c, auto& k, auto& v) { c.scan.spacing = parse_choice(k, v, {"linear", "log"}); }},
        {"scan.theta_points", [](RunConfig& c, auto& k, auto& v) { c.scan.theta_points = parse_int(k, v); }},
        {"app.zeta", [](RunConfig& c, auto& k, auto& v) { c.app.zeta = parse_number(k, v); }},
        {"app.gamma_m_Hz", [](RunConfig& c, auto& k, auto& v) { c.app.gamma_m_Hz = parse_number(k, v); }},
        {"app.detuning_ratio", [](RunConfig& c, auto& k, auto& v) { c.app.detuning_ratio = parse_number(k, v); }},
        {"app.xi_eff_mode",
         [](RunConfig& c, auto& k, auto& v) { c.app.xi_eff_mode = parse_choice(k, v, {"nbar_over_omegam", "xi"}); }},
        {"model.coupling_model",
         [](RunConfig& c, auto& k, auto& v) {
             c.model.coupling = parse_choice(k, v, {"bare", "self_consistent"}) == "bare" ? CouplingModel::Bare
                                                                                          : CouplingModel::SelfConsistent;
         }},
        {"model.shot_noise",
         [](RunConfig& c, auto& k, auto& v) {
             c.model.shot_noise =
                 parse_choice(k, v, {"unit", "thermal"}) == "unit" ? ShotNoise::Unit : ShotNoise::Thermal;
         }},
        {"gas.P_Pa", [](RunConfig& c, auto& k, auto& v) { c.gas.P_Pa = parse_number(k, v); }},
        {"gas.rho_kg_m3", [](RunConfig& c, auto& k, auto& v) { c.gas.rho_kg_m3 = parse_number(k, v); }},
    };
    return table;
}

RunConfig from_tree(const pt::ptree& tree) {
    RunConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError(section, "key outside of a section");
        for (const auto& [name, leaf] : body) {
            const std::string key = section + "." + name;
            const auto it = setters().find(key);
            if (it == setters().end()) throw ConfigError(key, "unknown key");
            it->second(cfg, key, leaf.data());
        }
    }
    validate_config(cfg);
    return cfg;
}

RunConfig parse_stream(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        std::ostringstream os;
        os << "line " << e.line() << ": " << e.message();
        throw ConfigError("config", os.str());
    }
    return from_tree(tree);
}

constexpr double kTwoPi = constants::two_pi;

}  // namespace

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    return parse_stream(in);
}

RunConfig parse_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_stream(in);
}

bool is_scan_axis(const std::string& name) {
    static const char* axes[] = {"Omega_Hz", "kappa_Hz", "Gamma_Hz", "Delta_over_kappa", "P_in_W", "m_kg",
                                 "T_K",      "theta_rad", "gamma_m_Hz", "zeta"};
    for (const char* a : axes)
        if (name == a) return true;
    return false;
}

void set_axis_value(RunConfig& cfg, const std::string& axis, double v) {
    if (axis == "Omega_Hz") cfg.system.Omega_Hz = v;
    else if (axis == "kappa_Hz") cfg.system.kappa_Hz = v;
    else if (axis == "Gamma_Hz") cfg.system.Gamma_Hz = v;
    else if (axis == "Delta_over_kappa") cfg.system.Delta_over_kappa = v;
    else if (axis == "P_in_W") cfg.system.P_in_W = v;
    else if (axis == "m_kg") cfg.system.m_kg = v;
    else if (axis == "T_K") cfg.system.T_K = v;
    else if (axis == "theta_rad") cfg.system.theta_rad = v;
    else if (axis == "gamma_m_Hz") cfg.app.gamma_m_Hz = v;
    else if (axis == "zeta") cfg.app.zeta = v;
    else throw ConfigError("scan.axis", "unknown axis '" + axis + "'");
}

std::vector<double> scan_values(const ScanConfig& s) {
    std::vector<double> v(s.points);
    for (int k = 0; k < s.points; ++k) {
        const double t = s.points == 1 ? 0.0 : double(k) / (s.points - 1);
        v[k] = s.spacing == "log" ? s.min * std::pow(s.max / s.min, t) : s.min + (s.max - s.min) * t;
    }
    if (s.points > 1) {
        v.front() = s.min;
        v.back() = s.max;
    }
    return v;
}

void validate_config(const RunConfig& c) {
    if (c.system.theta_rad && c.system.theta_mode != "x")
        throw ConfigError("system.theta_rad", "give either theta_rad or theta_mode, not both");
    if (!c.scan.axis.empty() || c.scan.points != 0) {
        if (!is_scan_axis(c.scan.axis)) throw ConfigError("scan.axis", "unknown axis '" + c.scan.axis + "'");
        if (c.scan.points < 2) throw ConfigError("scan.points", "must be >= 2");
        if (c.scan.spacing == "log" && !(c.scan.min > 0 && c.scan.max > 0))
            throw ConfigError("scan.min", "log spacing requires positive endpoints");
    }
    if (c.scan.theta_points < 0) throw ConfigError("scan.theta_points", "must be >= 0");
    if (c.scan.theta_points > 0 && c.scan.axis == "theta_rad")
        throw ConfigError("scan.theta_points", "theta grid conflicts with axis theta_rad");
    if (!(c.app.zeta > 0)) throw ConfigError("app.zeta", "must be > 0");
    if (c.app.gamma_m_Hz && !(*c.app.gamma_m_Hz > 0)) throw ConfigError("app.gamma_m_Hz", "must be > 0");
}

XiEffMode xi_mode_of(const RunConfig& cfg) {
    return cfg.app.xi_eff_mode == "xi" ? XiEffMode::Xi : XiEffMode::NbarOverOmegaM;
}

double detuning_ratio_of(const RunConfig& cfg) {
    return cfg.app.detuning_ratio ? *cfg.app.detuning_ratio : cfg.system.Delta_over_kappa;
}

SystemParams resolve_system(const RunConfig& cfg) {
    const SystemConfig& s = cfg.system;
    SystemParams p;
    p.m = s.m_kg;
    p.Omega = kTwoPi * s.Omega_Hz;
    p.kappa = kTwoPi * s.kappa_Hz;
    p.Delta = s.Delta_over_kappa * p.kappa;
    p.Gamma = kTwoPi * s.Gamma_Hz;
    p.P_in = s.P_in_W;
    p.T = s.T_K;
    p.theta = 0;
    if (s.theta_rad) {
        p.theta = *s.theta_rad;
    } else if (s.theta_mode == "y") {
        p.theta = kTwoPi / 4;
    } else if (s.theta_mode == "alpha") {
        p.theta = std::atan(2 * p.Delta / p.kappa);
        if (p.theta < 0) p.theta += kTwoPi / 2;
    } else if (s.theta_mode == "opt") {
        p.theta = optimal_angle(derive(p, cfg.model), xi_mode_of(cfg));
    }
    return p;
}

ModelOptions resolve_options(const RunConfig& cfg) {
    ModelOptions o = cfg.model;
    if (!cfg.system.theta_rad && cfg.system.theta_mode == "opt") {
        SystemParams p = resolve_system(cfg);
        o.theta_offset = optimal_offset(derive(p, cfg.model), xi_mode_of(cfg));
    }
    return o;
}

TwoModeConfig resolve_two_mode(const RunConfig& cfg) {
    TwoModeConfig t;
    t.base = resolve_system(cfg);
    t.zeta = cfg.app.zeta;
    t.gamma_m = kTwoPi * (cfg.app.gamma_m_Hz ? *cfg.app.gamma_m_Hz : cfg.system.Gamma_Hz);
    t.detuning_ratio = detuning_ratio_of(cfg);
    return t;
}

}  // namespace wom
