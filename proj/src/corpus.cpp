#include "wom/corpus.hpp"

#include "wom/applications.hpp"

#include <cmath>
#include <random>

namespace wom {

namespace {

constexpr double kTwoPi = constants::two_pi;

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

// Uniform angle in [0, pi) at least `min_deg` away from alpha (mod pi).
double draw_theta(std::mt19937_64& rng, double alpha, double min_deg) {
    const double pi = kTwoPi / 2;
    const double min_rad = min_deg * pi / 180;
    std::uniform_real_distribution<double> u(0.0, pi);
    for (;;) {
        const double th = u(rng);
        double dist = std::fmod(std::abs(th - alpha), pi);
        dist = std::min(dist, pi - dist);
        if (dist >= min_rad) return th;
    }
}

}  // namespace

SystemParams ratio_map_system() {
    SystemParams p;
    p.m = 1e-6;
    p.Omega = kTwoPi * 1.0;
    p.kappa = kTwoPi * 1e8;
    p.Delta = 0.2 * p.kappa;
    p.Gamma = kTwoPi * 1e-2;
    p.P_in = 1e-5;
    p.T = 300;
    return p;
}

SystemParams two_mode_system() {
    SystemParams p;
    p.m = 0.92e-3;
    p.Omega = kTwoPi * 2.2;
    p.kappa = kTwoPi * 1.64e6;
    p.Delta = 0.2 * p.kappa;
    p.Gamma = kTwoPi * 1e-6;
    p.P_in = 1.0;
    p.T = 300;
    return p;
}

SystemParams squeeze_system() {
    SystemParams p;
    p.m = 100e-6;
    p.Omega = kTwoPi * 1.0;
    p.kappa = kTwoPi * 1e3;
    p.Delta = 0;
    p.Gamma = kTwoPi * 1e-2;
    p.P_in = 1.0;
    p.T = 300;
    return p;
}

std::vector<CorpusPoint> make_corpus(std::size_t n, std::uint64_t seed, double min_gain_deg) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CorpusPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        CorpusPoint cp;
        switch (i % 3) {
            case 0: {
                cp.family = "ratio_map";
                cp.sys = ratio_map_system();
                cp.sys.Gamma = kTwoPi * log_uniform(rng, 1e-6, 1e2);
                cp.sys.P_in = log_uniform(rng, 1e-6, 1e-4);
                break;
            }
            case 1: {
                cp.family = "two_mode";
                TwoModeConfig cfg;
                cfg.base = two_mode_system();
                cfg.base.P_in = log_uniform(rng, 0.1, 1.0);
                cfg.zeta = log_uniform(rng, 1.0, 100.0);
                cfg.gamma_m = kTwoPi * log_uniform(rng, 1e-3, 1e-1);
                cfg.detuning_ratio = 0.2;
                const Mode mode = unit(rng) < 0.5 ? Mode::Plus : Mode::Minus;
                const ModeSetup s = mode_system(cfg, mode);
                cp.sys = s.sys;
                cp.opt = s.opt;
                break;
            }
            default: {
                cp.family = "squeeze";
                cp.sys = squeeze_system();
                cp.sys.P_in = log_uniform(rng, 1e-3, 10.0);
                cp.sys.Delta = 0.05 * unit(rng) * cp.sys.kappa;
                break;
            }
        }
        const double alpha = std::atan(2 * cp.sys.Delta / cp.sys.kappa);
        cp.sys.theta = draw_theta(rng, alpha, min_gain_deg);
        out.push_back(std::move(cp));
    }
    return out;
}

}  // namespace wom
