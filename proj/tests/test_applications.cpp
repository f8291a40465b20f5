#include "wom/applications.hpp"
#include "wom/corpus.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace wom;

namespace {

constexpr double kPi = constants::two_pi / 2;

TwoModeConfig two_mode_config(double zeta) {
    TwoModeConfig c;
    c.base = two_mode_system();
    c.zeta = zeta;
    c.gamma_m = constants::two_pi * 6.9e-3;
    c.detuning_ratio = 0.2;
    return c;
}

}  // namespace

TEST_CASE("optimal angle lies in [0, pi) and sits at the stated offset from alpha") {
    for (double P : {1e-3, 1.0, 10.0}) {
        SystemParams p = squeeze_system();
        p.P_in = P;
        p.Delta = 0.02 * p.kappa;
        const DerivedParams d = derive(p);
        for (XiEffMode m : {XiEffMode::NbarOverOmegaM, XiEffMode::Xi}) {
            const double th = optimal_angle(d, m);
            CHECK(th >= 0);
            CHECK(th < kPi);
            const double xi = m == XiEffMode::Xi ? d.xi : d.n_bar / d.omega_m;
            CHECK(optimal_offset(d, m) == doctest::Approx(-std::atan(2 / xi) / 2).epsilon(1e-15));
            double diff = std::fmod(th - d.alpha - optimal_offset(d, m) + 2 * kPi, kPi);
            diff = std::min(diff, kPi - diff);
            CHECK(diff < 1e-12);
        }
    }
}

TEST_CASE("mode parameters for the common and differential modes") {
    TwoModeConfig c = two_mode_config(10);
    const ModeSetup plus = mode_system(c, Mode::Plus);
    const ModeSetup minus = mode_system(c, Mode::Minus);
    CHECK(plus.sys.kappa == doctest::Approx(c.base.kappa / 10).epsilon(1e-15));
    CHECK(minus.sys.kappa == c.base.kappa);
    CHECK(plus.sys.Delta == doctest::Approx(0.2 * plus.sys.kappa).epsilon(1e-15));
    CHECK(plus.sys.Gamma == c.gamma_m);
    const double wm = derive(minus.sys).omega_m;
    const double T_eff = c.base.Gamma * c.base.T / c.gamma_m;
    CHECK(*minus.opt.n_th_override ==
          doctest::Approx(constants::k_B * T_eff * c.base.Omega / (constants::hbar * wm * wm)).epsilon(1e-14));

    c.gamma_m = c.base.Gamma / 2;
    CHECK_THROWS_AS(mode_system(c, Mode::Plus), Error);
    c = two_mode_config(0);
    CHECK_THROWS_AS(mode_system(c, Mode::Plus), Error);
}

TEST_CASE("blockwise assembly equals the beam-splitter transform") {
    Eigen::Matrix2d a, b;
    a << 3.0, 0.4, 0.4, 2.0;
    b << 5.0, -0.7, -0.7, 1.5;
    Eigen::Matrix4d Z = Eigen::Matrix4d::Zero();
    Z.block<2, 2>(0, 0) = a;
    Z.block<2, 2>(2, 2) = b;
    const Eigen::Matrix4d S = beam_splitter();
    const Eigen::Matrix4d ref = S * Z * S.transpose();
    CHECK((assemble_two_mode(a, b).V - ref).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((S * S.transpose() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("identical modes are uncorrelated") {
    const TwoModeResult r = two_mode_covariance(two_mode_config(1.0), CovMethod::Causal);
    CHECK(r.asymmetry_degenerate);
    CHECK(r.cov.V12().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("log negativity of reference Gaussian states") {
    CovMatrix4 vac;
    vac.V = Eigen::Matrix4d::Identity();
    CHECK(std::abs(log_negativity(vac)) < 1e-15);

    // Two-mode squeezed vacuum: E_N = 2 r / ln 2.
    const double r = 0.4;
    const double ch = std::cosh(2 * r), sh = std::sinh(2 * r);
    CovMatrix4 tmsv;
    tmsv.V << ch, 0, sh, 0,
              0, ch, 0, -sh,
              sh, 0, ch, 0,
              0, -sh, 0, ch;
    CHECK(log_negativity(tmsv) == doctest::Approx(2 * r / std::log(2.0)).epsilon(1e-13));

    CovMatrix4 bad;
    bad.V = Eigen::Matrix4d::Zero();
    try {
        log_negativity(bad);
        FAIL("expected ComplexBranch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ComplexBranch);
    }
}

TEST_CASE("entanglement scan rows keep their grid order and flags") {
    const std::vector<double> grid = {constants::two_pi * 1e-3, constants::two_pi * 1e-2};
    const auto rows = entanglement_ratio_scan(two_mode_config(1.0), grid);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].gamma_m_Hz == doctest::Approx(1e-3).epsilon(1e-15));
    CHECK(rows[1].gamma_m_Hz == doctest::Approx(1e-2).epsilon(1e-15));
    CHECK(rows[0].flags == "AsymmetryDegenerate");

    TwoModeConfig bad = two_mode_config(10);
    const auto flagged = entanglement_ratio_scan(bad, {bad.base.Gamma / 10});
    CHECK(std::isnan(flagged[0].ratio));
    CHECK(flagged[0].flags == "InvalidInput");
}

TEST_CASE("squeezing scan at the optimal angle") {
    // Reference ratios from tests/oracles/reference_values.py.
    const auto rows = squeezing_scan(squeeze_system(), {1.0, 10.0}, AngleMode::Opt, 0.0);
    CHECK(rows[0].ratio_causal == doctest::Approx(0.11426783994177928).epsilon(1e-10));
    CHECK(rows[0].ratio_estimated == doctest::Approx(0.14190318968704639).epsilon(1e-10));
    CHECK(rows[1].ratio_causal == doctest::Approx(0.035776602476020941).epsilon(1e-10));
    CHECK(rows[1].ratio_estimated == doctest::Approx(0.074799645092394316).epsilon(1e-10));
    for (const auto& r : rows) CHECK(r.flags.empty());
}

TEST_CASE("squeezing scan at theta = 0 with a small detuning approaches unit ratio") {
    const auto rows = squeezing_scan(squeeze_system(), {10.0}, AngleMode::X, 0.02);
    CHECK(rows[0].theta_used == 0);
    CHECK(std::abs(rows[0].ratio_causal - 1) < 0.05);
}

TEST_CASE("scan results do not depend on the worker count") {
    const std::vector<double> grid = {1e-3, 1e-2, 1e-1, 1.0, 3.0, 10.0};
    setenv("WIENER_OPTOMECH_THREADS", "1", 1);
    const auto serial = squeezing_scan(squeeze_system(), grid, AngleMode::Opt, 0.02);
    setenv("WIENER_OPTOMECH_THREADS", "4", 1);
    const auto threaded = squeezing_scan(squeeze_system(), grid, AngleMode::Opt, 0.02);
    unsetenv("WIENER_OPTOMECH_THREADS");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(serial[k].ratio_causal == threaded[k].ratio_causal);
        CHECK(serial[k].ratio_estimated == threaded[k].ratio_estimated);
    }
}
