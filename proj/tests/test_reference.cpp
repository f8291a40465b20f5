// Frozen values from tests/oracles/reference_values.py (40-digit quadrature, independent of the
// residue and closed-form code paths).
#include "wom/applications.hpp"
#include "wom/corpus.hpp"

#include <doctest.h>

using namespace wom;

namespace {

constexpr double kTwoPi = constants::two_pi;

struct Frozen {
    double alpha, omega_m, g_m, xi, c_theta, L_theta, n_th, n_bar, lambda_theta, omega_theta, gamma_theta;
    double V_q_c, V_p_c, V_qp_record, V_dq, V_dp, bias_alpha, bias_beta;
};

void compare(const SystemParams& p, const ModelOptions& opt, const Frozen& f) {
    const DerivedParams d = derive(p, opt);
    CHECK(d.alpha == doctest::Approx(f.alpha).epsilon(1e-14));
    CHECK(d.omega_m == doctest::Approx(f.omega_m).epsilon(1e-14));
    CHECK(d.g_m == doctest::Approx(f.g_m).epsilon(1e-14));
    CHECK(d.xi == doctest::Approx(f.xi).epsilon(1e-14));
    CHECK(d.c_theta == doctest::Approx(f.c_theta).epsilon(1e-13));
    CHECK(d.L_theta == doctest::Approx(f.L_theta).epsilon(1e-13));
    CHECK(d.n_th == doctest::Approx(f.n_th).epsilon(1e-14));
    CHECK(d.n_bar == doctest::Approx(f.n_bar).epsilon(1e-14));
    CHECK(d.lambda_theta == doctest::Approx(f.lambda_theta).epsilon(1e-13));
    CHECK(d.omega_theta == doctest::Approx(f.omega_theta).epsilon(1e-13));
    CHECK(d.gamma_theta == doctest::Approx(f.gamma_theta).epsilon(1e-12));

    const auto v = causal_variances(d);
    CHECK(v.V_q_c == doctest::Approx(f.V_q_c).epsilon(1e-11));
    CHECK(v.V_p_c == doctest::Approx(f.V_p_c).epsilon(1e-11));
    const auto s = build_spectra(d);
    const auto fl = closed_form_filters(d);
    CHECK(record_only_covariance(s, fl) == doctest::Approx(f.V_qp_record).epsilon(1e-9));
    const auto ri = relative_integrals(s, fl);
    CHECK(ri.V_dq == doctest::Approx(f.V_dq).epsilon(1e-9));
    CHECK(ri.V_dp == doctest::Approx(f.V_dp).epsilon(1e-9));

    const auto b = bias_closed(derive_as<HighReal>(p, opt));
    CHECK(to_double(b.alpha) == doctest::Approx(f.bias_alpha).epsilon(1e-14));
    CHECK(to_double(b.beta) == doctest::Approx(f.bias_beta).epsilon(1e-14));
}

}  // namespace

TEST_CASE("reference point: caption parameters of the angle map, theta = 0.3") {
    SystemParams p = ratio_map_system();
    p.theta = 0.3;
    compare(p, {},
            {0.38050637711236489, 7.0812611147266098, 18521.928157484792, 1.06351570335422, -0.22069287346634831,
             2.7353842601478361, 5546484040883.7652, 1393983481295.1341, 0.048705344398833628, 1358.3568150586348,
             1920.9827534600957, 39439.612743053001, 1451192254.7787001, 5349353.4972916807, 39442.192205514227,
             1451002410.9471192, 2.5794624612257342, -189843.83158092378});
}

TEST_CASE("reference point: thermal shot noise, strong damping") {
    SystemParams p = ratio_map_system();
    p.theta = 2.0;
    p.Gamma = kTwoPi * 0.5;
    ModelOptions opt;
    opt.shot_noise = ShotNoise::Thermal;
    compare(p, opt,
            {0.38050637711236489, 7.0812611147266098, 18521.928157484792, 1.06351570335422, 2.7410193755305679,
             -0.13358584516846894, 5546484040883.7652, 69699174064387.683, 7.194026418175519, 12592.30457090077,
             17808.205506429339, 2474.9789448634387, 7824995951.9745286, 3111533.213123445, 2475.8517169147235,
             7819476189.2063553, 0.8727720512848259, -5519762.7681733463});
}

TEST_CASE("reference point: detuned drive with a stiff optical spring") {
    SystemParams p = squeeze_system();
    p.Delta = 0.02 * p.kappa;
    p.Gamma = kTwoPi;
    p.theta = 1.2;
    compare(p, {},
            {0.039978687123290041, 3782345.8166817547, 272736.1588458739, 49.999999999862023, 12607.986287617762,
             5491.4454021512717, 10384058.905702805, 450097168.78073326, 158961318.22875751, 31867169.591205053,
             38453494.105685724, 0.24190468631596841, 17.171520251255268, 1.2296706013012808, 0.24190476210139057,
             17.171512760098289, 7.5785422166671395e-8, -7.4911569795940497e-6});
}

TEST_CASE("reference point: self-consistent coupling") {
    SystemParams p = ratio_map_system();
    p.P_in = 1e-3;
    p.theta = 0.3;
    ModelOptions opt;
    opt.coupling = CouplingModel::SelfConsistent;
    const DerivedParams d = derive(p, opt);
    CHECK(d.omega_m == doctest::Approx(19.551165074973953).epsilon(1e-13));
    CHECK(d.g_m == doctest::Approx(111469.27551656999).epsilon(1e-13));
    CHECK(d.xi == doctest::Approx(13.951465820499222).epsilon(1e-13));
}

TEST_CASE("reference point: two-mode log negativity") {
    TwoModeConfig c;
    c.base = two_mode_system();
    c.zeta = 10;
    c.gamma_m = kTwoPi * 6.9e-3;
    c.detuning_ratio = 0.2;
    const std::vector<double> grid = {c.gamma_m};

    // V_qp residue sums carry ~1e-10 relative error in binary64 at this Q; E_N amplifies it.
    const auto bare = entanglement_ratio_scan(c, grid).front();
    CHECK(bare.E_N_causal == doctest::Approx(-0.044255149641159191).epsilon(1e-8));
    CHECK(bare.E_N_est == doctest::Approx(-0.044238410927684989).epsilon(1e-8));

    ModelOptions opt;
    opt.coupling = CouplingModel::SelfConsistent;
    const auto sc = entanglement_ratio_scan(c, grid, opt).front();
    CHECK(sc.E_N_causal == doctest::Approx(0.36343127601108436).epsilon(1e-8));
    CHECK(sc.E_N_est == doctest::Approx(0.3636249045918253).epsilon(1e-8));
}

TEST_CASE("reference point: gas damping") {
    CHECK(gas_damping(1e5, 300, 1e-6, 20e3) == doctest::Approx(700.0).epsilon(1e-14));
    CHECK(gas_damping(1e-3, 300, 1e-6, 20e3) == doctest::Approx(7.0e-6).epsilon(1e-14));
}
