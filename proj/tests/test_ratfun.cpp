#include "wom/ratfun.hpp"

#include <doctest.h>

#include <algorithm>

using namespace wom;
using C = std::complex<double>;
using P = Poly<double>;
using RF = RationalFn<double>;

namespace {

bool has_root(const std::vector<C>& roots, C r, double tol) {
    return std::any_of(roots.begin(), roots.end(), [&](C x) { return std::abs(x - r) < tol * std::abs(r); });
}

// 1 / (omega^2 + a^2)
RF lorentzian(double a) { return RF(P::constant(C(1)), {P({C(a * a), C(0), C(1)})}); }

}  // namespace

TEST_CASE("polynomial roots from the companion matrix are refined to full precision") {
    const std::vector<C> expect = {C(1, 0), C(0, -2), C(3, -1), C(-0.5, 4)};
    const auto roots = poly_roots(poly_from_roots<double>(expect));
    REQUIRE(roots.size() == expect.size());
    for (const C& r : expect) CHECK(has_root(roots, r, 1e-13));
}

TEST_CASE("zero roots are split off exactly") {
    const auto roots = poly_roots(P({C(0), C(0), C(-4), C(1)}));
    CHECK(std::count(roots.begin(), roots.end(), C(0)) == 2);
    CHECK(has_root(roots, C(4), 1e-15));
}

TEST_CASE("polynomial arithmetic") {
    const P a({C(1), C(2)});
    const P b({C(0, 1), C(0), C(3)});
    const auto [q, r] = divmod(a * b + P({C(5)}), b);
    CHECK(std::abs(q(C(0.7)) - a(C(0.7))) < 1e-14);
    CHECK(std::abs(r(C(0.7)) - C(5)) < 1e-14);
    CHECK(std::abs(b.derivative()(C(2)) - C(12)) < 1e-14);
    CHECK(std::abs(b.conj_reflect()(C(1.5)) - std::conj(b(C(1.5)))) < 1e-14);
    CHECK(std::abs(a.negate_argument()(C(0.3)) - a(C(-0.3))) < 1e-14);
}

TEST_CASE("partial fractions of simple and double poles") {
    const C p1(1, -1), p2(-2, 3);
    const RF f(P::constant(C(1)), {P::linear_root(p1), P::linear_root(p2)});
    const auto ps = partial_fractions(f);
    REQUIRE(ps.poles.size() == 2);
    for (const auto& pl : ps.poles) {
        const C expect = std::abs(pl.p - p1) < 1e-12 ? 1.0 / (p1 - p2) : 1.0 / (p2 - p1);
        CHECK(std::abs(pl.res[0] - expect) < 1e-14);
    }
    const C w(0.3, 0.2);
    CHECK(std::abs(ps(w) - f(w)) < 1e-14 * std::abs(f(w)));

    const RF g(P({C(2), C(1)}), {P::linear_root(p1), P::linear_root(p1)});
    const auto pg = partial_fractions(g);
    REQUIRE(pg.poles.size() == 1);
    CHECK(pg.poles[0].mult == 2);
    // (w + 2)/(w - p)^2 = 1/(w - p) + (p + 2)/(w - p)^2
    CHECK(std::abs(pg.poles[0].res[0] - C(1)) < 1e-13);
    CHECK(std::abs(pg.poles[0].res[1] - (p1 + C(2))) < 1e-13);
}

TEST_CASE("residue integral of a Lorentzian over d omega / 2pi") {
    for (double a : {1e-3, 1.0, 7e5}) {
        const C v = integrate_real_line(lorentzian(a));
        CHECK(std::abs(v.real() - 1 / (2 * a)) < 1e-13 / (2 * a));
        CHECK(std::abs(v.imag()) < 1e-13 / (2 * a));
    }
}

TEST_CASE("residue and quadrature routes agree on a high-Q resonance") {
    // |1/F|^2 with F = w0^2 - i g w - w^2 integrates to 1/(2 g w0^2).
    const double w0 = 3.0, g = 3e-4;
    const P F({C(w0 * w0), C(0, -g), C(-1)});
    const RF f(P::constant(C(1)), {F, F.conj_reflect()});
    const auto rep = integrate_real_line_report(f);
    CHECK(rep.cross_checked);
    CHECK(std::abs(rep.residue.real() * 2 * g * w0 * w0 - 1) < 1e-12);
    CHECK(rep.rel_diff < 1e-9);
}

TEST_CASE("integrals that do not converge are rejected") {
    const RF slow(P({C(0), C(1)}), {P({C(1), C(0), C(1)})});
    CHECK_THROWS_AS(integrate_residues(slow), Error);
    try {
        integrate_residues(slow);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Divergent);
    }
    const RF real_pole(P::constant(C(1)), {P::linear_root(C(2)), P({C(1), C(0), C(1)})});
    try {
        integrate_residues(real_pole);
        FAIL("expected a Divergent error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Divergent);
    }
}

TEST_CASE("causal and anti-causal parts split poles by half-plane and sum to the whole") {
    const RF f(P({C(1), C(2)}), {P::linear_root(C(1, -2)), P::linear_root(C(-3, 1)), P::linear_root(C(0.5, -0.1))});
    const RF plus = causal_part(f);
    const RF minus = anti_causal_part(f);
    for (const auto& pl : partial_fractions(plus).poles) CHECK(pl.p.imag() < 0);
    for (const auto& pl : partial_fractions(minus).poles) CHECK(pl.p.imag() > 0);
    for (double w : {-10.0, -0.3, 0.0, 0.7, 40.0}) {
        const C x(w);
        CHECK(std::abs(plus(x) + minus(x) - f(x)) < 1e-13 * std::abs(f(x)));
    }
}

TEST_CASE("projections require strictly proper input") {
    const RF improper(P({C(1), C(0), C(1)}), {P({C(4), C(0), C(1)})});
    CHECK_THROWS_AS(causal_part(improper), Error);
}

TEST_CASE("spectral factorization of a rational spectrum") {
    // (w^2 + 4) / (w^2 + 1): S_C = (w + 2i)/(w + i).
    const RF S(P({C(4), C(0), C(1)}), {P({C(1), C(0), C(1)})});
    const auto fac = spectral_factorize(S);
    REQUIRE(fac.zeros_lhp.size() == 1);
    REQUIRE(fac.poles_lhp.size() == 1);
    CHECK(std::abs(fac.zeros_lhp[0] - C(0, -2)) < 1e-14);
    CHECK(std::abs(fac.poles_lhp[0] - C(0, -1)) < 1e-14);
    for (double w : {-5.0, 0.0, 0.25, 3.0}) {
        const C x(w);
        CHECK(std::abs(fac.causal(x) * fac.anti_causal(x) - S(x)) < 1e-14 * std::abs(S(x)));
        CHECK(std::abs(fac.anti_causal(x) - std::conj(fac.causal(x))) < 1e-14 * std::abs(fac.causal(x)));
        CHECK(std::abs(fac.inverse_causal()(x) * fac.causal(x) - C(1)) < 1e-14);
    }
}

TEST_CASE("spectra with real-axis zeros are not factorizable") {
    const RF S(P({C(0), C(0), C(1)}), {P({C(1), C(0), C(1)}), P({C(2), C(0), C(1)})});
    try {
        spectral_factorize(S);
        FAIL("expected NotPositive");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPositive);
    }
}

TEST_CASE("inverse transform of a causal exponential") {
    // x(t) = exp(-g t) for t > 0 has X(w) = 1/(g - i w) = i/(w + i g).
    const double g = 0.8;
    const RF X(P::constant(C(0, 1)), {P::linear_root(C(0, -g))});
    const auto ps = partial_fractions(X);
    for (double t : {0.1, 1.0, 5.0}) {
        const C x = inverse_transform_positive_time(ps, t);
        CHECK(std::abs(x - C(std::exp(-g * t))) < 1e-14);
    }
}

TEST_CASE("extended precision residue integral") {
    using H = HighReal;
    using PH = Poly<H>;
    const Cx<H> one(H(1));
    const RationalFn<H> f(PH::constant(one), {PH({Cx<H>(H(9)), Cx<H>(H(0)), one})});
    const Cx<H> v = integrate_residues(f);
    const H err = abs(real(v) - H(1) / H(6));
    CHECK(to_double(err) < 1e-45);
}

TEST_CASE("standalone quadrature on the real line") {
    const auto r = quadrature_real_line([](double w) { return C(1 / (w * w + 4)); }, 2.0, {0.0}, 1e-13);
    CHECK(std::abs(r.value.real() - 0.25) < 1e-12);
    CHECK(r.abs_integral == doctest::Approx(0.25).epsilon(1e-12));
}
