#pragma once

// Rational functions of angular frequency omega with complex coefficients.
//
// Convention: Fourier kernel e^{i omega t}. A causal response (supported on t >= 0) is analytic in
// the upper half-plane, so causal <=> all poles in the LOWER half-plane (Im p < 0).

#include "wom/errors.hpp"
#include "wom/scalar.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <sstream>
#include <vector>

namespace wom {

template <class R>
class Poly {
public:
    using C = Cx<R>;

    Poly() = default;
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const C& a) { return Poly({a}); }
    // omega - root
    static Poly linear_root(const C& root) { return Poly({-root, C(R(1))}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<C>& coeffs() const { return c_; }
    C coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : C(R(0)); }
    C lead() const { return c_.empty() ? C(R(0)) : c_.back(); }

    C operator()(const C& w) const {
        C acc(R(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * w + *it;
        return acc;
    }

    Poly derivative() const {
        std::vector<C> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * R(static_cast<double>(k)));
        return Poly(std::move(d));
    }

    // P#(w) = conj(P(conj w)); equals conj(P(w)) on the real axis.
    Poly conj_reflect() const {
        using std::conj;
        std::vector<C> d(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) d[k] = conj(c_[k]);
        return Poly(std::move(d));
    }

    // P(-w)
    Poly negate_argument() const {
        std::vector<C> d(c_);
        for (std::size_t k = 1; k < d.size(); k += 2) d[k] = -d[k];
        return Poly(std::move(d));
    }

    // Degree after dropping leading coefficients that are negligible at frequency scale rho.
    int effective_degree(const R& rho, const R& rel) const {
        using std::abs;
        R scale(0);
        std::vector<R> mag(c_.size());
        R rk(1);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            mag[k] = abs(c_[k]) * rk;
            scale = std::max(scale, mag[k]);
            rk *= rho;
        }
        int d = degree();
        while (d >= 0 && mag[d] <= rel * scale) --d;
        return d;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<C> r(std::max(a.c_.size(), b.c_.size()), C(R(0)));
        for (std::size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<C> r(a.c_);
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, C(R(0)));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const C& s, const Poly& a) {
        std::vector<C> r(a.c_);
        for (auto& x : r) x = x * s;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    // Quotient and remainder of a / b.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw Error("ratfun", ErrorKind::InvalidInput, "division by zero polynomial");
        if (a.degree() < b.degree()) return {Poly(), a};
        std::vector<C> rem(a.c_);
        const int db = b.degree();
        std::vector<C> q(a.degree() - db + 1, C(R(0)));
        for (int k = a.degree() - db; k >= 0; --k) {
            C t = rem[k + db] / b.lead();
            q[k] = t;
            for (int j = 0; j <= db; ++j) rem[k + j] -= t * b.c_[j];
        }
        rem.resize(db);
        return {Poly(std::move(q)), Poly(std::move(rem))};
    }

    // Taylor coefficients of P about w0, orders 0..n-1.
    std::vector<C> taylor(const C& w0, int n) const {
        std::vector<C> work(c_);
        std::vector<C> out;
        for (int k = 0; k < n; ++k) {
            if (work.empty()) {
                out.push_back(C(R(0)));
                continue;
            }
            // Synthetic division by (w - w0): remainder is the value, quotient continues.
            C acc(R(0));
            std::vector<C> quot(work.size() > 1 ? work.size() - 1 : 0, C(R(0)));
            for (int j = static_cast<int>(work.size()) - 1; j >= 0; --j) {
                acc = acc * w0 + work[j];
                if (j > 0) quot[j - 1] = acc;
            }
            out.push_back(acc);
            work = std::move(quot);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == C(R(0))) c_.pop_back();
    }
    std::vector<C> c_;
};

template <class R>
Poly<R> poly_from_roots(const std::vector<Cx<R>>& roots) {
    Poly<R> p = Poly<R>::constant(Cx<R>(R(1)));
    for (const auto& r : roots) p = p * Poly<R>::linear_root(r);
    return p;
}

// Polynomial roots via companion-matrix eigenvalues (binary64) followed by Newton polishing in R.
template <class R>
std::vector<Cx<R>> poly_roots(const Poly<R>& p) {
    using C = Cx<R>;
    using std::abs;
    const int n = p.degree();
    if (n < 1) return {};
    std::vector<C> roots;
    // Exact zero roots.
    int z = 0;
    while (p.coeff(z) == C(R(0))) ++z;
    for (int k = 0; k < z; ++k) roots.push_back(C(R(0)));
    std::vector<C> q(p.coeffs().begin() + z, p.coeffs().end());
    const int m = n - z;
    if (m == 0) return roots;
    if (m == 1) {
        roots.push_back(-q[0] / q[1]);
        return roots;
    }

    std::vector<std::complex<double>> qd(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) qd[k] = to_cdouble<R>(q[k]);
    // Scale omega = rho * s so that the scaled roots have modulus O(1).
    double rho = 0;
    for (int k = 0; k < m; ++k) {
        const double r = std::pow(std::abs(qd[k] / qd[m]), 1.0 / (m - k));
        if (std::isfinite(r)) rho = std::max(rho, r);
    }
    if (!(rho > 0) || !std::isfinite(rho)) {
        throw Error("ratfun", ErrorKind::RootFindingFailure, "degenerate coefficient scale");
    }
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
    for (int k = 1; k < m; ++k) comp(k, k - 1) = 1.0;
    for (int k = 0; k < m; ++k) {
        comp(k, m - 1) = -(qd[k] / qd[m]) * std::pow(rho, static_cast<double>(k - m));
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) {
        throw Error("ratfun", ErrorKind::RootFindingFailure, "companion eigen-solve did not converge");
    }
    Poly<R> qp(std::vector<C>(q.begin(), q.end()));
    Poly<R> dq = qp.derivative();
    const int polish_steps = std::is_same_v<R, double> ? 2 : 8;
    for (int k = 0; k < m; ++k) {
        std::complex<double> s = es.eigenvalues()[k] * rho;
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw Error("ratfun", ErrorKind::RootFindingFailure, "non-finite eigenvalue");
        }
        C x = from_cdouble<R>(s);
        R fx = abs(qp(x));
        for (int it = 0; it < polish_steps; ++it) {
            C d = dq(x);
            if (d == C(R(0))) break;
            C nx = x - qp(x) / d;
            R fn = abs(qp(nx));
            if (!(fn < fx)) break;
            x = nx;
            fx = fn;
        }
        roots.push_back(x);
    }
    return roots;
}

template <class R>
struct Pole {
    Cx<R> p;
    int mult = 1;
    // res[j-1] multiplies 1/(omega - p)^j.
    std::vector<Cx<R>> res;
};

template <class R>
struct PoleSet {
    Poly<R> polynomial_part;
    std::vector<Pole<R>> poles;
    // True when distinct computed roots were merged into a multiple pole.
    bool near_degenerate = false;

    Cx<R> operator()(const Cx<R>& w) const {
        Cx<R> acc = polynomial_part(w);
        for (const auto& pl : poles) {
            Cx<R> inv = Cx<R>(R(1)) / (w - pl.p);
            Cx<R> pw = inv;
            for (int j = 0; j < pl.mult; ++j) {
                acc += pl.res[j] * pw;
                pw *= inv;
            }
        }
        return acc;
    }
};

template <class R>
class RationalFn {
public:
    using C = Cx<R>;
    using P = Poly<R>;

    RationalFn() : num_(P()) {}
    // Factors are normalized to monic; their leading coefficients fold into the numerator.
    RationalFn(P num, std::vector<P> den_factors) : num_(std::move(num)) {
        C scale(R(1));
        for (auto& f : den_factors) {
            if (f.is_zero()) throw Error("ratfun", ErrorKind::InvalidInput, "zero denominator factor");
            if (f.degree() == 0) {
                scale = scale * f.lead();
                continue;
            }
            C l = f.lead();
            scale = scale * l;
            den_.push_back((C(R(1)) / l) * f);
        }
        num_ = (C(R(1)) / scale) * num_;
    }
    static RationalFn polynomial(P num) { return RationalFn(std::move(num), {}); }
    static RationalFn constant(const C& a) { return polynomial(P::constant(a)); }

    const P& num() const { return num_; }
    const std::vector<P>& den_factors() const { return den_; }

    int den_degree() const {
        int d = 0;
        for (const auto& f : den_) d += f.degree();
        return d;
    }
    P den_expanded() const {
        P d = P::constant(C(R(1)));
        for (const auto& f : den_) d = d * f;
        return d;
    }

    C operator()(const C& w) const {
        C d(R(1));
        for (const auto& f : den_) d *= f(w);
        return num_(w) / d;
    }

    RationalFn conj_reflect() const {
        std::vector<P> d;
        for (const auto& f : den_) d.push_back(f.conj_reflect());
        RationalFn r;
        r.num_ = num_.conj_reflect();
        r.den_ = std::move(d);
        return r;
    }

    // Typical frequency scale: geometric mean of denominator root moduli estimated from coefficients.
    R frequency_scale() const {
        using std::abs;
        using std::pow;
        R s(1);
        int n = 0;
        for (const auto& f : den_) {
            R c0 = abs(f.coeff(0));
            if (c0 > 0) {
                s *= pow(c0, R(1) / R(f.degree()));
                ++n;
            }
        }
        return n > 0 ? R(pow(s, R(1) / R(n))) : R(1);
    }

    // Numerator degree ignoring leading coefficients at the rounding level.
    int num_effective_degree() const {
        return num_.effective_degree(frequency_scale(), R(256) * epsilon_of<R>());
    }

    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        RationalFn r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        r.den_.insert(r.den_.end(), b.den_.begin(), b.den_.end());
        return r;
    }
    friend RationalFn operator*(const C& s, const RationalFn& a) {
        RationalFn r = a;
        r.num_ = s * a.num_;
        return r;
    }
    friend RationalFn operator*(const P& p, const RationalFn& a) {
        RationalFn r = a;
        r.num_ = p * a.num_;
        return r;
    }
    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        // Least common multiple of the factor multisets (factors matched by exact equality).
        std::vector<P> lcm = a.den_;
        std::vector<bool> used(lcm.size(), false);
        std::vector<P> b_extra;
        for (const auto& f : b.den_) {
            bool found = false;
            for (std::size_t i = 0; i < lcm.size(); ++i) {
                if (!used[i] && lcm[i] == f) {
                    used[i] = true;
                    found = true;
                    break;
                }
            }
            if (!found) b_extra.push_back(f);
        }
        // a_extra: factors of a not matched by b.
        P a_mult = P::constant(C(R(1)));
        for (std::size_t i = 0; i < lcm.size(); ++i)
            if (!used[i]) a_mult = a_mult * lcm[i];
        P b_mult = P::constant(C(R(1)));
        for (const auto& f : b_extra) b_mult = b_mult * f;
        RationalFn r;
        r.num_ = a.num_ * b_mult + b.num_ * a_mult;
        r.den_ = lcm;
        r.den_.insert(r.den_.end(), b_extra.begin(), b_extra.end());
        return r;
    }
    friend RationalFn operator-(const RationalFn& a) { return C(R(-1)) * a; }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

private:
    P num_;
    std::vector<P> den_;
};

// Real part on the real axis: (f + f#)/2.
template <class R>
RationalFn<R> real_part(const RationalFn<R>& f) {
    return Cx<R>(R(0.5)) * (f + f.conj_reflect());
}

// |f|^2 on the real axis.
template <class R>
RationalFn<R> abs2(const RationalFn<R>& f) {
    return f * f.conj_reflect();
}

namespace detail {

template <class R>
bool close_rel(const Cx<R>& a, const Cx<R>& b, const R& rel) {
    using std::abs;
    R m = std::max(abs(a), abs(b));
    return abs(a - b) <= rel * m;
}

// Roots of all denominator factors, merged into clusters with multiplicity.
template <class R>
std::vector<std::pair<Cx<R>, int>> clustered_roots(const RationalFn<R>& f, bool& near_degenerate) {
    using C = Cx<R>;
    std::vector<C> all;
    for (const auto& fac : f.den_factors()) {
        auto r = poly_roots(fac);
        all.insert(all.end(), r.begin(), r.end());
    }
    // Coincident roots come from repeated factors; genuine high-Q pairs can sit ~1e-12 apart.
    const R tol = R(1024) * epsilon_of<R>();
    std::vector<int> cluster(all.size(), -1);
    std::vector<std::pair<C, int>> out;
    std::vector<std::vector<std::size_t>> members;
    near_degenerate = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = static_cast<int>(members.size());
        members.push_back({i});
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (cluster[j] < 0 && close_rel<R>(all[i], all[j], tol)) {
                cluster[j] = cluster[i];
                members.back().push_back(j);
            }
        }
    }
    for (const auto& mem : members) {
        C sum(R(0));
        for (auto k : mem) {
            sum += all[k];
            if (!(all[k] == all[mem[0]])) near_degenerate = true;
        }
        out.emplace_back(sum / R(static_cast<double>(mem.size())), static_cast<int>(mem.size()));
    }
    return out;
}

}  // namespace detail

template <class R>
PoleSet<R> partial_fractions(const RationalFn<R>& f) {
    using C = Cx<R>;
    PoleSet<R> ps;
    auto [q, rem] = divmod(f.num(), f.den_expanded());
    ps.polynomial_part = q;
    auto clusters = detail::clustered_roots(f, ps.near_degenerate);
    for (std::size_t a = 0; a < clusters.size(); ++a) {
        const C p = clusters[a].first;
        const int k = clusters[a].second;
        // Taylor series about p of the remainder and of the product of the other factors.
        std::vector<C> num_t = rem.taylor(p, k);
        std::vector<C> h(k, C(R(0)));
        h[0] = C(R(1));
        for (std::size_t b = 0; b < clusters.size(); ++b) {
            if (b == a) continue;
            const C d = p - clusters[b].first;
            for (int e = 0; e < clusters[b].second; ++e) {
                // multiply series h by (delta + d)
                for (int j = k - 1; j >= 0; --j) h[j] = h[j] * d + (j > 0 ? h[j - 1] : C(R(0)));
            }
        }
        // g = num_t / h as a power series.
        std::vector<C> g(k, C(R(0)));
        for (int j = 0; j < k; ++j) {
            C acc = num_t[j];
            for (int i = 1; i <= j; ++i) acc -= h[i] * g[j - i];
            g[j] = acc / h[0];
        }
        Pole<R> pl;
        pl.p = p;
        pl.mult = k;
        pl.res.resize(k);
        for (int j = 1; j <= k; ++j) pl.res[j - 1] = g[k - j];
        ps.poles.push_back(std::move(pl));
    }
    return ps;
}

// Rebuilds a rational function from a subset of poles of a partial-fraction expansion.
template <class R>
RationalFn<R> rational_from_poles(const std::vector<Pole<R>>& poles) {
    using C = Cx<R>;
    using P = Poly<R>;
    std::vector<P> den;
    P num;
    for (std::size_t a = 0; a < poles.size(); ++a) {
        for (int e = 0; e < poles[a].mult; ++e) den.push_back(P::linear_root(poles[a].p));
    }
    for (std::size_t a = 0; a < poles.size(); ++a) {
        P others = P::constant(C(R(1)));
        for (std::size_t b = 0; b < poles.size(); ++b) {
            if (b == a) continue;
            for (int e = 0; e < poles[b].mult; ++e) others = others * P::linear_root(poles[b].p);
        }
        const int k = poles[a].mult;
        for (int j = 1; j <= k; ++j) {
            P t = P::constant(poles[a].res[j - 1]);
            for (int e = 0; e < k - j; ++e) t = t * P::linear_root(poles[a].p);
            num = num + t * others;
        }
    }
    return RationalFn<R>(num, den);
}

namespace detail {

template <class R>
void require_strictly_proper(const RationalFn<R>& f, const char* op) {
    if (f.num_effective_degree() >= f.den_degree()) {
        std::ostringstream os;
        os << op << " requires a strictly proper function (deg num " << f.num_effective_degree()
           << ", deg den " << f.den_degree() << ")";
        throw Error("ratfun", ErrorKind::InvalidInput, os.str());
    }
}

template <class R>
bool on_real_axis(const Cx<R>& p) {
    using std::abs;
    using std::imag;
    return abs(imag(p)) < R(16) * epsilon_of<R>() * abs(p) || abs(p) == R(0);
}

template <class R>
PoleSet<R> proper_poles(const RationalFn<R>& f, const char* op) {
    require_strictly_proper(f, op);
    PoleSet<R> ps = partial_fractions(f);
    for (const auto& pl : ps.poles) {
        if (on_real_axis<R>(pl.p)) {
            std::ostringstream os;
            os << op << ": pole on the real axis at " << to_cdouble<R>(pl.p);
            throw Error("ratfun", ErrorKind::RealAxisPole, os.str());
        }
    }
    return ps;
}

}  // namespace detail

// Terms with poles in the lower half-plane (causal under the e^{i omega t} convention).
template <class R>
RationalFn<R> causal_part(const RationalFn<R>& f) {
    using std::imag;
    auto ps = detail::proper_poles(f, "causal_part");
    std::vector<Pole<R>> keep;
    for (const auto& pl : ps.poles)
        if (imag(pl.p) < 0) keep.push_back(pl);
    return rational_from_poles(keep);
}

// Terms with poles in the upper half-plane.
template <class R>
RationalFn<R> anti_causal_part(const RationalFn<R>& f) {
    using std::imag;
    auto ps = detail::proper_poles(f, "anti_causal_part");
    std::vector<Pole<R>> keep;
    for (const auto& pl : ps.poles)
        if (imag(pl.p) > 0) keep.push_back(pl);
    return rational_from_poles(keep);
}

template <class R>
struct Factorization {
    RationalFn<R> causal;       // S_C: poles and zeros in the lower half-plane
    RationalFn<R> anti_causal;  // S_AC(omega) = conj(S_C(omega)) on the real axis
    R gain;
    std::vector<Cx<R>> zeros_lhp;
    std::vector<Cx<R>> poles_lhp;

    RationalFn<R> inverse_causal() const {
        std::vector<Poly<R>> den;
        for (const auto& z : zeros_lhp) den.push_back(Poly<R>::linear_root(z));
        return RationalFn<R>(Cx<R>(R(1) / gain) * poly_from_roots<R>(poles_lhp), den);
    }
    RationalFn<R> inverse_anti_causal() const { return inverse_causal().conj_reflect(); }
};

// Symmetric sample frequencies spanning the root scales of f.
template <class R>
std::vector<R> sample_frequencies(const std::vector<Cx<R>>& roots, int n) {
    using std::abs;
    R lo(1e300), hi(0);
    for (const auto& r : roots) {
        R a = abs(r);
        if (a > 0) {
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
    }
    if (hi == 0) {
        lo = 1;
        hi = 1;
    }
    const double llo = std::log10(to_double(lo)) - 2, lhi = std::log10(to_double(hi)) + 2;
    std::vector<R> out;
    const int half = n / 2;
    for (int k = 0; k < half; ++k) {
        const double e = llo + (lhi - llo) * (half == 1 ? 0.5 : double(k) / (half - 1));
        R w = R(std::pow(10.0, e));
        out.push_back(w);
        out.push_back(-w);
    }
    return out;
}

template <class R>
Factorization<R> spectral_factorize(const RationalFn<R>& S) {
    using C = Cx<R>;
    using std::abs;
    using std::imag;
    using std::real;
    using std::sqrt;
    if (S.num().is_zero()) throw Error("ratfun", ErrorKind::NotPositive, "spectrum is identically zero");
    std::vector<C> zeros = poly_roots(S.num());
    std::vector<C> poles;
    for (const auto& f : S.den_factors()) {
        auto r = poly_roots(f);
        poles.insert(poles.end(), r.begin(), r.end());
    }
    Factorization<R> out;
    for (const auto& z : zeros) {
        if (detail::on_real_axis<R>(z)) throw Error("ratfun", ErrorKind::NotPositive, "spectrum has a real zero");
        if (imag(z) < 0) out.zeros_lhp.push_back(z);
    }
    for (const auto& p : poles) {
        if (detail::on_real_axis<R>(p)) throw Error("ratfun", ErrorKind::RealAxisPole, "spectrum has a real pole");
        if (imag(p) < 0) out.poles_lhp.push_back(p);
    }
    if (2 * out.zeros_lhp.size() != zeros.size() || 2 * out.poles_lhp.size() != poles.size()) {
        throw Error("ratfun", ErrorKind::FactorizationMismatch, "roots are not in conjugate pairs");
    }
    const C k2 = S.num().lead();
    if (!(real(k2) > 0) || abs(imag(k2)) > R(1e-8) * abs(k2)) {
        throw Error("ratfun", ErrorKind::NotPositive, "leading coefficient is not positive");
    }
    out.gain = sqrt(real(k2));
    std::vector<Poly<R>> den;
    for (const auto& p : out.poles_lhp) den.push_back(Poly<R>::linear_root(p));
    out.causal = RationalFn<R>(C(out.gain) * poly_from_roots<R>(out.zeros_lhp), den);
    out.anti_causal = out.causal.conj_reflect();

    std::vector<C> all = zeros;
    all.insert(all.end(), poles.begin(), poles.end());
    for (const R& w : sample_frequencies<R>(all, 64)) {
        const C x(w);
        const C s = S(x);
        if (!(real(s) > 0)) throw Error("ratfun", ErrorKind::NotPositive, "spectrum is not positive on the real axis");
        const C prod = out.causal(x) * out.anti_causal(x);
        if (abs(prod - s) > R(1e-8) * abs(s)) {
            throw Error("ratfun", ErrorKind::FactorizationMismatch, "S_C * S_AC differs from S");
        }
    }
    return out;
}

struct QuadratureResult {
    std::complex<double> value;
    double abs_integral = 0;  // integral of |f| d omega / 2 pi
    double error_estimate = 0;
    int intervals = 0;
};

// Adaptive Gauss-Kronrod (7/15) quadrature of f(omega) d omega / 2 pi over the real line under
// omega = rho tan u. Breakpoints in u are placed at the real parts of the poles.
QuadratureResult quadrature_real_line(const std::function<std::complex<double>(double)>& f, double rho,
                                      std::vector<double> pole_re, double rel_tol = 1e-13,
                                      int max_intervals = 200000);

template <class R>
struct IntegralReport {
    Cx<R> residue;
    bool cross_checked = false;
    QuadratureResult quad;
    double rel_diff = 0;  // |residue - quadrature| / max(|residue|, integral of |f|)
};

struct IntegrateOptions {
    bool cross_check = true;
    double disagreement_tol = 1e-6;
    // Near a peak of quality factor Q the binary64 integrand carries ~eps*Q relative noise, so
    // tighter quadrature targets only burn intervals.
    double quad_rel_tol = 1e-10;
    int max_intervals = 20000;
};

template <class R>
IntegralReport<R> integrate_real_line_report(const RationalFn<R>& f, const IntegrateOptions& opt = {}) {
    using C = Cx<R>;
    using std::imag;
    using std::real;
    if (f.num().is_zero()) return {};
    if (f.num_effective_degree() > f.den_degree() - 2) {
        std::ostringstream os;
        os << "integrand decays too slowly (deg num " << f.num_effective_degree() << ", deg den "
           << f.den_degree() << ")";
        throw Error("ratfun", ErrorKind::Divergent, os.str());
    }
    PoleSet<R> ps = partial_fractions(f);
    IntegralReport<R> rep;
    C sum(R(0));
    std::vector<double> re;
    double rho = 0;
    for (const auto& pl : ps.poles) {
        if (detail::on_real_axis<R>(pl.p)) throw Error("ratfun", ErrorKind::Divergent, "pole on the real axis");
        if (imag(pl.p) > 0) sum += pl.res[0];
        re.push_back(to_double(real(pl.p)));
        rho = std::max(rho, std::abs(to_cdouble<R>(pl.p)));
    }
    rep.residue = C(R(0), R(1)) * sum;
    if (opt.cross_check) {
        auto eval = [&f](double w) { return to_cdouble<R>(f(C(R(w)))); };
        // rho: geometric mean of pole moduli keeps both slow and fast scales in view.
        double lg = 0;
        for (const auto& pl : ps.poles) lg += std::log(std::abs(to_cdouble<R>(pl.p)));
        rho = ps.poles.empty() ? 1.0 : std::exp(lg / ps.poles.size());
        rep.quad = quadrature_real_line(eval, rho, re, opt.quad_rel_tol, opt.max_intervals);
        rep.cross_checked = true;
        const std::complex<double> r = to_cdouble<R>(rep.residue);
        const double scale = std::max(std::abs(r), rep.quad.abs_integral);
        rep.rel_diff = scale > 0 ? std::abs(r - rep.quad.value) / scale : 0.0;
        if (rep.rel_diff > opt.disagreement_tol) {
            std::ostringstream os;
            os << "residue " << r << " vs quadrature " << rep.quad.value << " (rel " << rep.rel_diff << ")";
            throw Error("ratfun", ErrorKind::OracleDisagreement, os.str());
        }
    }
    return rep;
}

template <class R>
Cx<R> integrate_real_line(const RationalFn<R>& f, const IntegrateOptions& opt = {}) {
    return integrate_real_line_report(f, opt).residue;
}

// Residue-only integral (no quadrature cross-check).
template <class R>
Cx<R> integrate_residues(const RationalFn<R>& f) {
    IntegrateOptions o;
    o.cross_check = false;
    return integrate_real_line_report(f, o).residue;
}

// x(t) = int d omega/2pi X(omega) e^{-i omega t} for t > 0: closes in the lower half-plane.
template <class R>
Cx<R> inverse_transform_positive_time(const PoleSet<R>& ps, const R& t) {
    using C = Cx<R>;
    using std::exp;
    using std::imag;
    C acc(R(0));
    const C mi(R(0), R(-1));
    for (const auto& pl : ps.poles) {
        if (!(imag(pl.p) < 0)) continue;
        const C e = exp(mi * pl.p * t);
        C tp(R(1));
        R fact(1);
        for (int j = 1; j <= pl.mult; ++j) {
            acc += pl.res[j - 1] * e * tp / fact;
            tp *= mi * t;
            fact *= R(j);
        }
    }
    return mi * acc;
}

}  // namespace wom
