#include "wom/ratfun.hpp"

#include <array>
#include <limits>

namespace wom {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    std::complex<double> value;
    double abs_value;
    double error;   // |Kronrod - Gauss| above the rounding floor of the segment
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class G>
Segment gk15(const G& g, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::complex<double> fc = g(c);
    std::complex<double> k = fc * kWgk[7];
    std::complex<double> gs = fc * kWg[3];
    double ka = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const std::complex<double> f1 = g(c - dx), f2 = g(c + dx);
        k += kWgk[j] * (f1 + f2);
        ka += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gs += kWg[j / 2] * (f1 + f2);
    }
    // Differences below a few hundred ulps of the absolute sum are rounding, not truncation.
    const double floor = 256 * std::numeric_limits<double>::epsilon() * ka * h;
    Segment s{a, b, k * h, ka * h, std::max(0.0, std::abs((k - gs) * h) - floor)};
    return s;
}

}  // namespace

QuadratureResult quadrature_real_line(const std::function<std::complex<double>(double)>& f, double rho,
                                      std::vector<double> pole_re, double rel_tol, int max_intervals) {
    const double half_pi = 1.5707963267948966;
    if (!(rho > 0) || !std::isfinite(rho)) rho = 1.0;
    // d omega / 2pi = rho sec^2(u) du / 2pi
    auto g = [&](double u) {
        const double cu = std::cos(u);
        const double w = rho * std::tan(u);
        return f(w) * (rho / (cu * cu) / (2 * half_pi * 2));
    };
    std::vector<double> cuts = {-half_pi, half_pi};
    for (double x : pole_re) cuts.push_back(std::atan(x / rho));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-15; }),
               cuts.end());

    std::priority_queue<Segment> heap;
    std::complex<double> total = 0;
    double abs_total = 0, err_total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Segment s = gk15(g, cuts[i], cuts[i + 1]);
        total += s.value;
        abs_total += s.abs_value;
        err_total += s.error;
        heap.push(s);
    }
    int n = static_cast<int>(heap.size());
    while (err_total > rel_tol * abs_total && n < max_intervals) {
        Segment s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) break;  // interval exhausted at double resolution
        Segment l = gk15(g, s.a, m), r = gk15(g, m, s.b);
        total += l.value + r.value - s.value;
        abs_total += l.abs_value + r.abs_value - s.abs_value;
        err_total += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
        ++n;
    }
    // Resum to limit accumulated cancellation in the running totals.
    std::complex<double> v = 0;
    double av = 0, ev = 0;
    while (!heap.empty()) {
        v += heap.top().value;
        av += heap.top().abs_value;
        ev += heap.top().error;
        heap.pop();
    }
    return {v, av, ev, n};
}

}  // namespace wom
