#include "wom/spectra.hpp"

#include <cmath>

namespace wom {

std::vector<double> frequency_grid(double omega_m, int per_decade) {
    if (!(omega_m > 0) || per_decade < 1) throw Error("spectra", ErrorKind::InvalidInput, "frequency_grid needs omega_m > 0");
    std::vector<double> w{0.0};
    const int n = 6 * per_decade;
    for (int i = 0; i <= n; ++i) w.push_back(omega_m * std::pow(10.0, -3.0 + static_cast<double>(i) / per_decade));
    return w;
}

}  // namespace wom
