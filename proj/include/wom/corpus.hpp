#pragma once

#include "wom/params.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace wom {

struct CorpusPoint {
    std::string family;  // "ratio_map", "two_mode" or "squeeze"
    SystemParams sys;
    ModelOptions opt;
};

// Standard parameter sets of the three reference systems.
SystemParams ratio_map_system();  // m = 1 mg, Omega/2pi = 1 Hz, kappa/2pi = 1e8 Hz, Delta/kappa = 0.2, P = 1e-5 W
SystemParams two_mode_system();  // m = 0.92 g, Omega/2pi = 2.2 Hz, kappa_-/2pi = 1.64e6 Hz, Delta/kappa = 0.2, P = 1 W
SystemParams squeeze_system();  // m = 100 mg, Omega/2pi = 1 Hz, kappa/2pi = 1e3 Hz, Gamma/2pi = 1e-2 Hz

// Deterministic random corpus around the three families; homodyne angles within `min_gain_deg`
// of theta = alpha are redrawn.
std::vector<CorpusPoint> make_corpus(std::size_t n = 200, std::uint64_t seed = 20250923, double min_gain_deg = 3.0);

}  // namespace wom
