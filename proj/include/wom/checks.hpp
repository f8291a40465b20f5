#pragma once

#include "wom/corpus.hpp"

#include <string>
#include <vector>

namespace wom {

// Outcome of one property over a set of parameter points.
struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0;    // largest violation metric seen
    double limit = 0;    // threshold the metric is compared against
    std::size_t points = 0;
    std::string detail;  // worst point or failure message
};

// Max relative difference between closed-form and Wiener-Hopf filters (all four) on `samples`
// log-spaced frequencies, evaluated in extended precision.
double filter_equivalence_error(const SystemParams& p, const ModelOptions& opt, int samples = 64);

// Max |[f]_+ + [f]_- - f| / |f| on a frequency grid for f = S_qI / S_AC.
double projection_completeness_error(const SystemParams& p, const ModelOptions& opt);

// Max |S_AC(w) - conj(S_C(w))| / |S_C(w)| on the real axis.
double factorization_symmetry_error(const SystemParams& p, const ModelOptions& opt);

// Log-log slopes of alpha and beta against Gamma over a decreasing geometric sequence that starts
// at p.Gamma or at the back-action-dominated onset, whichever is smaller.
struct DissipationSlopes {
    double alpha_slope = 0, beta_slope = 0;
};
DissipationSlopes bias_dissipation_slopes(const SystemParams& p, const ModelOptions& opt, int steps = 6,
                                          double factor = 10.0);

CheckResult check_bias_identity(const std::vector<CorpusPoint>& corpus, double tol = 1e-7);
CheckResult check_filter_equivalence(const std::vector<CorpusPoint>& corpus, double tol = 1e-8);
CheckResult check_integral_table(const std::vector<CorpusPoint>& corpus, double tol = 1e-8);
CheckResult check_integral_table_quadrature(const std::vector<CorpusPoint>& corpus, double tol = 1e-8);
CheckResult check_projection_completeness(const std::vector<CorpusPoint>& corpus, double tol = 1e-10);
CheckResult check_factorization_symmetry(const std::vector<CorpusPoint>& corpus, double tol = 1e-12);
CheckResult check_orthogonality(const std::vector<CorpusPoint>& corpus, double tol = 1e-8);
CheckResult check_cross_term_vanishes(const std::vector<CorpusPoint>& corpus, double tol = 1e-10);
CheckResult check_dissipation_slopes(double tol = 0.1);
CheckResult check_symmetric_modes(double zeta = 1.0);
CheckResult check_heisenberg(const std::vector<CorpusPoint>& corpus);

std::vector<CheckResult> run_property_suite(const std::vector<CorpusPoint>& corpus);

}  // namespace wom
