#pragma once

#include <vector>

#include "qbell/fock_core.hpp"
#include "qbell/sweep.hpp"

namespace qbell {

/// Location and value of the restricted fully entangled fraction maximum.
struct FefEvaluation {
    double alpha = 0.0;
    double value = 0.0;  // a fidelity, clipped to [0, 1]
};

struct EntanglementBound {
    double fef = 0.0;
    double bound_bits = 0.0;
};

struct FefSearchConfig {
    double alpha_hi = 0.0;   // 0 means max(2 beta, 4)
    int grid_points = 200;   // coarse scan before golden-section refinement
    double alpha_tol = 1e-6;
};

/// <Phi2(alpha)| rho(Phi2(beta), theta) |Phi2(alpha)> in closed form: the
/// eight signed exponential products over the +-alpha / +-beta branches.
/// Below alpha = 1e-3 an algebraically identical regrouping takes over to
/// dodge the 0/0 cancellation against the divergent "-" normalizer.
double fef_closed_form(double alpha, double beta, const ThermalParameter& theta);

/// Restricted fully entangled fraction: max of fef_closed_form over real
/// alpha in (0, alpha_hi]. Coarse grid, then golden-section refinement.
FefEvaluation maximize_fef(double beta, const ThermalParameter& theta,
                           const FefSearchConfig& config = {});

/// Lower bound on the entanglement of formation in bits:
/// h2(1/2 + sqrt(f(1-f))) for f >= 1/2, else 0.
double eof_lower_bound(double fef);

/// Rows (beta, beta_sq, theta, alpha_star, fef, bound_bits) over the grid,
/// plus a per-beta metadata report of the first theta losing the bound.
SweepResult entanglement_threshold_scan(const std::vector<double>& beta_grid,
                                        const std::vector<double>& theta_grid);

}  // namespace qbell
