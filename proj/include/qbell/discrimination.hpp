#pragma once

#include <vector>

#include "qbell/sweep.hpp"
#include "qbell/thermal_density.hpp"

namespace qbell {

enum class StatePair { Phi2Phi4, Phi1Phi3 };

const char* pair_name(StatePair pair);

/// Minimax error for two pure states of overlap kappa: (1 - sqrt(1-|k|^2))/2.
double pure_minimax_error(Complex overlap);

/// Bayes-optimal error for priors (p0, 1-p0): p0 minus the sum of the
/// positive eigenvalues of p0 rho0 - p1 rho1 (eigenvalues within the
/// truncation-noise threshold of zero are excluded). When both inputs carry
/// low-rank factors the spectrum is taken on their joint column space, which
/// is exact; otherwise the dense difference is diagonalized.
double helstrom_error(const DensityMatrix& rho0, const DensityMatrix& rho1, double prior0 = 0.5);

/// Minimax error via the symmetry reduction: verifies that rho1 is the
/// mode-2 pi rotation of rho0 (within 1e-8) and evaluates helstrom_error at
/// uniform priors. Throws SymmetryError when the precondition fails.
double minimax_error_symmetric(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Rows (pair, beta, mean_n, theta, pe, n1_max, n2_max, trace_deficit) over
/// the grid; truncation per-point from TruncationSpec::suggest.
SweepResult error_sweep(StatePair pair, const std::vector<double>& beta_grid,
                        const std::vector<double>& theta_list, double trace_tolerance = 1e-6);

}  // namespace qbell
