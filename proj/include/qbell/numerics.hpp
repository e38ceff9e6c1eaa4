#pragma once

#include <Eigen/Dense>

#include "qbell/thermal_density.hpp"

namespace qbell {

/// Eigenvalues ascending, eigenvector columns orthonormal.
struct HermitianEigenResult {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

/// Full eigendecomposition of a Hermitian matrix (LAPACK zheevd).
/// Rejects input whose asymmetry max|m - m^dag| exceeds 1e-10 * max|m|.
HermitianEigenResult hermitian_eigen(const Eigen::MatrixXcd& m);

/// Eigenvalues only, ascending. Same Hermiticity gate as hermitian_eigen.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

/// Sum of |eigenvalue|: the trace norm of a Hermitian matrix.
double trace_norm(const Eigen::MatrixXcd& m);

/// Reduced density matrix over the kept mode (1 or 2); trace preserved.
Eigen::MatrixXcd partial_trace(const DensityMatrix& rho, int keep);

/// <psi| rho |psi> as a real number. The imaginary residue must stay within
/// 1e-12 * scale and the value within [-1e-9, 1 + 1e-9].
double expectation(const DensityMatrix& rho, const PureStateVector& psi);

}  // namespace qbell
