#include "qbell/numerics.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

namespace qbell {

namespace {

void require_hermitian(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("hermitian_eigen: matrix is not square");
    }
    const double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        throw std::invalid_argument("hermitian_eigen: asymmetry max|m - m^dag| = " +
                                    std::to_string(asym) + " exceeds 1e-10 * " +
                                    std::to_string(scale));
    }
}

Eigen::VectorXd zheevd(Eigen::MatrixXcd& work, char jobz) {
    const int n = static_cast<int>(work.rows());
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    const int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n,
                                    reinterpret_cast<lapack_complex_double*>(work.data()), n,
                                    w.data());
    if (info != 0) {
        throw NumericalInstabilityError("zheevd failed to converge, info = " +
                                        std::to_string(info));
    }
    return w;
}

}  // namespace

HermitianEigenResult hermitian_eigen(const Eigen::MatrixXcd& m) {
    require_hermitian(m);
    HermitianEigenResult result;
    result.eigenvectors = m;
    result.eigenvalues = zheevd(result.eigenvectors, 'V');
    return result;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
    require_hermitian(m);
    Eigen::MatrixXcd work = m;
    return zheevd(work, 'N');
}

double trace_norm(const Eigen::MatrixXcd& m) {
    return hermitian_eigenvalues(m).cwiseAbs().sum();
}

Eigen::MatrixXcd partial_trace(const DensityMatrix& rho, int keep) {
    if (keep != 1 && keep != 2) {
        throw std::invalid_argument("partial_trace: keep must be 1 or 2");
    }
    const int d1 = rho.trunc.n1_max + 1;
    const int d2 = rho.trunc.n2_max + 1;
    if (keep == 1) {
        Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(d1, d1);
        for (int a = 0; a < d1; ++a) {
            for (int b = 0; b < d1; ++b) {
                Complex sum = 0.0;
                for (int c = 0; c < d2; ++c) sum += rho.mat(a * d2 + c, b * d2 + c);
                red(a, b) = sum;
            }
        }
        return red;
    }
    Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(d2, d2);
    for (int a = 0; a < d2; ++a) {
        for (int b = 0; b < d2; ++b) {
            Complex sum = 0.0;
            for (int c = 0; c < d1; ++c) sum += rho.mat(c * d2 + a, c * d2 + b);
            red(a, b) = sum;
        }
    }
    return red;
}

double expectation(const DensityMatrix& rho, const PureStateVector& psi) {
    if (!(rho.trunc == psi.trunc)) {
        throw std::invalid_argument("expectation: density matrix and state truncations differ");
    }
    const Complex value = psi.amps.dot(rho.mat * psi.amps);  // dot conjugates its left operand
    const double scale = std::max(1.0, std::abs(value.real()));
    if (std::abs(value.imag()) > 1e-12 * scale) {
        throw NumericalInstabilityError("expectation: imaginary residue " +
                                        std::to_string(value.imag()) + " exceeds 1e-12 * scale");
    }
    const double re = value.real();
    if (re < -1e-9 || re > 1.0 + 1e-9) {
        throw NumericalInstabilityError("expectation: value " + std::to_string(re) +
                                        " outside [-1e-9, 1 + 1e-9]");
    }
    return re;
}

}  // namespace qbell
