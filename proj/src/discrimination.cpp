#include "qbell/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbell/numerics.hpp"

namespace qbell {

const char* pair_name(StatePair pair) {
    return pair == StatePair::Phi2Phi4 ? "phi2phi4" : "phi1phi3";
}

double pure_minimax_error(Complex overlap) {
    const double k2 = std::norm(overlap);
    if (k2 > 1.0 + 1e-12) {
        throw std::invalid_argument("pure_minimax_error: |overlap| exceeds 1");
    }
    const double value = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - k2)));
    return std::clamp(value, 0.0, 0.5);
}

namespace {

// Eigenvalues of p0 W0 W0^dag - p1 W1 W1^dag restricted to the joint column
// space of [W0 W1]; the complement contributes only exact zeros.
Eigen::VectorXd projected_difference_spectrum(const Eigen::MatrixXcd& w0,
                                              const Eigen::MatrixXcd& w1, double p0, double p1) {
    Eigen::MatrixXcd stacked(w0.rows(), w0.cols() + w1.cols());
    stacked.leftCols(w0.cols()) = w0;
    stacked.rightCols(w1.cols()) = w1;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(stacked);
    const Eigen::Index rank_bound = std::min(stacked.rows(), stacked.cols());
    const Eigen::MatrixXcd basis =
        qr.householderQ() * Eigen::MatrixXcd::Identity(stacked.rows(), rank_bound);
    const Eigen::MatrixXcd s0 = basis.adjoint() * w0;
    const Eigen::MatrixXcd s1 = basis.adjoint() * w1;
    Eigen::MatrixXcd small = p0 * (s0 * s0.adjoint()) - p1 * (s1 * s1.adjoint());
    small = 0.5 * (small + small.adjoint().eval());
    return hermitian_eigenvalues(small);
}

}  // namespace

double helstrom_error(const DensityMatrix& rho0, const DensityMatrix& rho1, double prior0) {
    if (!(rho0.trunc.n1_max == rho1.trunc.n1_max && rho0.trunc.n2_max == rho1.trunc.n2_max)) {
        throw std::invalid_argument("helstrom_error: truncation specs differ");
    }
    if (!(prior0 >= 0.0 && prior0 <= 1.0)) {
        throw std::invalid_argument("helstrom_error: prior0 must lie in [0,1]");
    }
    const double trace_gap = std::abs(rho0.mat.trace().real() - rho1.mat.trace().real());
    const double trace_budget =
        2.0 * std::max(rho0.trunc.trace_tolerance, rho1.trunc.trace_tolerance);
    if (trace_gap > trace_budget) {
        throw TruncationError("helstrom_error: trace mismatch " + std::to_string(trace_gap) +
                              " between the states flags inconsistent truncation");
    }

    const double prior1 = 1.0 - prior0;
    Eigen::VectorXd eigenvalues;
    if (rho0.has_factor() && rho1.has_factor()) {
        eigenvalues = projected_difference_spectrum(rho0.factor, rho1.factor, prior0, prior1);
    } else {
        eigenvalues = hermitian_eigenvalues(prior0 * rho0.mat - prior1 * rho1.mat);
    }

    // Spectral-norm-relative floor: tiny positive eigenvalues are truncation
    // noise and would bias the error estimate downward.
    const double scale = std::max(std::abs(eigenvalues(0)),
                                  std::abs(eigenvalues(eigenvalues.size() - 1)));
    const double tol = 1e-12 * scale;
    double positive_sum = 0.0;
    for (int i = static_cast<int>(eigenvalues.size()) - 1; i >= 0; --i) {
        if (eigenvalues(i) <= tol) break;  // ascending order
        positive_sum += eigenvalues(i);
    }
    return std::clamp(prior0 - positive_sum, 0.0, 0.5);
}

double minimax_error_symmetric(const DensityMatrix& rho0, const DensityMatrix& rho1) {
    if (!(rho0.trunc.n1_max == rho1.trunc.n1_max && rho0.trunc.n2_max == rho1.trunc.n2_max)) {
        throw std::invalid_argument("minimax_error_symmetric: truncation specs differ");
    }
    const DensityMatrix rotated = apply_mode2_pi_rotation(rho0);
    const double mismatch = (rho1.mat - rotated.mat).cwiseAbs().maxCoeff();
    if (mismatch > 1e-8) {
        throw SymmetryError(
            "minimax_error_symmetric: states are not mode-2 pi-rotation partners "
            "(max deviation " +
            std::to_string(mismatch) +
            "); the uniform-prior reduction does not apply and explicit prior "
            "maximization is out of scope");
    }
    return helstrom_error(rho0, rho1, 0.5);
}

SweepResult error_sweep(StatePair pair, const std::vector<double>& beta_grid,
                        const std::vector<double>& theta_list, double trace_tolerance) {
    if (beta_grid.empty() || theta_list.empty()) {
        throw std::invalid_argument("error_sweep: grids must be nonempty");
    }
    const QuasiBellLabel label0 =
        pair == StatePair::Phi2Phi4 ? QuasiBellLabel::Phi2 : QuasiBellLabel::Phi1;
    const QuasiBellLabel label1 =
        pair == StatePair::Phi2Phi4 ? QuasiBellLabel::Phi4 : QuasiBellLabel::Phi3;

    SweepResult result;
    result.header = {"pair", "beta", "mean_n", "theta", "pe", "n1_max", "n2_max", "trace_deficit"};
    result.add_meta("pair", pair_name(pair));
    result.add_meta("trace_tolerance", trace_tolerance);
    const int nb = static_cast<int>(beta_grid.size());
    const int nt = static_cast<int>(theta_list.size());
    result.rows.resize(static_cast<size_t>(nb) * nt);

    parallel_for_index(nb * nt, [&](int idx) {
        const double beta = beta_grid[idx / nt];
        const ThermalParameter theta(theta_list[idx % nt]);
        const TruncationSpec trunc = TruncationSpec::suggest(beta, theta, trace_tolerance);
        const DensityMatrix rho0 = build_thermal_state(label0, beta, theta, trunc);
        const DensityMatrix rho1 = build_thermal_state(label1, beta, theta, trunc);
        const double pe = minimax_error_symmetric(rho0, rho1);
        result.rows[idx] = {std::string(pair_name(pair)),
                            beta,
                            mean_photon_number(label0, beta),
                            theta.theta(),
                            pe,
                            static_cast<long long>(trunc.n1_max),
                            static_cast<long long>(trunc.n2_max),
                            std::max(rho0.trace_deficit, rho1.trace_deficit)};
    });
    return result;
}

}  // namespace qbell
