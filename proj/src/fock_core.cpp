#include "qbell/fock_core.hpp"

#include <cmath>
#include <string>

namespace qbell {

ThermalParameter::ThermalParameter(double theta) : theta_(theta) {
    if (!(theta >= 0.0) || !std::isfinite(theta)) {
        throw std::invalid_argument("ThermalParameter: theta must be finite and >= 0, got " +
                                    std::to_string(theta));
    }
    cosh_ = std::cosh(theta);
    sinh_ = std::sinh(theta);
    tanh_ = std::tanh(theta);
}

ThermalParameter ThermalParameter::from_mean_thermal_photons(double n_bar) {
    if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
        throw std::invalid_argument("mean thermal photon number must be finite and >= 0, got " +
                                    std::to_string(n_bar));
    }
    return ThermalParameter(std::asinh(std::sqrt(n_bar)));
}

TruncationSpec::TruncationSpec(int n1, int n2, double tol)
    : n1_max(n1), n2_max(n2), trace_tolerance(tol) {
    if (n1 < 0 || n2 < 0) {
        throw std::invalid_argument("TruncationSpec: cutoffs must be >= 0");
    }
    if (!(tol > 0.0 && tol < 1.0)) {
        throw std::invalid_argument("TruncationSpec: trace_tolerance must lie in (0,1), got " +
                                    std::to_string(tol));
    }
}

double log_factorial(int k) {
    if (k < 0) throw std::invalid_argument("log_factorial: k must be >= 0");
    if (k < 2) return 0.0;
    return std::lgamma(static_cast<double>(k) + 1.0);
}

namespace {

// exp(log_mag) carrying the phase of beta^power; real beta stays exactly real.
Complex from_log_magnitude(double log_mag, Complex beta, int power) {
    const double mag = std::exp(log_mag);
    if (beta.imag() == 0.0) {
        return (beta.real() < 0.0 && (power & 1)) ? -mag : mag;
    }
    return std::polar(mag, power * std::arg(beta));
}

}  // namespace

Complex g1(Complex beta, int k1) {
    if (k1 < 0) throw std::invalid_argument("g1: k1 must be >= 0");
    const double mag = std::abs(beta);
    if (mag == 0.0) return k1 == 0 ? 1.0 : 0.0;
    const double log_mag = -0.5 * std::norm(beta) + k1 * std::log(mag) - 0.5 * log_factorial(k1);
    return from_log_magnitude(log_mag, beta, k1);
}

Complex g23(Complex beta, int k2, int k3, const ThermalParameter& theta) {
    if (k2 < 0 || k3 < 0) throw std::invalid_argument("g23: photon numbers must be >= 0");
    if (k2 < k3) return 0.0;
    if (theta.theta() == 0.0) {
        // cosh = 1, sinh = 0: only the k3 = 0 column survives and equals g1.
        return k3 == 0 ? g1(beta, k2) : 0.0;
    }
    const double mag = std::abs(beta);
    if (mag == 0.0 && k2 != k3) return 0.0;

    double log_mag = -std::log(theta.cosh_theta()) - 0.5 * std::norm(beta);
    log_mag += 0.5 * (log_factorial(k3) - log_factorial(k2));
    log_mag += log_factorial(k2) - log_factorial(k3) - log_factorial(k2 - k3);  // ln C(k2,k3)
    if (k2 > k3) log_mag += (k2 - k3) * std::log(mag);
    if (k3 > 0) log_mag += k3 * std::log(theta.sinh_theta());
    log_mag -= k2 * std::log(theta.cosh_theta());
    return from_log_magnitude(log_mag, beta, k2 - k3);
}

double coherent_tail_deficit(Complex beta, int n_max) {
    double sum = 0.0;
    for (int k = n_max; k >= 0; --k) sum += std::norm(g1(beta, k));
    return 1.0 - sum;
}

double thermal_tail_deficit(Complex beta, const ThermalParameter& theta, int n2_max) {
    double sum = 0.0;
    for (int k2 = n2_max; k2 >= 0; --k2) {
        for (int k3 = k2; k3 >= 0; --k3) sum += std::norm(g23(beta, k2, k3, theta));
    }
    return 1.0 - sum;
}

TruncationSpec TruncationSpec::suggest(Complex beta, const ThermalParameter& theta,
                                       double trace_tolerance) {
    if (!(trace_tolerance > 0.0 && trace_tolerance < 1.0)) {
        throw std::invalid_argument("suggest: trace_tolerance must lie in (0,1)");
    }
    const double b2 = std::norm(beta);
    const double per_mode = trace_tolerance / 4.0;
    constexpr int kCutoffCeiling = 4096;

    int n1 = static_cast<int>(std::ceil(4.0 * b2 + 30.0));
    while (coherent_tail_deficit(beta, n1) > per_mode) {
        n1 += 4;
        if (n1 > kCutoffCeiling) {
            throw TruncationError("suggest: mode-1 cutoff exceeds " +
                                  std::to_string(kCutoffCeiling) + " before reaching tolerance");
        }
    }

    const double s2 = theta.sinh_theta() * theta.sinh_theta();
    int n2 = static_cast<int>(std::ceil(4.0 * b2 * (1.0 + s2) + 30.0));
    while (thermal_tail_deficit(beta, theta, n2) > per_mode) {
        n2 += 4;
        if (n2 > kCutoffCeiling) {
            throw TruncationError("suggest: mode-2 cutoff exceeds " +
                                  std::to_string(kCutoffCeiling) + " before reaching tolerance");
        }
    }
    return TruncationSpec(n1, n2, trace_tolerance);
}

}  // namespace qbell
