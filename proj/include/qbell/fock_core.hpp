#pragma once

#include <complex>

#include "qbell/errors.hpp"

namespace qbell {

using Complex = std::complex<double>;

/// Thermal noise parameter theta >= 0 with cached hyperbolics.
/// The mean thermal photon number of the injected noise is sinh^2(theta).
class ThermalParameter {
public:
    explicit ThermalParameter(double theta);

    double theta() const { return theta_; }
    double cosh_theta() const { return cosh_; }
    double sinh_theta() const { return sinh_; }
    double tanh_theta() const { return tanh_; }

    double mean_thermal_photons() const { return sinh_ * sinh_; }

    /// Inverse of mean_thermal_photons: theta = asinh(sqrt(n_bar)).
    static ThermalParameter from_mean_thermal_photons(double n_bar);

private:
    double theta_;
    double cosh_;
    double sinh_;
    double tanh_;
};

/// Per-mode Fock cutoffs plus the trace deficit a build is allowed to lose.
/// Flattened basis index is n1 * (n2_max + 1) + n2 (row-major over (n1, n2)).
struct TruncationSpec {
    int n1_max = 0;
    int n2_max = 0;
    double trace_tolerance = 1e-6;

    TruncationSpec() = default;
    TruncationSpec(int n1, int n2, double tol = 1e-6);

    int dim() const { return (n1_max + 1) * (n2_max + 1); }
    int flat_index(int n1, int n2) const { return n1 * (n2_max + 1) + n2; }

    bool operator==(const TruncationSpec&) const = default;

    /// Cutoffs adequate for any quasi-Bell state of amplitude beta under noise
    /// theta. Starts from n1 = ceil(4|b|^2 + 30), n2 = ceil(4|b|^2 cosh^2 + 30)
    /// and grows each cutoff until the single-mode tail deficits drop below
    /// trace_tolerance / 4.
    static TruncationSpec suggest(Complex beta, const ThermalParameter& theta,
                                  double trace_tolerance = 1e-6);
};

/// ln(k!), stable for all k where exp(k-scale magnitudes matter.
double log_factorial(int k);

/// Coherent-state Fock amplitude <k1|beta> = exp(-|b|^2/2) b^k1 / sqrt(k1!).
/// Magnitude goes through the log domain; the phase is k1 * arg(beta).
Complex g1(Complex beta, int k1);

/// Fock amplitude <k2,k3| T(theta) |beta,0> of the thermalized coherent state,
/// where T couples the real mode to the fictitious thermal mode. Identically
/// zero for k2 < k3.
Complex g23(Complex beta, int k2, int k3, const ThermalParameter& theta);

/// 1 - sum_{k<=n_max} |g1(beta,k)|^2: single-mode truncation loss.
double coherent_tail_deficit(Complex beta, int n_max);

/// 1 - sum_{k2<=n2_max, k3<=k2} |g23(beta,k2,k3,theta)|^2: truncation loss of
/// the thermalized mode (the k3 sum is finite by the k2 >= k3 support).
double thermal_tail_deficit(Complex beta, const ThermalParameter& theta, int n2_max);

}  // namespace qbell
