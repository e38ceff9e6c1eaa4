#include "qbell/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qbell/quasi_bell.hpp"

namespace qbell {

namespace {

// 1 / (2 (1 - exp(-4 x^2))) through expm1, exact down to tiny x.
double minus_normalizer_sq(double x) {
    return -1.0 / (2.0 * std::expm1(-4.0 * x * x));
}

// The eight-term bracket as printed, for real alpha, beta. Every exponent is
// <= 0, so each product is evaluated as exp(sum of exponents) without overflow.
double bracket_literal(double a, double b, const ThermalParameter& theta) {
    const double sech = 1.0 / theta.cosh_theta();
    const double t2 = theta.tanh_theta() * theta.tanh_theta();
    const double a2 = a * a, b2 = b * b;

    const double t1 = std::exp(-(a * sech - b) * (a * sech - b) - (a - b) * (a - b));
    const double t2_ = std::exp(-a2 * (1.0 + t2) - b2 - a2 - b2);
    const double t3 = std::exp(-a2 * (1.0 + t2) - b2 - a2 - b2);
    const double t4 = std::exp(-(a * sech + b) * (a * sech + b) - (a + b) * (a + b));
    const double t5 = std::exp(-a2 * sech * sech - b2 - a2 - b2);
    const double t6 = std::exp(-a2 * (1.0 + t2) + 2.0 * a * b * sech - b2 - (a - b) * (a - b));
    const double t7 = std::exp(-a2 * (1.0 + t2) - 2.0 * a * b * sech - b2 - (a + b) * (a + b));
    const double t8 = std::exp(-a2 * sech * sech - b2 - a2 - b2);

    return t1 - t2_ - t3 + t4 - t5 + t6 + t7 - t8;
}

// Identical bracket with the cancelling pairs combined into sinh^2, which
// stays exact as the eight terms coalesce for alpha -> 0.
double bracket_regrouped(double a, double b, const ThermalParameter& theta) {
    const double sech = 1.0 / theta.cosh_theta();
    const double t2 = theta.tanh_theta() * theta.tanh_theta();
    const double s = std::sinh(a * b * (1.0 + sech));
    return 4.0 * std::exp(-2.0 * b * b) * s * s *
           (std::exp(-a * a * (2.0 - t2)) + std::exp(-a * a * (2.0 + t2)));
}

}  // namespace

double fef_closed_form(double alpha, double beta, const ThermalParameter& theta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("fef_closed_form: alpha and beta must be > 0");
    }
    const double prefactor = 2.0 * minus_normalizer_sq(alpha) * minus_normalizer_sq(beta) /
                             (theta.cosh_theta() * theta.cosh_theta());
    const double bracket = alpha < 1e-3 ? bracket_regrouped(alpha, beta, theta)
                                        : bracket_literal(alpha, beta, theta);
    return prefactor * bracket;
}

FefEvaluation maximize_fef(double beta, const ThermalParameter& theta,
                           const FefSearchConfig& config) {
    if (!(beta > 0.0)) throw std::invalid_argument("maximize_fef: beta must be > 0");
    const double hi = config.alpha_hi > 0.0 ? config.alpha_hi : std::max(2.0 * beta, 4.0);
    const int grid = std::max(config.grid_points, 8);

    int best = 1;
    double best_value = -1.0;
    auto alpha_at = [&](int i) { return hi * i / grid; };
    for (int i = 1; i <= grid; ++i) {
        const double value = fef_closed_form(alpha_at(i), beta, theta);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
    }

    // Golden-section refinement inside the bracketing grid cells.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = alpha_at(std::max(best - 1, 0));
    double up = alpha_at(std::min(best + 1, grid));
    if (lo <= 0.0) lo = up / static_cast<double>(2 * grid);
    double x1 = up - kInvPhi * (up - lo);
    double x2 = lo + kInvPhi * (up - lo);
    double f1 = fef_closed_form(x1, beta, theta);
    double f2 = fef_closed_form(x2, beta, theta);
    while (up - lo > config.alpha_tol) {
        if (f1 >= f2) {
            up = x2;
            x2 = x1;
            f2 = f1;
            x1 = up - kInvPhi * (up - lo);
            f1 = fef_closed_form(x1, beta, theta);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (up - lo);
            f2 = fef_closed_form(x2, beta, theta);
        }
    }

    FefEvaluation eval;
    eval.alpha = f1 >= f2 ? x1 : x2;
    eval.value = std::max(f1, f2);
    if (eval.value < best_value) {  // refinement never loses the grid optimum
        eval.alpha = alpha_at(best);
        eval.value = best_value;
    }
    if (eval.value > 1.0 + 1e-9) {
        throw NumericalInstabilityError("maximize_fef: fidelity " + std::to_string(eval.value) +
                                        " exceeds 1 beyond tolerance");
    }
    eval.value = std::clamp(eval.value, 0.0, 1.0);
    return eval;
}

double eof_lower_bound(double fef) {
    if (fef < -1e-9 || fef > 1.0 + 1e-9) {
        throw std::invalid_argument("eof_lower_bound: fef must lie in [0,1], got " +
                                    std::to_string(fef));
    }
    const double f = std::clamp(fef, 0.0, 1.0);
    if (f < 0.5) return 0.0;
    return binary_entropy(0.5 + std::sqrt(f * (1.0 - f)));
}

SweepResult entanglement_threshold_scan(const std::vector<double>& beta_grid,
                                        const std::vector<double>& theta_grid) {
    if (beta_grid.empty() || theta_grid.empty()) {
        throw std::invalid_argument("entanglement_threshold_scan: grids must be nonempty");
    }
    for (double b : beta_grid) {
        if (!(b > 0.0)) throw std::invalid_argument("entanglement_threshold_scan: beta must be > 0");
    }

    SweepResult result;
    result.header = {"beta", "beta_sq", "theta", "alpha_star", "fef", "bound_bits"};
    const int nb = static_cast<int>(beta_grid.size());
    const int nt = static_cast<int>(theta_grid.size());
    result.rows.resize(static_cast<size_t>(nb) * nt);

    parallel_for_index(nb * nt, [&](int idx) {
        const double beta = beta_grid[idx / nt];
        const double theta_value = theta_grid[idx % nt];
        const FefEvaluation eval = maximize_fef(beta, ThermalParameter(theta_value));
        result.rows[idx] = {beta,       beta * beta, theta_value,
                            eval.alpha, eval.value,  eof_lower_bound(eval.value)};
    });

    for (int ib = 0; ib < nb; ++ib) {
        std::string threshold = "none";
        for (int it = 0; it < nt; ++it) {
            const double fef = std::get<double>(result.rows[ib * nt + it][4]);
            if (fef < 0.5) {
                threshold = format_double(theta_grid[it]);
                break;
            }
        }
        result.add_meta("threshold_theta[beta=" + format_double(beta_grid[ib]) + "]", threshold);
    }
    return result;
}

}  // namespace qbell
