#include "qbell/entanglement.hpp"

#include <cmath>
#include <random>

#include <doctest.h>

#include "qbell/numerics.hpp"

using namespace qbell;

namespace {

// Independent route to the same fidelity: assemble rho(Phi2(beta), theta) in
// the Fock basis and take the quadratic form with the Phi2(alpha) vector.
double fef_matrix_oracle(double alpha, double beta, const ThermalParameter& theta) {
    const double big = std::max(alpha, beta);
    TruncationSpec trunc = TruncationSpec::suggest(big, theta, 1e-8);
    const DensityMatrix rho = build_thermal_state(QuasiBellLabel::Phi2, beta, theta, trunc);
    const PureStateVector probe = build_pure_state(QuasiBellLabel::Phi2, alpha, trunc);
    return expectation(rho, probe);
}

}  // namespace

TEST_CASE("self fidelity of the noiseless state") {
    const ThermalParameter zero(0.0);
    for (double beta : {0.5, 1.0, 2.0}) {
        CHECK(fef_closed_form(beta, beta, zero) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(fef_closed_form(0.0, 1.0, zero), std::invalid_argument);
    CHECK_THROWS_AS(fef_closed_form(1.0, 0.0, zero), std::invalid_argument);
}

TEST_CASE("closed form against the matrix quadratic form") {
    const ThermalParameter theta(0.3);
    const double value = fef_closed_form(1.0, 1.0, theta);
    CHECK(value == doctest::Approx(0.8392779033373364).epsilon(1e-12));
    CHECK(std::abs(value - fef_matrix_oracle(1.0, 1.0, theta)) <= 1e-8);
}

TEST_CASE("seeded oracle battery") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> amp(0.2, 3.0);
    std::uniform_real_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double alpha = amp(rng);
        const double beta = amp(rng);
        const ThermalParameter theta(noise(rng));
        CAPTURE(alpha);
        CAPTURE(beta);
        CAPTURE(theta.theta());
        CHECK(std::abs(fef_closed_form(alpha, beta, theta) -
                       fef_matrix_oracle(alpha, beta, theta)) <= 1e-7);
    }
}

TEST_CASE("small-alpha guard agrees with the overlap oracle") {
    // At theta = 0 the fidelity is |<Phi2(alpha)|Phi2(beta)>|^2; evaluate it
    // from built vectors at alpha = 1e-4 where the closed form is 0/0-prone.
    const double alpha = 1e-4, beta = 1.0;
    const ThermalParameter zero(0.0);
    const TruncationSpec trunc = TruncationSpec::suggest(beta, zero, 1e-10);
    const PureStateVector lhs = build_pure_state(QuasiBellLabel::Phi2, alpha, trunc);
    const PureStateVector rhs = build_pure_state(QuasiBellLabel::Phi2, beta, trunc);
    const double overlap_sq = std::norm(lhs.amps.dot(rhs.amps));
    CHECK(std::abs(fef_closed_form(alpha, beta, zero) - overlap_sq) <= 1e-7);
}

TEST_CASE("closed form is continuous across the evaluation switch") {
    for (double beta : {0.7, 1.5}) {
        for (double th : {0.0, 0.4, 0.9}) {
            const ThermalParameter theta(th);
            const double below = fef_closed_form(1e-3 * (1.0 - 1e-9), beta, theta);
            const double above = fef_closed_form(1e-3 * (1.0 + 1e-9), beta, theta);
            CHECK(std::abs(below - above) <= 1e-9 * std::max(below, 1e-30));
        }
    }
}

TEST_CASE("theta = 0 fidelity peaks exactly at alpha = beta") {
    const ThermalParameter zero(0.0);
    for (double beta : {0.6, 1.0}) {
        for (double alpha : {0.3, 0.9, 1.4, 2.2}) {
            if (alpha != beta) CHECK(fef_closed_form(alpha, beta, zero) < 1.0);
        }
        const FefEvaluation eval = maximize_fef(beta, zero);
        CHECK(eval.value >= 1.0 - 1e-9);
        CHECK(std::abs(eval.alpha - beta) <= 1e-3);
    }
}

TEST_CASE("maximized fidelity decays with noise but stays positive") {
    const FefEvaluation eval = maximize_fef(2.0, ThermalParameter(0.5));
    CHECK(eval.value > 0.0);
    CHECK(eval.value < 1.0);

    double previous = 2.0;
    for (double th = 0.0; th < 0.95; th += 0.1) {
        const double value = maximize_fef(1.0, ThermalParameter(th)).value;
        CHECK(value <= previous + 1e-12);
        previous = value;
    }
}

TEST_CASE("enlarging the search bracket never loses value") {
    const ThermalParameter theta(0.4);
    FefSearchConfig narrow;
    narrow.alpha_hi = 4.0;
    FefSearchConfig wide;
    wide.alpha_hi = 8.0;
    const double v_narrow = maximize_fef(1.3, theta, narrow).value;
    const double v_wide = maximize_fef(1.3, theta, wide).value;
    CHECK(v_wide >= v_narrow - 1e-9);
}

TEST_CASE("entanglement-of-formation lower bound") {
    CHECK(eof_lower_bound(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eof_lower_bound(0.49) == 0.0);
    CHECK(eof_lower_bound(0.9) == doctest::Approx(0.7219280948873623).epsilon(1e-14));
    CHECK(eof_lower_bound(0.0) == 0.0);
    // continuous through the branch point
    CHECK(eof_lower_bound(0.5 - 1e-9) <= 1e-7);
    CHECK(eof_lower_bound(0.5 + 1e-9) <= 1e-3);
    CHECK_THROWS_AS(eof_lower_bound(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(eof_lower_bound(1.1), std::invalid_argument);
}

TEST_CASE("threshold scan rows and report") {
    const std::vector<double> betas = {0.5, 1.0};
    const std::vector<double> thetas = {0.0, 0.2, 0.4, 0.6, 0.8};
    const SweepResult result = entanglement_threshold_scan(betas, thetas);
    REQUIRE(result.rows.size() == betas.size() * thetas.size());
    REQUIRE(result.header.size() == 6);

    for (size_t i = 0; i < result.rows.size(); ++i) {
        const double theta_value = std::get<double>(result.rows[i][2]);
        const double fef = std::get<double>(result.rows[i][4]);
        const double bound = std::get<double>(result.rows[i][5]);
        if (theta_value == 0.0) CHECK(bound == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(bound >= 0.0);
        CHECK(bound <= 1.0);
        CHECK(fef >= 0.0);
        CHECK(fef <= 1.0);
    }
    // bound_bits nonincreasing along theta at fixed beta
    for (size_t b = 0; b < betas.size(); ++b) {
        for (size_t t = 1; t < thetas.size(); ++t) {
            const double prev = std::get<double>(result.rows[b * thetas.size() + t - 1][5]);
            const double cur = std::get<double>(result.rows[b * thetas.size() + t][5]);
            CHECK(cur <= prev + 1e-12);
        }
    }
    CHECK(result.metadata.size() == betas.size());
    CHECK_THROWS_AS(entanglement_threshold_scan({}, thetas), std::invalid_argument);
    CHECK_THROWS_AS(entanglement_threshold_scan({-1.0}, thetas), std::invalid_argument);
}
