#include "qbell/quasi_bell.hpp"

#include <cmath>

#include <doctest.h>

#include "qbell/numerics.hpp"
#include "qbell/thermal_density.hpp"

using namespace qbell;

namespace {

const QuasiBellLabel kAllLabels[4] = {QuasiBellLabel::Phi1, QuasiBellLabel::Phi2,
                                      QuasiBellLabel::Phi3, QuasiBellLabel::Phi4};

}  // namespace

TEST_CASE("normalizers") {
    CHECK(normalizer(NormalizerSign::Plus, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normalizer(NormalizerSign::Plus, 40.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(normalizer(NormalizerSign::Minus, 1.0) ==
          doctest::Approx(0.7136726701940372).epsilon(1e-14));
    CHECK_THROWS_AS(normalizer(NormalizerSign::Minus, 0.0), DegenerateStateError);
}

TEST_CASE("vacuum limit of Phi1") {
    const TruncationSpec trunc(8, 8, 1e-6);
    const PureStateVector state = build_pure_state(QuasiBellLabel::Phi1, 0.0, trunc);
    CHECK(std::abs(state.amp(0, 0) - Complex(1.0, 0.0)) <= 1e-15);
    CHECK(state.amps.squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    for (int n1 = 0; n1 <= 8; ++n1) {
        for (int n2 = 0; n2 <= 8; ++n2) {
            if (n1 + n2 > 0) CHECK(std::abs(state.amp(n1, n2)) == 0.0);
        }
    }
    CHECK_THROWS_AS(build_pure_state(QuasiBellLabel::Phi2, 0.0, trunc), DegenerateStateError);
}

TEST_CASE("photon-number parity of the built states") {
    const TruncationSpec trunc(40, 40, 1e-8);
    const PureStateVector even1 = build_pure_state(QuasiBellLabel::Phi1, 1.0, trunc);
    const PureStateVector odd2 = build_pure_state(QuasiBellLabel::Phi2, 1.0, trunc);
    for (int n1 = 0; n1 <= 40; ++n1) {
        for (int n2 = 0; n2 <= 40; ++n2) {
            if ((n1 + n2) % 2 == 0) {
                CHECK(std::abs(odd2.amp(n1, n2)) == 0.0);
            } else {
                CHECK(std::abs(even1.amp(n1, n2)) == 0.0);
            }
        }
    }
}

TEST_CASE("mode-2 rotation links the built pairs elementwise") {
    const TruncationSpec trunc(40, 40, 1e-8);
    const PureStateVector phi1 = build_pure_state(QuasiBellLabel::Phi1, 1.0, trunc);
    const PureStateVector phi2 = build_pure_state(QuasiBellLabel::Phi2, 1.0, trunc);
    const PureStateVector phi3 = build_pure_state(QuasiBellLabel::Phi3, 1.0, trunc);
    const PureStateVector phi4 = build_pure_state(QuasiBellLabel::Phi4, 1.0, trunc);
    for (int n1 = 0; n1 <= 40; ++n1) {
        for (int n2 = 0; n2 <= 40; ++n2) {
            const double sign = n2 % 2 == 0 ? 1.0 : -1.0;
            CHECK(std::abs(phi3.amp(n1, n2) - sign * phi1.amp(n1, n2)) <= 1e-15);
            CHECK(std::abs(phi4.amp(n1, n2) - sign * phi2.amp(n1, n2)) <= 1e-15);
        }
    }
}

TEST_CASE("numeric Gram matrix matches the analytic one") {
    for (double beta : {0.7, 1.0, 3.0}) {
        const ThermalParameter no_noise(0.0);
        const TruncationSpec trunc = TruncationSpec::suggest(beta, no_noise, 1e-10);
        PureStateVector states[4];
        for (int s = 0; s < 4; ++s) states[s] = build_pure_state(kAllLabels[s], beta, trunc);
        const Eigen::Matrix4cd analytic = gram_matrix(beta);
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const Complex numeric = states[a].amps.dot(states[b].amps);
                CAPTURE(beta);
                CHECK(std::abs(numeric - analytic(a, b)) <= 1e-8);
            }
        }
    }
    CHECK(gram_matrix(1.0)(0, 2).real() == doctest::Approx(0.26580222883407967).epsilon(1e-14));
    CHECK(gram_matrix(3.0)(0, 2).real() == doctest::Approx(1.0 / std::cosh(18.0)).epsilon(1e-13));
    CHECK(gram_matrix(3.0)(0, 2).real() <= 1e-7);
    CHECK(gram_matrix(2.0)(1, 3) == Complex(0.0, 0.0));
    CHECK_THROWS_AS(gram_matrix(0.0), DegenerateStateError);
}

TEST_CASE("mean photon numbers") {
    CHECK(mean_photon_number(QuasiBellLabel::Phi1, 0.0) == 0.0);
    CHECK(mean_photon_number(QuasiBellLabel::Phi3, 1e-9) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mean_photon_number(QuasiBellLabel::Phi2, 0.0) == 1.0);
    CHECK(mean_photon_number(QuasiBellLabel::Phi4, 1e-9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean_photon_number(QuasiBellLabel::Phi2, 1.0) ==
          doctest::Approx(2.0746294414550963).epsilon(1e-14));

    // coth > tanh at finite beta: the "-" states carry strictly more photons
    for (double beta = 0.1; beta <= 3.0; beta += 0.18) {
        CHECK(mean_photon_number(QuasiBellLabel::Phi2, beta) >
              mean_photon_number(QuasiBellLabel::Phi1, beta));
    }
}

TEST_CASE("mean photon number agrees with the Fock-basis expectation") {
    const double beta = 1.0;
    const TruncationSpec trunc = TruncationSpec::suggest(beta, ThermalParameter(0.0), 1e-10);
    const PureStateVector state = build_pure_state(QuasiBellLabel::Phi2, beta, trunc);
    double fock_mean = 0.0;
    for (int n1 = 0; n1 <= trunc.n1_max; ++n1) {
        for (int n2 = 0; n2 <= trunc.n2_max; ++n2) {
            fock_mean += (n1 + n2) * std::norm(state.amp(n1, n2));
        }
    }
    CHECK(std::abs(fock_mean - mean_photon_number(QuasiBellLabel::Phi2, beta)) <= 1e-8);
}

TEST_CASE("entropy of entanglement") {
    CHECK(pure_entropy_of_entanglement(QuasiBellLabel::Phi2, 1.0) == 1.0);
    CHECK(pure_entropy_of_entanglement(QuasiBellLabel::Phi4, 0.3) == 1.0);
    CHECK(pure_entropy_of_entanglement(QuasiBellLabel::Phi1, 6.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pure_entropy_of_entanglement(QuasiBellLabel::Phi1, 0.0) == 0.0);
    CHECK(pure_entropy_of_entanglement(QuasiBellLabel::Phi1, 1.0) ==
          doctest::Approx(0.9484184662366615).epsilon(1e-13));
}

TEST_CASE("entropy matches the reduced-state spectrum") {
    const double beta = 1.0;
    const ThermalParameter zero(0.0);
    const TruncationSpec trunc = TruncationSpec::suggest(beta, zero, 1e-10);
    for (QuasiBellLabel label : {QuasiBellLabel::Phi1, QuasiBellLabel::Phi2}) {
        const DensityMatrix rho = build_thermal_state(label, beta, zero, trunc);
        const Eigen::VectorXd spectrum = hermitian_eigenvalues(partial_trace(rho, 1));
        double entropy = 0.0;
        for (int i = 0; i < spectrum.size(); ++i) {
            if (spectrum(i) > 1e-14) entropy -= spectrum(i) * std::log2(spectrum(i));
        }
        CAPTURE(label_name(label));
        CHECK(std::abs(entropy - pure_entropy_of_entanglement(label, beta)) <= 1e-6);
    }
}

TEST_CASE("inadequate truncation is rejected with the offending mode named") {
    try {
        build_pure_state(QuasiBellLabel::Phi1, 2.0, TruncationSpec(4, 30, 1e-6));
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(std::string(e.what()).find("mode 1") != std::string::npos);
    }
}
