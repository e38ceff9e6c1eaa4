#include "qbell/quasi_bell.hpp"

#include <cmath>
#include <string>

namespace qbell {

NormalizerSign label_sign(QuasiBellLabel label) {
    return (label == QuasiBellLabel::Phi1 || label == QuasiBellLabel::Phi3)
               ? NormalizerSign::Plus
               : NormalizerSign::Minus;
}

const char* label_name(QuasiBellLabel label) {
    switch (label) {
        case QuasiBellLabel::Phi1: return "phi1";
        case QuasiBellLabel::Phi2: return "phi2";
        case QuasiBellLabel::Phi3: return "phi3";
        case QuasiBellLabel::Phi4: return "phi4";
    }
    return "?";
}

double normalizer(NormalizerSign sign, Complex beta) {
    const double b2 = std::norm(beta);
    if (sign == NormalizerSign::Plus) {
        return 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-4.0 * b2)));
    }
    if (b2 == 0.0) {
        throw DegenerateStateError("normalizer: the '-' superposition is degenerate at beta = 0");
    }
    // 1 - exp(-4 b^2) via expm1 keeps full precision for small beta.
    return 1.0 / std::sqrt(2.0 * -std::expm1(-4.0 * b2));
}

PureStateVector build_pure_state(QuasiBellLabel label, Complex beta, const TruncationSpec& trunc) {
    const NormalizerSign sign = label_sign(label);
    const double norm_factor = normalizer(sign, beta);  // throws for Phi2/Phi4 at beta = 0
    const bool mode2_flipped = (label == QuasiBellLabel::Phi3 || label == QuasiBellLabel::Phi4);
    const double branch_sign = (sign == NormalizerSign::Plus) ? 1.0 : -1.0;

    Eigen::VectorXcd p1(trunc.n1_max + 1), m1(trunc.n1_max + 1);
    Eigen::VectorXcd p2(trunc.n2_max + 1), m2(trunc.n2_max + 1);
    for (int n = 0; n <= trunc.n1_max; ++n) {
        p1(n) = g1(beta, n);
        m1(n) = g1(-beta, n);
    }
    for (int n = 0; n <= trunc.n2_max; ++n) {
        p2(n) = g1(beta, n);
        m2(n) = g1(-beta, n);
    }
    if (mode2_flipped) p2.swap(m2);

    PureStateVector state;
    state.trunc = trunc;
    state.amps.resize(trunc.dim());
    for (int n1 = 0; n1 <= trunc.n1_max; ++n1) {
        for (int n2 = 0; n2 <= trunc.n2_max; ++n2) {
            state.amps(trunc.flat_index(n1, n2)) =
                norm_factor * (p1(n1) * p2(n2) + branch_sign * m1(n1) * m2(n2));
        }
    }

    state.norm_deficit = 1.0 - state.amps.squaredNorm();
    if (state.norm_deficit > trunc.trace_tolerance) {
        double tail1 = 0.0, tail2 = 0.0;  // boundary-row weight per mode
        for (int n2 = 0; n2 <= trunc.n2_max; ++n2)
            tail1 += std::norm(state.amp(trunc.n1_max, n2));
        for (int n1 = 0; n1 <= trunc.n1_max; ++n1)
            tail2 += std::norm(state.amp(n1, trunc.n2_max));
        const int mode = tail1 >= tail2 ? 1 : 2;
        throw TruncationError("build_pure_state(" + std::string(label_name(label)) +
                              "): norm deficit " + std::to_string(state.norm_deficit) +
                              " exceeds tolerance " + std::to_string(trunc.trace_tolerance) +
                              "; mode " + std::to_string(mode) + " cutoff too small");
    }
    return state;
}

Eigen::Matrix4cd gram_matrix(Complex beta) {
    if (std::norm(beta) == 0.0) {
        throw DegenerateStateError("gram_matrix: undefined at beta = 0 (Phi2/Phi4 degenerate)");
    }
    Eigen::Matrix4cd gram = Eigen::Matrix4cd::Identity();
    const double k13 = 1.0 / std::cosh(2.0 * std::norm(beta));
    gram(0, 2) = k13;
    gram(2, 0) = k13;
    return gram;
}

double mean_photon_number(QuasiBellLabel label, Complex beta) {
    const double x = 2.0 * std::norm(beta);
    if (label_sign(label) == NormalizerSign::Plus) {
        return x * std::tanh(x);
    }
    return x == 0.0 ? 1.0 : x / std::tanh(x);
}

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double pure_entropy_of_entanglement(QuasiBellLabel label, Complex beta) {
    if (label_sign(label) == NormalizerSign::Minus) return 1.0;
    const double k13 = 1.0 / std::cosh(2.0 * std::norm(beta));
    return binary_entropy(0.5 * (1.0 + k13));
}

}  // namespace qbell
