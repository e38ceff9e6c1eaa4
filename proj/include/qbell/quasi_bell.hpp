#pragma once

#include <Eigen/Dense>

#include "qbell/fock_core.hpp"

namespace qbell {

/// The four quasi-Bell superpositions of |±beta, ±beta>. Phi1/Phi3 carry the
/// "+" normalizer, Phi2/Phi4 the "-" normalizer; Phi3/Phi4 flip the sign of
/// the mode-2 coherent amplitude relative to Phi1/Phi2.
enum class QuasiBellLabel { Phi1, Phi2, Phi3, Phi4 };

enum class NormalizerSign { Plus, Minus };

NormalizerSign label_sign(QuasiBellLabel label);
const char* label_name(QuasiBellLabel label);

/// N(+/-) = 1 / sqrt(2 (1 +/- exp(-4|beta|^2))). The "-" normalizer diverges
/// at beta = 0 (the state degenerates); that case throws.
double normalizer(NormalizerSign sign, Complex beta);

/// Two-mode pure state over the truncated Fock basis, row-major over (n1,n2).
struct PureStateVector {
    TruncationSpec trunc;
    Eigen::VectorXcd amps;
    double norm_deficit = 0.0;  // 1 - ||amps||^2, truncation loss only

    Complex amp(int n1, int n2) const { return amps(trunc.flat_index(n1, n2)); }
};

/// Fock expansion of the labelled quasi-Bell state at amplitude beta.
/// Throws TruncationError when the cutoffs lose more than trace_tolerance
/// of the norm, naming the mode whose boundary carries the larger weight.
PureStateVector build_pure_state(QuasiBellLabel label, Complex beta, const TruncationSpec& trunc);

/// Analytic 4x4 Gram matrix of the four states: identity except the
/// (Phi1,Phi3) entry sech(2|beta|^2).
Eigen::Matrix4cd gram_matrix(Complex beta);

/// 2|b|^2 tanh(2|b|^2) for Phi1/Phi3, 2|b|^2 coth(2|b|^2) for Phi2/Phi4;
/// the beta -> 0 limits are 0 and 1.
double mean_photon_number(QuasiBellLabel label, Complex beta);

/// Entropy of entanglement in bits: exactly 1 for Phi2/Phi4, the binary
/// entropy of (1 + sech(2|b|^2)) / 2 for Phi1/Phi3.
double pure_entropy_of_entanglement(QuasiBellLabel label, Complex beta);

/// -x log2 x - (1-x) log2(1-x), with h2(0) = h2(1) = 0.
double binary_entropy(double x);

}  // namespace qbell
