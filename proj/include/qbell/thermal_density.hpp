#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "qbell/quasi_bell.hpp"

namespace qbell {

/// How the Hermitian matrix is filled in. MirrorUpper computes one triangle
/// and mirrors it (M - M^dag == 0 exactly); IndependentFull computes both
/// triangles separately so tests can bound the assembly's self-consistency.
enum class AssemblyMode { MirrorUpper, IndependentFull };

struct BuildOptions {
    AssemblyMode assembly = AssemblyMode::MirrorUpper;
    bool check_psd = false;  // full spectrum check; O(dim^3), off for sweeps
};

/// Two-mode density matrix over the flattened truncated Fock basis.
/// When produced by build_thermal_state, `factor` holds W with mat = W W^dag
/// (one column per traced-out thermal photon number); analysis code may use
/// it to stay in the low-rank column space. Empty when unknown (e.g. loaded).
struct DensityMatrix {
    TruncationSpec trunc;
    Eigen::MatrixXcd mat;
    double trace_deficit = 0.0;
    Eigen::MatrixXcd factor;

    bool has_factor() const { return factor.size() > 0; }
};

/// Photon-number distribution P(n1,n2): the diagonal of a density matrix
/// reshaped to the (n1, n2) grid, tiny truncation negatives clipped to zero.
struct PhotonNumberDistribution {
    TruncationSpec trunc;
    Eigen::MatrixXd probs;  // (n1_max+1) x (n2_max+1)
};

/// Density matrix of the labelled quasi-Bell state after thermal noise on
/// mode 2. The fictitious-mode sum is exact (it terminates at min(m2,n2));
/// only the two real modes are truncated. Throws TruncationError when the
/// measured trace deficit exceeds the spec tolerance, and
/// NumericalInstabilityError when check_psd finds an eigenvalue below -1e-9.
DensityMatrix build_thermal_state(QuasiBellLabel label, Complex beta, const ThermalParameter& theta,
                                  const TruncationSpec& trunc, const BuildOptions& opts = {});

PhotonNumberDistribution photon_number_distribution(const DensityMatrix& rho);

/// Conjugation by the mode-2 pi rotation: element (m;n) picks up
/// (-1)^(m2+n2). An involution; maps the Phi3 state to Phi1 and Phi4 to Phi2.
DensityMatrix apply_mode2_pi_rotation(const DensityMatrix& rho);

/// Hermiticity / trace / PSD check battery for an assembled matrix.
/// Throws NumericalInstabilityError or TruncationError with measured values.
void validate_density_matrix(const DensityMatrix& rho);

/// JSON layout: {"n1_max":..,"n2_max":..,"layout":"row-major n1*(n2_max+1)+n2",
/// "re":[..],"im":[..],"metadata":{...}}. Floats are shortest round-trip
/// decimals, so dump -> load reproduces the matrix bit for bit.
void save_density_matrix_json(const DensityMatrix& rho, std::ostream& out);
void save_density_matrix_json(const DensityMatrix& rho, const std::string& path);
DensityMatrix load_density_matrix_json(std::istream& in);
DensityMatrix load_density_matrix_json(const std::string& path);

}  // namespace qbell
