#include "qbell/thermal_density.hpp"

#include <cblas.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qbell/numerics.hpp"

namespace qbell {

namespace {

// W such that rho = W W^dag: one column per fictitious-mode photon number k.
// W[(m1,m2), k] = norm * (c+ v+[m1] Ga(m2,k) + c- v-[m1] Gb(m2,k)), where
// (Ga, Gb) are the g23 matrices at (+beta, -beta), swapped for Phi3/Phi4.
Eigen::MatrixXcd assemble_factor(QuasiBellLabel label, Complex beta, const ThermalParameter& theta,
                                 const TruncationSpec& trunc) {
    const int n1 = trunc.n1_max, n2 = trunc.n2_max;
    const double norm_factor = normalizer(label_sign(label), beta);
    const double branch_sign = (label_sign(label) == NormalizerSign::Plus) ? 1.0 : -1.0;
    const bool mode2_flipped = (label == QuasiBellLabel::Phi3 || label == QuasiBellLabel::Phi4);

    Eigen::VectorXcd vp(n1 + 1), vm(n1 + 1);
    for (int m = 0; m <= n1; ++m) {
        vp(m) = g1(beta, m);
        vm(m) = g1(-beta, m);
    }
    Eigen::MatrixXcd gp = Eigen::MatrixXcd::Zero(n2 + 1, n2 + 1);
    Eigen::MatrixXcd gm = Eigen::MatrixXcd::Zero(n2 + 1, n2 + 1);
    for (int m = 0; m <= n2; ++m) {
        for (int k = 0; k <= m; ++k) {
            gp(m, k) = g23(beta, m, k, theta);
            gm(m, k) = g23(-beta, m, k, theta);
        }
    }
    const Eigen::MatrixXcd& ga = mode2_flipped ? gm : gp;
    const Eigen::MatrixXcd& gb = mode2_flipped ? gp : gm;

    Eigen::MatrixXcd w(trunc.dim(), n2 + 1);
    for (int m1 = 0; m1 <= n1; ++m1) {
        w.middleRows(m1 * (n2 + 1), n2 + 1) =
            norm_factor * (vp(m1) * ga + branch_sign * vm(m1) * gb);
    }
    return w;
}

// rho = W W^dag through ZHERK on the lower triangle, mirrored up.
Eigen::MatrixXcd rank_k_outer(const Eigen::MatrixXcd& w) {
    const int dim = static_cast<int>(w.rows());
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
    cblas_zherk(CblasColMajor, CblasLower, CblasNoTrans, dim, static_cast<int>(w.cols()), 1.0,
                reinterpret_cast<const double*>(w.data()), dim, 0.0,
                reinterpret_cast<double*>(mat.data()), dim);
    for (int j = 1; j < dim; ++j) {
        for (int i = 0; i < j; ++i) mat(i, j) = std::conj(mat(j, i));
    }
    return mat;
}

// Independent route: the four mode-2 kernels K_ss' = G_s G_s'^dag combined
// elementwise with the mode-1 factors, both triangles written separately.
Eigen::MatrixXcd assemble_independent(QuasiBellLabel label, Complex beta,
                                      const ThermalParameter& theta, const TruncationSpec& trunc) {
    const int n1 = trunc.n1_max, n2 = trunc.n2_max;
    const double norm2 = std::pow(normalizer(label_sign(label), beta), 2);
    const double branch_sign = (label_sign(label) == NormalizerSign::Plus) ? 1.0 : -1.0;
    const bool mode2_flipped = (label == QuasiBellLabel::Phi3 || label == QuasiBellLabel::Phi4);

    Eigen::VectorXcd v[2];
    v[0].resize(n1 + 1);
    v[1].resize(n1 + 1);
    for (int m = 0; m <= n1; ++m) {
        v[0](m) = g1(beta, m);
        v[1](m) = g1(-beta, m);
    }
    Eigen::MatrixXcd g[2];
    g[0] = Eigen::MatrixXcd::Zero(n2 + 1, n2 + 1);
    g[1] = Eigen::MatrixXcd::Zero(n2 + 1, n2 + 1);
    for (int m = 0; m <= n2; ++m) {
        for (int k = 0; k <= m; ++k) {
            g[0](m, k) = g23(beta, m, k, theta);
            g[1](m, k) = g23(-beta, m, k, theta);
        }
    }
    if (mode2_flipped) std::swap(g[0], g[1]);

    Eigen::MatrixXcd kernel[2][2];
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) kernel[s][t] = g[s] * g[t].adjoint();
    }
    const double coeff[2] = {1.0, branch_sign};

    Eigen::MatrixXcd mat(trunc.dim(), trunc.dim());
    for (int m1 = 0; m1 <= n1; ++m1) {
        for (int o1 = 0; o1 <= n1; ++o1) {
            Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(n2 + 1, n2 + 1);
            for (int s = 0; s < 2; ++s) {
                for (int t = 0; t < 2; ++t) {
                    block += (coeff[s] * coeff[t] * v[s](m1) * std::conj(v[t](o1))) * kernel[s][t];
                }
            }
            mat.block(m1 * (n2 + 1), o1 * (n2 + 1), n2 + 1, n2 + 1) = norm2 * block;
        }
    }
    return mat;
}

}  // namespace

DensityMatrix build_thermal_state(QuasiBellLabel label, Complex beta, const ThermalParameter& theta,
                                  const TruncationSpec& trunc, const BuildOptions& opts) {
    DensityMatrix rho;
    rho.trunc = trunc;
    rho.factor = assemble_factor(label, beta, theta, trunc);
    rho.mat = (opts.assembly == AssemblyMode::MirrorUpper)
                  ? rank_k_outer(rho.factor)
                  : assemble_independent(label, beta, theta, trunc);

    rho.trace_deficit = 1.0 - rho.mat.trace().real();
    if (rho.trace_deficit > trunc.trace_tolerance) {
        throw TruncationError("build_thermal_state(" + std::string(label_name(label)) +
                              "): trace deficit " + std::to_string(rho.trace_deficit) +
                              " exceeds tolerance " + std::to_string(trunc.trace_tolerance));
    }
    if (opts.check_psd) {
        const double min_eig = hermitian_eigenvalues(rho.mat)(0);
        if (min_eig < -1e-9) {
            throw NumericalInstabilityError("build_thermal_state: eigenvalue " +
                                            std::to_string(min_eig) + " below -1e-9");
        }
    }
    return rho;
}

PhotonNumberDistribution photon_number_distribution(const DensityMatrix& rho) {
    PhotonNumberDistribution dist;
    dist.trunc = rho.trunc;
    dist.probs.resize(rho.trunc.n1_max + 1, rho.trunc.n2_max + 1);
    for (int n1 = 0; n1 <= rho.trunc.n1_max; ++n1) {
        for (int n2 = 0; n2 <= rho.trunc.n2_max; ++n2) {
            const int i = rho.trunc.flat_index(n1, n2);
            double p = rho.mat(i, i).real();
            if (p < -1e-12) {
                throw NumericalInstabilityError("photon_number_distribution: P(" +
                                                std::to_string(n1) + "," + std::to_string(n2) +
                                                ") = " + std::to_string(p) + " below -1e-12");
            }
            dist.probs(n1, n2) = p < 0.0 ? 0.0 : p;
        }
    }
    return dist;
}

DensityMatrix apply_mode2_pi_rotation(const DensityMatrix& rho) {
    const int n2_dim = rho.trunc.n2_max + 1;
    const int dim = rho.trunc.dim();
    DensityMatrix out;
    out.trunc = rho.trunc;
    out.trace_deficit = rho.trace_deficit;

    auto parity = [n2_dim](int flat) { return (flat % n2_dim) % 2 == 0 ? 1.0 : -1.0; };
    out.mat.resize(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const double pj = parity(j);
        for (int i = 0; i < dim; ++i) out.mat(i, j) = parity(i) * pj * rho.mat(i, j);
    }
    if (rho.has_factor()) {
        out.factor = rho.factor;
        for (int i = 0; i < out.factor.rows(); ++i) {
            if (parity(static_cast<int>(i)) < 0.0) out.factor.row(i) = -out.factor.row(i);
        }
    }
    return out;
}

void validate_density_matrix(const DensityMatrix& rho) {
    const double asym = (rho.mat - rho.mat.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        throw NumericalInstabilityError("density matrix asymmetry max|M - M^dag| = " +
                                        std::to_string(asym) + " exceeds 1e-12");
    }
    const double trace = rho.mat.trace().real();
    if (trace > 1.0 + 1e-9 || 1.0 - trace > rho.trunc.trace_tolerance) {
        throw TruncationError("density matrix trace " + std::to_string(trace) +
                              " outside [1 - " + std::to_string(rho.trunc.trace_tolerance) +
                              ", 1]");
    }
    const double min_eig = hermitian_eigenvalues(rho.mat)(0);
    if (min_eig < -1e-9) {
        throw NumericalInstabilityError("density matrix eigenvalue " + std::to_string(min_eig) +
                                        " below -1e-9");
    }
}

void save_density_matrix_json(const DensityMatrix& rho, std::ostream& out) {
    nlohmann::json j;
    j["n1_max"] = rho.trunc.n1_max;
    j["n2_max"] = rho.trunc.n2_max;
    j["layout"] = "row-major n1*(n2_max+1)+n2";
    const int dim = rho.trunc.dim();
    std::vector<double> re, im;
    re.reserve(static_cast<size_t>(dim) * dim);
    im.reserve(static_cast<size_t>(dim) * dim);
    // row-major element order: row i = bra (m1,m2), column j = ket (n1,n2)
    for (int i = 0; i < dim; ++i) {
        for (int jj = 0; jj < dim; ++jj) {
            re.push_back(rho.mat(i, jj).real());
            im.push_back(rho.mat(i, jj).imag());
        }
    }
    j["re"] = re;
    j["im"] = im;
    j["metadata"] = {{"trace_tolerance", rho.trunc.trace_tolerance},
                     {"trace_deficit", rho.trace_deficit}};
    out << j.dump() << '\n';
}

void save_density_matrix_json(const DensityMatrix& rho, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_density_matrix_json(rho, out);
    if (!out.good()) throw std::runtime_error("write failed: " + path);
}

DensityMatrix load_density_matrix_json(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    const int n1 = j.at("n1_max").get<int>();
    const int n2 = j.at("n2_max").get<int>();
    if (j.at("layout").get<std::string>() != "row-major n1*(n2_max+1)+n2") {
        throw std::runtime_error("unsupported density-matrix layout: " +
                                 j.at("layout").get<std::string>());
    }
    double tol = 1e-6;
    if (j.contains("metadata") && j["metadata"].contains("trace_tolerance")) {
        tol = j["metadata"]["trace_tolerance"].get<double>();
    }
    DensityMatrix rho;
    rho.trunc = TruncationSpec(n1, n2, tol);
    const int dim = rho.trunc.dim();
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (static_cast<int>(re.size()) != dim * dim || static_cast<int>(im.size()) != dim * dim) {
        throw std::runtime_error("density-matrix element count does not match cutoffs");
    }
    rho.mat.resize(dim, dim);
    size_t idx = 0;
    for (int i = 0; i < dim; ++i) {
        for (int jj = 0; jj < dim; ++jj, ++idx) {
            rho.mat(i, jj) = Complex(re[idx].get<double>(), im[idx].get<double>());
        }
    }
    rho.trace_deficit = 1.0 - rho.mat.trace().real();  // recomputed, not trusted
    if (rho.trace_deficit > tol) {
        throw TruncationError("loaded density matrix trace deficit " +
                              std::to_string(rho.trace_deficit) + " exceeds recorded tolerance " +
                              std::to_string(tol));
    }
    return rho;
}

DensityMatrix load_density_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return load_density_matrix_json(in);
}

}  // namespace qbell
