// srm.hpp — square-root-measurement performance by two routes: the
// block-circulant Gram-matrix/DFT path (production scale) and the dense
// Gram-operator path (small-instance cross-check), plus the POVM reference
// and the optimality certificate.

#pragma once

#include "qppm/constellation.hpp"
#include "qppm/linalg.hpp"
#include "qppm/result.hpp"

#include <cstdint>
#include <vector>

namespace qppm::srm {

using constellation::Constellation;
using linalg::Complex;
using linalg::HermitianMatrix;
using linalg::Matrix;

/// DFT of the Gram-block row: E_k = sum_s G_{0s} W_m^{-ks}, with
/// W_m = e^{i 2 pi / m}. Each block is h^m x h^m and Hermitian.
struct DftBlocks {
  int m = 0;
  std::vector<HermitianMatrix> blocks;
};

DftBlocks dft_blocks(const Constellation& c);

/// Pc = (1/m^2) tr[(sum_k E_k^{1/2})^2]. The m square roots run in parallel
/// unless threads == 1.
DetectionResult pc_gram_matrix(const Constellation& c, int threads = 0);
DetectionResult pc_gram_matrix(const Constellation& c, const DftBlocks& blocks, int threads = 0);

/// Dense oracle route: T = Gamma Gamma*, Pc = tr[(rho_0 T^{-1/2})^2].
/// Refuses composite dimensions above `cap` (the Gram-matrix path has no
/// such limit and should be used instead).
DetectionResult pc_gram_operator(const Constellation& c,
                                 std::int64_t cap = constellation::kDefaultDenseCap);

/// Reference measurement factor mu_0 = T^{-1/2} gamma_0 and the derived POVM
/// (small instances only).
struct PovmReference {
  Matrix mu0;                 // N x h^m
  Matrix pi0;                 // Pi_0 = mu_0 mu_0*
  std::vector<Matrix> povm;   // Pi_i, one per symbol
  Eigen::MatrixXd transition; // p(j|i) = tr(rho_i Pi_j)
  double sum_max_eigenvalue = 0.0;  // of sum_i Pi_i (<= 1 + slack)
};

PovmReference srm_povm_reference(const Constellation& c,
                                 std::int64_t cap = constellation::kDefaultDenseCap);

/// Deviation of mu_0* gamma_0 from a scalar multiple of the identity,
/// min_a ||mu_0* gamma_0 - a I||_F / ||mu_0* gamma_0||_F. Zero certifies that
/// the square-root measurement is the optimal one.
struct OptimalityCertificate {
  double deviation = 0.0;
  Complex alpha;     // the minimizing scalar
  bool degenerate = false;  // identical-state constellation (Ns = 0)
};

OptimalityCertificate srm_optimality_certificate(
    const Constellation& c, std::int64_t cap = constellation::kDefaultDenseCap);

}  // namespace qppm::srm
