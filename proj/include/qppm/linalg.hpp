// linalg.hpp — complex-Hermitian primitives: EID, PSD square roots, Kronecker

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace qppm::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

constexpr double kDefaultPinvTol = 1e-12;

/// Hermitian matrix with symmetrization enforced at construction:
/// a <- (a + a*)/2, after checking the asymmetry is within `asym_tol`.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;  // empty 0x0 placeholder
  explicit HermitianMatrix(Matrix a, double asym_tol = 1e-12);

  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& mat() const { return mat_; }

  static HermitianMatrix identity(Eigen::Index n);

 private:
  Matrix mat_;
};

/// Eigendecomposition with eigenvalues sorted descending; ties keep the
/// solver's original (ascending-index) order, so results are reproducible.
struct Eid {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // unitary, columns aligned with eigenvalues
};

Eid eid_hermitian(const HermitianMatrix& a);

/// PSD square root via EID. Eigenvalues in [-tol*lmax, 0) are clamped to 0;
/// anything below -tol*lmax throws.
HermitianMatrix sqrt_psd(const HermitianMatrix& a, double tol = kDefaultPinvTol);

/// Moore-Penrose inverse square root: eigenvalues <= tol*lmax map to 0,
/// the rest to lambda^(-1/2). Same PSD check as sqrt_psd.
HermitianMatrix inv_sqrt_psd(const HermitianMatrix& a, double tol = kDefaultPinvTol);

Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace qppm::linalg
