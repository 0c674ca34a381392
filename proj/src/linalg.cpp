#include "qppm/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace qppm::linalg {

HermitianMatrix::HermitianMatrix(Matrix a, double asym_tol) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw std::invalid_argument("HermitianMatrix: need a square matrix with dim >= 1, got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > asym_tol) {
    throw std::invalid_argument("HermitianMatrix: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance");
  }
  mat_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(Matrix::Identity(n, n));
}

Eid eid_hermitian(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.mat());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eid_hermitian: eigensolver failed to converge at dim " +
                             std::to_string(a.dim()));
  }
  const Eigen::Index n = a.dim();
  Eid out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order; reverse for descending. Equal eigenvalues
  // keep their relative (reversed-index) order deterministically.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

namespace {

HermitianMatrix eig_power(const HermitianMatrix& a, double tol, double exponent) {
  const Eid eid = eid_hermitian(a);
  const double lmax = eid.eigenvalues.size() > 0 ? eid.eigenvalues.maxCoeff() : 0.0;
  const double floor = -tol * std::abs(lmax);
  RealVector mapped(eid.eigenvalues.size());
  for (Eigen::Index i = 0; i < eid.eigenvalues.size(); ++i) {
    const double lam = eid.eigenvalues(i);
    if (lam < floor) {
      throw std::runtime_error("not PSD: eigenvalue " + std::to_string(lam) +
                               " below -tol*lambda_max = " + std::to_string(floor));
    }
    if (exponent > 0.0) {
      // Positive powers are well conditioned at zero: clamp, never truncate.
      mapped(i) = std::pow(std::max(lam, 0.0), exponent);
    } else if (lam <= tol * std::abs(lmax)) {
      mapped(i) = 0.0;  // pseudo-inverse: drop the (near-)null space
    } else {
      mapped(i) = std::pow(lam, exponent);
    }
  }
  Matrix out = eid.eigenvectors * mapped.asDiagonal() * eid.eigenvectors.adjoint();
  const double scale = mapped.size() > 0 ? std::max(1.0, mapped.maxCoeff()) : 1.0;
  return HermitianMatrix(std::move(out), 1e-9 * scale);
}

}  // namespace

HermitianMatrix sqrt_psd(const HermitianMatrix& a, double tol) {
  return eig_power(a, tol, 0.5);
}

HermitianMatrix inv_sqrt_psd(const HermitianMatrix& a, double tol) {
  return eig_power(a, tol, -0.5);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace qppm::linalg
