// glauber.hpp — slot-level quantum states: coherent kets, thermal density
// matrices in the truncated Fock basis, low-rank factorization.

#pragma once

#include "qppm/linalg.hpp"

#include <complex>

namespace qppm::glauber {

using linalg::Complex;
using linalg::HermitianMatrix;
using linalg::Matrix;
using linalg::Vector;

constexpr double kDefaultTruncationEps = 1e-8;
constexpr double kDefaultRankNu = 1e-8;

/// Coherent state |alpha> truncated to the smallest dimension whose Poisson
/// photon-number tail mass is below eps.
struct CoherentKet {
  Complex alpha;
  Vector amplitudes;  // c_k = e^{-|alpha|^2/2} alpha^k / sqrt(k!)

  Eigen::Index dim() const { return amplitudes.size(); }
};

CoherentKet coherent_ket(Complex alpha, double eps);

/// Coherent ket at a caller-chosen dimension (no tail-mass criterion).
CoherentKet coherent_ket_fixed(Complex alpha, int dim);

/// Generalized Laguerre polynomial L_m^{(k)}(x) by the three-term recurrence.
double laguerre_assoc(int m, int k, double x);

/// Thermal (displaced-thermal) density matrix truncated by the quasi-unitary
/// trace criterion: dim is the smallest n with sum_{j<n} rho_jj >= 1 - eps.
/// Truncated matrices are not renormalized; see normalized().
struct ThermalDensity {
  Complex alpha;
  double nbar = 0.0;
  double v = 0.0;  // nbar / (1 + nbar)
  HermitianMatrix matrix;
  double scale_applied = 1.0;  // set by normalized()

  Eigen::Index dim() const { return matrix.dim(); }
  double trace() const { return matrix.mat().trace().real(); }
};

ThermalDensity thermal_density(Complex alpha, double nbar, double eps);

/// Same matrix at a caller-chosen dimension (used to put several slot states
/// on a common truncated Fock space). No trace criterion is applied.
ThermalDensity thermal_density_fixed(Complex alpha, double nbar, int dim);

/// Low-rank factor gamma with rho ~= gamma gamma*. Rank is the smallest h
/// whose max-entry reconstruction error is <= nu. For alpha = 0 the matrix
/// is diagonal and the factor is its diagonal square root, no EID involved.
struct SlotFactor {
  Matrix matrix;  // n x h
  int rank = 0;
  double reconstruction_error = 0.0;  // max-entry |rho - gamma gamma*|
  double mean_square_error = 0.0;     // mean over entries of |.|^2
};

SlotFactor factorize(const ThermalDensity& rho, double nu);

/// Scale to unit trace; the factor applied is recorded in scale_applied.
ThermalDensity normalized(const ThermalDensity& rho);

}  // namespace qppm::glauber
