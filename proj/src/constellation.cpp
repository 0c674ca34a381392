#include "qppm/constellation.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qppm::constellation {

namespace {

std::int64_t checked_pow(std::int64_t base, int exp, const char* what) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base > 0 && out > (std::int64_t{1} << 62) / base) {
      throw std::overflow_error(std::string(what) + " does not fit in 64 bits");
    }
    out *= base;
  }
  return out;
}

// n x h factor of rho from its leading eigenpairs; exact diagonal square root
// when the matrix is diagonal (undisplaced thermal state).
Matrix factor_at_rank(const glauber::ThermalDensity& rho, int h, double* max_err) {
  const Eigen::Index n = rho.dim();
  Matrix g = Matrix::Zero(n, h);
  if (std::norm(rho.alpha) == 0.0 && rho.nbar > 0.0) {
    const Eigen::VectorXd d = rho.matrix.mat().diagonal().real();
    for (int j = 0; j < h && j < n; ++j) g(j, j) = std::sqrt(std::max(d(j), 0.0));
  } else {
    const linalg::Eid eid = linalg::eid_hermitian(rho.matrix);
    for (int j = 0; j < h && j < n; ++j) {
      g.col(j) = eid.eigenvectors.col(j) * std::sqrt(std::max(eid.eigenvalues(j), 0.0));
    }
  }
  if (max_err != nullptr) {
    *max_err = (rho.matrix.mat() - g * g.adjoint()).cwiseAbs().maxCoeff();
  }
  return g;
}

}  // namespace

PpmParams::PpmParams(int m, int n, int h, double Ns, double nbar, std::int64_t cap)
    : m(m), n(n), h(h), Ns(Ns), nbar(nbar) {
  if (m < 2) throw std::invalid_argument("PpmParams: PPM order m must be >= 2");
  if (n < 1 || h < 1 || h > n) {
    throw std::invalid_argument("PpmParams: need 1 <= h <= n");
  }
  if (Ns < 0.0 || nbar < 0.0) {
    throw std::invalid_argument("PpmParams: Ns and nbar must be nonnegative");
  }
  composite_dim_ = checked_pow(n, m, "composite dimension n^m");
  composite_rank_ = checked_pow(h, m, "composite rank h^m");
  if (composite_dim_ > cap) {
    throw std::invalid_argument("PpmParams: composite dimension " +
                                std::to_string(composite_dim_) + " exceeds cap " +
                                std::to_string(cap));
  }
}

PpmParams choose_params(int m, double Ns, double nbar, double eps, double nu, int force_n,
                        int force_h, std::int64_t cap) {
  const Complex alpha(std::sqrt(Ns), 0.0);
  int n = force_n;
  if (n <= 0) {
    if (nbar == 0.0) {
      n = static_cast<int>(glauber::coherent_ket(alpha, eps).dim());
    } else {
      const auto rho1 = glauber::thermal_density(alpha, nbar, eps);
      const auto rho0 = glauber::thermal_density(0.0, nbar, eps);
      n = static_cast<int>(std::max(rho1.dim(), rho0.dim()));
    }
  }
  int h = force_h;
  if (h <= 0) {
    if (nbar == 0.0) {
      h = 1;
    } else {
      const auto f1 = glauber::factorize(glauber::thermal_density_fixed(alpha, nbar, n), nu);
      const auto f0 = glauber::factorize(glauber::thermal_density_fixed(0.0, nbar, n), nu);
      h = std::max(f1.rank, f0.rank);
    }
  }
  h = std::min(h, n);
  PpmParams out(m, n, h, Ns, nbar, cap);
  out.eps = eps;
  out.nu = nu;
  return out;
}

Constellation::Constellation(const PpmParams& params)
    : params_(params),
      rho0_(glauber::thermal_density_fixed(0.0, params.nbar, params.n)),
      rho1_(glauber::thermal_density_fixed(Complex(std::sqrt(params.Ns), 0.0), params.nbar,
                                           params.n)) {
  if (params.nbar == 0.0) {
    // Pure case: the rank-1 factors are the kets themselves (phase included).
    g0_ = Matrix::Zero(params.n, params.h);
    g1_ = Matrix::Zero(params.n, params.h);
    g0_(0, 0) = 1.0;
    g1_.col(0) = glauber::coherent_ket_fixed(rho1_.alpha, params.n).amplitudes;
    factor_error_ = 0.0;
    return;
  }
  double err0 = 0.0;
  double err1 = 0.0;
  g0_ = factor_at_rank(rho0_, params.h, &err0);
  g1_ = factor_at_rank(rho1_, params.h, &err1);
  factor_error_ = std::max(err0, err1);
}

Vector Constellation::composite_pure(int i) const {
  if (params_.nbar != 0.0) {
    throw std::logic_error("composite_pure: defined only for nbar = 0");
  }
  if (i < 0 || i >= params_.m) {
    throw std::out_of_range("composite_pure: symbol index " + std::to_string(i) +
                            " not in [0, " + std::to_string(params_.m) + ")");
  }
  const Vector pulse = g1_.col(0);
  Vector ground = Vector::Zero(params_.n);
  ground(0) = 1.0;
  Vector out = Vector::Ones(1);
  for (int p = params_.m - 1; p >= 0; --p) {
    out = linalg::kron(out, p == i ? pulse : ground);
  }
  return out;
}

std::int64_t Constellation::column_shift(std::int64_t c, int s) const {
  const std::int64_t mod = params_.composite_rank() - 1;
  if (c == mod) return c;
  const int r = (s % params_.m + params_.m) % params_.m;
  std::int64_t factor = 1;
  for (int i = 0; i < r; ++i) factor *= params_.h;
  return static_cast<std::int64_t>((static_cast<__int128>(c) * factor) % mod);
}

CompositeFactor Constellation::composite_factor(int i, std::int64_t dense_cap) const {
  if (i < 0 || i >= params_.m) {
    throw std::out_of_range("composite_factor: symbol index " + std::to_string(i) +
                            " not in [0, " + std::to_string(params_.m) + ")");
  }
  if (params_.composite_dim() > dense_cap) {
    throw std::invalid_argument("composite_factor: composite dimension " +
                                std::to_string(params_.composite_dim()) + " exceeds dense cap " +
                                std::to_string(dense_cap));
  }
  Matrix slot_built = Matrix::Ones(1, 1);
  for (int p = params_.m - 1; p >= 0; --p) {
    slot_built = linalg::kron(slot_built, p == i ? g1_ : g0_);
  }
  CompositeFactor out;
  out.index = i;
  // Reorder columns so that gamma_i = S^{-i} gamma_0 holds as matrices, not
  // just up to permutation; the Gram blocks need this alignment.
  out.matrix.resize(slot_built.rows(), slot_built.cols());
  for (std::int64_t c = 0; c < slot_built.cols(); ++c) {
    out.matrix.col(c) = slot_built.col(column_shift(c, i));
  }
  return out;
}

Matrix Constellation::gram_block(int s) const {
  if (s < 0 || s >= params_.m) {
    throw std::out_of_range("gram_block: shift index " + std::to_string(s) + " not in [0, " +
                            std::to_string(params_.m) + ")");
  }
  Matrix k = Matrix::Ones(1, 1);
  for (int p = params_.m - 1; p >= 0; --p) {
    const Matrix cross = (p == 0 ? g1_ : g0_).adjoint() * (p == s ? g1_ : g0_);
    k = linalg::kron(k, cross);
  }
  Matrix out(k.rows(), k.cols());
  for (std::int64_t c = 0; c < k.cols(); ++c) {
    out.col(c) = k.col(column_shift(c, s));
  }
  return out;
}

}  // namespace qppm::constellation
