#include "qppm/glauber.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qppm::glauber {

namespace {

// |L_m^{(k)}(x)| can overflow double for large |x|; run the three-term
// recurrence with periodic rescaling and return (log|L|, sign).
struct ScaledValue {
  double log_abs;
  double sign;
};

ScaledValue laguerre_scaled(int m, int k, double x) {
  if (m == 0) return {0.0, 1.0};
  double prev = 1.0;
  double cur = 1.0 + k - x;
  double log_scale = 0.0;
  for (int j = 1; j < m; ++j) {
    const double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
    const double mag = std::max(std::abs(prev), std::abs(cur));
    if (mag > 1e150) {
      prev /= mag;
      cur /= mag;
      log_scale += std::log(mag);
    }
  }
  if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
  return {std::log(std::abs(cur)) + log_scale, cur > 0 ? 1.0 : -1.0};
}

Vector coherent_amplitudes(Complex alpha, int dim) {
  const double ns = std::norm(alpha);
  const double log_abs_alpha = ns > 0 ? 0.5 * std::log(ns) : 0.0;
  const double phase = std::arg(alpha);
  Vector amp(dim);
  for (int k = 0; k < dim; ++k) {
    if (ns == 0.0 && k > 0) {
      amp(k) = 0.0;
      continue;
    }
    const double log_mag = -0.5 * ns + k * log_abs_alpha - 0.5 * std::lgamma(k + 1.0);
    amp(k) = std::polar(std::exp(log_mag), k * phase);
  }
  return amp;
}

// Entry rho(m, q) for q >= m, in log-magnitude form to survive large Ns.
Matrix thermal_matrix(Complex alpha, double nbar, int dim) {
  const double ns = std::norm(alpha);
  const double v = nbar / (1.0 + nbar);
  const double x = -ns / (nbar * (nbar + 1.0));
  const double log_common = std::log1p(-v) - (1.0 - v) * ns;
  const double log_ratio = ns > 0 ? 0.5 * std::log(ns) - std::log(nbar) : 0.0;
  const double phase = -std::arg(alpha);  // from conj(alpha)^(q-m)
  Matrix rho(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int q = m; q < dim; ++q) {
      if (q > m && ns == 0.0) {
        rho(m, q) = rho(q, m) = 0.0;
        continue;
      }
      const ScaledValue lag = laguerre_scaled(m, q - m, x);
      const double log_mag = log_common + q * std::log(v) + (q - m) * log_ratio +
                             0.5 * (std::lgamma(m + 1.0) - std::lgamma(q + 1.0)) + lag.log_abs;
      const Complex val = lag.sign * std::polar(std::exp(log_mag), (q - m) * phase);
      rho(m, q) = val;
      rho(q, m) = std::conj(val);
    }
  }
  return rho;
}

}  // namespace

double laguerre_assoc(int m, int k, double x) {
  if (m < 0 || k < 0) {
    throw std::domain_error("laguerre_assoc: indices must be nonnegative");
  }
  const ScaledValue v = laguerre_scaled(m, k, x);
  return v.sign * std::exp(v.log_abs);
}

CoherentKet coherent_ket(Complex alpha, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("coherent_ket: eps must be in (0, 1)");
  }
  const double ns = std::norm(alpha);
  // Smallest dim with Poisson(ns) CDF at dim-1 >= 1 - eps.
  int dim = 1;
  double pmf = std::exp(-ns);
  double cdf = pmf;
  while (cdf < 1.0 - eps) {
    pmf *= ns / dim;
    cdf += pmf;
    ++dim;
  }
  CoherentKet ket;
  ket.alpha = alpha;
  ket.amplitudes = coherent_amplitudes(alpha, dim);
  return ket;
}

CoherentKet coherent_ket_fixed(Complex alpha, int dim) {
  if (dim < 1) {
    throw std::domain_error("coherent_ket_fixed: dim must be >= 1");
  }
  CoherentKet ket;
  ket.alpha = alpha;
  ket.amplitudes = coherent_amplitudes(alpha, dim);
  return ket;
}

ThermalDensity thermal_density(Complex alpha, double nbar, double eps) {
  if (nbar < 0.0) {
    throw std::domain_error("thermal_density: nbar must be >= 0, got " + std::to_string(nbar));
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("thermal_density: eps must be in (0, 1)");
  }
  const double ns = std::norm(alpha);

  if (nbar == 0.0) {
    const CoherentKet ket = coherent_ket(alpha, eps);
    Matrix proj = ket.amplitudes * ket.amplitudes.adjoint();
    return ThermalDensity{alpha, 0.0, 0.0, HermitianMatrix(std::move(proj)), 1.0};
  }

  const double v = nbar / (1.0 + nbar);
  const double log_v = std::log(v);
  const double x = -ns / (nbar * (nbar + 1.0));
  const double log_common = std::log1p(-v) - (1.0 - v) * ns;

  auto log_diag = [&](int m) {
    const ScaledValue lag = laguerre_scaled(m, 0, x);
    return log_common + m * log_v + lag.log_abs;  // L_m(x) > 0 for x <= 0
  };

  // Quasi-unitary trace criterion.
  int dim = 0;
  double cum = 0.0;
  while (cum < 1.0 - eps) {
    cum += std::exp(log_diag(dim));
    ++dim;
    if (dim > 100000) {
      throw std::runtime_error("thermal_density: truncation did not converge");
    }
  }

  return ThermalDensity{alpha, nbar, v, HermitianMatrix(thermal_matrix(alpha, nbar, dim)), 1.0};
}

ThermalDensity thermal_density_fixed(Complex alpha, double nbar, int dim) {
  if (nbar < 0.0) {
    throw std::domain_error("thermal_density_fixed: nbar must be >= 0, got " +
                            std::to_string(nbar));
  }
  if (dim < 1) {
    throw std::domain_error("thermal_density_fixed: dim must be >= 1");
  }
  if (nbar == 0.0) {
    const Vector amp = coherent_amplitudes(alpha, dim);
    return ThermalDensity{alpha, 0.0, 0.0, HermitianMatrix(amp * amp.adjoint()), 1.0};
  }
  const double v = nbar / (1.0 + nbar);
  return ThermalDensity{alpha, nbar, v, HermitianMatrix(thermal_matrix(alpha, nbar, dim)), 1.0};
}

SlotFactor factorize(const ThermalDensity& rho, double nu) {
  const Eigen::Index n = rho.dim();
  const Matrix& mat = rho.matrix.mat();

  if (std::norm(rho.alpha) == 0.0 && rho.nbar > 0.0) {
    // Diagonal ground state: the factorization is immediate.
    Eigen::VectorXd d = mat.diagonal().real();
    int h = static_cast<int>(n);
    for (int r = 1; r <= n; ++r) {
      if (r == n || d(r) <= nu) {  // entries decrease with the photon number
        h = r;
        break;
      }
    }
    SlotFactor out;
    out.matrix = Matrix::Zero(n, h);
    for (int j = 0; j < h; ++j) out.matrix(j, j) = std::sqrt(std::max(d(j), 0.0));
    out.rank = h;
    double mse = 0.0;
    double maxerr = 0.0;
    for (Eigen::Index j = h; j < n; ++j) {
      maxerr = std::max(maxerr, d(j));
      mse += d(j) * d(j);
    }
    out.reconstruction_error = maxerr;
    out.mean_square_error = mse / static_cast<double>(n * n);
    return out;
  }

  const linalg::Eid eid = linalg::eid_hermitian(rho.matrix);
  Matrix residual = mat;
  int h = static_cast<int>(n);
  double maxerr = residual.cwiseAbs().maxCoeff();
  for (int r = 0; r < n; ++r) {
    residual -= eid.eigenvalues(r) * (eid.eigenvectors.col(r) * eid.eigenvectors.col(r).adjoint());
    maxerr = residual.cwiseAbs().maxCoeff();
    if (maxerr <= nu) {
      h = r + 1;
      break;
    }
  }
  SlotFactor out;
  out.matrix.resize(n, h);
  for (int j = 0; j < h; ++j) {
    out.matrix.col(j) = eid.eigenvectors.col(j) * std::sqrt(std::max(eid.eigenvalues(j), 0.0));
  }
  out.rank = h;
  Matrix delta = mat - out.matrix * out.matrix.adjoint();
  out.reconstruction_error = delta.cwiseAbs().maxCoeff();
  out.mean_square_error = delta.cwiseAbs2().sum() / static_cast<double>(n * n);
  return out;
}

ThermalDensity normalized(const ThermalDensity& rho) {
  const double tr = rho.trace();
  if (tr <= 0.0) {
    throw std::domain_error("normalized: trace must be positive, got " + std::to_string(tr));
  }
  ThermalDensity out = rho;
  out.matrix = HermitianMatrix(rho.matrix.mat() / tr);
  out.scale_applied = 1.0 / tr;
  return out;
}

}  // namespace qppm::glauber
