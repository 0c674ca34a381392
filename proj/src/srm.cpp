#include "qppm/srm.hpp"

#include "qppm/gus.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qppm::srm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Diagnostics diagnostics_for(const Constellation& c) {
  const auto& p = c.params();
  Diagnostics d;
  d.m = p.m;
  d.n = p.n;
  d.h = p.h;
  d.Ns = p.Ns;
  d.nbar = p.nbar;
  d.eps = p.eps;
  d.nu = p.nu;
  d.trace_deficit = c.trace_deficit();
  return d;
}

HermitianMatrix symmetrized(Matrix a) {
  // Hermiticity holds analytically; allow roundoff proportional to the scale.
  const double tol = 1e-8 * std::max(1.0, a.cwiseAbs().maxCoeff());
  return HermitianMatrix(std::move(a), tol);
}

// Dense small-instance objects shared by the operator path, the POVM
// reference, and the certificate.
struct DenseContext {
  Matrix gamma0;
  Matrix t_inv_sqrt;
};

DenseContext dense_context(const Constellation& c, std::int64_t cap) {
  const auto& p = c.params();
  if (p.composite_dim() > cap) {
    throw std::invalid_argument(
        "dense Gram-operator path: composite dimension " + std::to_string(p.composite_dim()) +
        " exceeds cap " + std::to_string(cap) + "; use the Gram-matrix path");
  }
  DenseContext ctx;
  ctx.gamma0 = c.composite_factor(0, cap).matrix;
  const Eigen::Index big_n = ctx.gamma0.rows();
  Matrix t = Matrix::Zero(big_n, big_n);
  t += ctx.gamma0 * ctx.gamma0.adjoint();
  for (int i = 1; i < p.m; ++i) {
    const Matrix gi = c.composite_factor(i, cap).matrix;
    t += gi * gi.adjoint();
  }
  ctx.t_inv_sqrt = linalg::inv_sqrt_psd(symmetrized(std::move(t))).mat();
  return ctx;
}

}  // namespace

DftBlocks dft_blocks(const Constellation& c) {
  const int m = c.params().m;
  std::vector<Matrix> grams;
  grams.reserve(m);
  for (int s = 0; s < m; ++s) grams.push_back(c.gram_block(s));

  DftBlocks out;
  out.m = m;
  out.blocks.reserve(m);
  for (int k = 0; k < m; ++k) {
    Matrix ek = Matrix::Zero(grams[0].rows(), grams[0].cols());
    for (int s = 0; s < m; ++s) {
      // W_m = e^{i 2 pi/m}; the DFT uses W_m^{-ks}.
      const Complex w = std::polar(1.0, -2.0 * std::numbers::pi * k * s / m);
      ek += w * grams[s];
    }
    out.blocks.push_back(symmetrized(std::move(ek)));
  }
  return out;
}

DetectionResult pc_gram_matrix(const Constellation& c, int threads) {
  return pc_gram_matrix(c, dft_blocks(c), threads);
}

DetectionResult pc_gram_matrix(const Constellation& c, const DftBlocks& blocks, int threads) {
  const auto start = Clock::now();
  const int m = blocks.m;
  constexpr double kPsdFloor = 1e-9;

  auto root_of = [&](int k) -> Matrix {
    try {
      return linalg::sqrt_psd(blocks.blocks[static_cast<std::size_t>(k)], kPsdFloor).mat();
    } catch (const std::exception& e) {
      throw std::runtime_error("pc_gram_matrix: square root of block " + std::to_string(k) +
                               " failed: " + e.what());
    }
  };

  Matrix sum = Matrix::Zero(blocks.blocks[0].dim(), blocks.blocks[0].dim());
  if (threads == 1) {
    for (int k = 0; k < m; ++k) sum += root_of(k);
  } else {
    std::vector<std::future<Matrix>> jobs;
    jobs.reserve(m);
    for (int k = 0; k < m; ++k) {
      jobs.push_back(std::async(std::launch::async, root_of, k));
    }
    for (auto& job : jobs) sum += job.get();
  }

  // tr(S^2) = ||S||_F^2 for Hermitian S.
  const double pc = sum.squaredNorm() / (static_cast<double>(m) * m);
  Diagnostics d = diagnostics_for(c);
  d.runtime_s = seconds_since(start);
  return make_result("srm-gram-matrix", pc, d);
}

DetectionResult pc_gram_operator(const Constellation& c, std::int64_t cap) {
  const auto start = Clock::now();
  const DenseContext ctx = dense_context(c, cap);
  const Matrix a = ctx.gamma0.adjoint() * ctx.t_inv_sqrt * ctx.gamma0;
  const double pc = (a * a).trace().real();
  Diagnostics d = diagnostics_for(c);
  d.runtime_s = seconds_since(start);
  return make_result("srm-gram-operator", pc, d);
}

PovmReference srm_povm_reference(const Constellation& c, std::int64_t cap) {
  const auto& p = c.params();
  const DenseContext ctx = dense_context(c, cap);
  const gus::ShuffleOperator shuffle(p.n, p.m);

  PovmReference out;
  out.mu0 = ctx.t_inv_sqrt * ctx.gamma0;
  out.pi0 = out.mu0 * out.mu0.adjoint();

  std::vector<Matrix> mus;
  mus.reserve(p.m);
  for (int i = 0; i < p.m; ++i) {
    mus.push_back(gus::apply_symmetry_power(shuffle, -i, out.mu0));
    out.povm.push_back(mus.back() * mus.back().adjoint());
  }

  out.transition.resize(p.m, p.m);
  for (int i = 0; i < p.m; ++i) {
    const Matrix gi = c.composite_factor(i, cap).matrix;
    for (int j = 0; j < p.m; ++j) {
      // tr(rho_i Pi_j) = ||mu_j* gamma_i||_F^2
      out.transition(i, j) = (mus[static_cast<std::size_t>(j)].adjoint() * gi).squaredNorm();
    }
  }

  Matrix sum = Matrix::Zero(out.pi0.rows(), out.pi0.cols());
  for (const Matrix& pi : out.povm) sum += pi;
  const linalg::Eid eid = linalg::eid_hermitian(symmetrized(std::move(sum)));
  out.sum_max_eigenvalue = eid.eigenvalues(0);
  return out;
}

OptimalityCertificate srm_optimality_certificate(const Constellation& c, std::int64_t cap) {
  const DenseContext ctx = dense_context(c, cap);
  const Matrix a = ctx.gamma0.adjoint() * ctx.t_inv_sqrt * ctx.gamma0;
  const Eigen::Index width = a.rows();

  OptimalityCertificate out;
  out.alpha = a.trace() / static_cast<double>(width);
  const double norm = a.norm();
  if (norm == 0.0) {
    out.deviation = 0.0;
    out.degenerate = true;
    return out;
  }
  Matrix dev = a;
  dev.diagonal().array() -= out.alpha;
  out.deviation = dev.norm() / norm;
  out.degenerate = c.params().Ns == 0.0;
  return out;
}

}  // namespace qppm::srm
