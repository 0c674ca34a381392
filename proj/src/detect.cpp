#include "qppm/detect.hpp"

#include "qppm/sdpa.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qppm::detect {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BinaryProblem ppm_binary_problem(const Constellation& c, bool normalize) {
  if (c.params().m != 2) {
    throw std::invalid_argument("ppm_binary_problem: needs a 2-PPM constellation, got m = " +
                                std::to_string(c.params().m));
  }
  Matrix ground = c.rho0().matrix.mat();
  Matrix pulse = c.rho1().matrix.mat();
  if (normalize) {
    // Common factor from the pulse trace only: both slots get the same scale,
    // so the composite densities stay products of identically scaled slots.
    const double scale = 1.0 / c.rho1().trace();
    ground *= scale;
    pulse *= scale;
  }
  BinaryProblem p;
  p.rho0 = HermitianMatrix(linalg::kron(ground, pulse), 1e-9);
  p.rho1 = HermitianMatrix(linalg::kron(pulse, ground), 1e-9);
  return p;
}

HelstromOutcome helstrom_binary_full(const BinaryProblem& p) {
  const auto start = Clock::now();
  if (p.rho0.dim() != p.rho1.dim()) {
    throw std::invalid_argument("helstrom_binary: dimension mismatch, " +
                                std::to_string(p.rho0.dim()) + " vs " +
                                std::to_string(p.rho1.dim()));
  }
  if (p.q0 < 0.0 || p.q1 < 0.0 || std::abs(p.q0 + p.q1 - 1.0) > 1e-12) {
    throw std::invalid_argument("helstrom_binary: priors must be nonnegative and sum to 1");
  }
  const HermitianMatrix d(p.q1 * p.rho1.mat() - p.q0 * p.rho0.mat(), 1e-9);
  const linalg::Eid eid = linalg::eid_hermitian(d);

  double pc = p.q0;
  Matrix pi1 = Matrix::Zero(d.dim(), d.dim());
  for (Eigen::Index i = 0; i < d.dim(); ++i) {
    if (eid.eigenvalues(i) > 0.0) {  // zero eigenvalues decide for hypothesis 0
      pc += eid.eigenvalues(i);
      pi1 += eid.eigenvectors.col(i) * eid.eigenvectors.col(i).adjoint();
    }
  }

  HelstromOutcome out;
  out.pi1 = std::move(pi1);
  out.pi0 = Matrix::Identity(d.dim(), d.dim()) - out.pi1;

  Diagnostics diag;
  diag.m = 2;
  diag.runtime_s = seconds_since(start);
  out.result = make_result("helstrom-binary", pc, diag);
  return out;
}

DetectionResult helstrom_binary(const BinaryProblem& p) {
  return helstrom_binary_full(p).result;
}

DetectionResult pure_ppm_closed_form(int m, double Ns) {
  if (m < 2) throw std::invalid_argument("pure_ppm_closed_form: m must be >= 2");
  if (Ns < 0.0) throw std::invalid_argument("pure_ppm_closed_form: Ns must be >= 0");
  const double e = std::exp(-Ns);
  const double root = std::sqrt(1.0 + (m - 1) * e) + (m - 1) * std::sqrt(1.0 - e);
  const double pc = root * root / (static_cast<double>(m) * m);
  Diagnostics d;
  d.m = m;
  d.Ns = Ns;
  return make_result("closed-form-pure", pc, d);
}

DetectionResult classical_ppm(int m, double Ns, double nbar) {
  if (m < 2) throw std::invalid_argument("classical_ppm: m must be >= 2");
  if (Ns < 0.0 || nbar < 0.0) {
    throw std::invalid_argument("classical_ppm: Ns and nbar must be >= 0");
  }
  const double v = nbar / (1.0 + nbar);
  // Alternating binomial sum with Kahan compensation.
  double sum = 0.0;
  double comp = 0.0;
  double binom = static_cast<double>(m) * (m - 1) / 2.0;  // C(m, 2)
  for (int i = 2; i <= m; ++i) {
    const double expo = -(1.0 - v) * (1.0 - std::pow(v, i - 1)) * Ns / (1.0 - std::pow(v, i));
    const double sign = i % 2 == 0 ? 1.0 : -1.0;
    const double term = sign * binom * std::exp(expo);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    binom *= static_cast<double>(m - i) / (i + 1);
  }
  const double pe = sum / m;
  Diagnostics d;
  d.m = m;
  d.Ns = Ns;
  d.nbar = nbar;
  return make_result("classical-ppm", 1.0 - pe, d);
}

OokBaselines ook_baselines(double Ns) {
  if (Ns < 0.0) throw std::invalid_argument("ook_baselines: Ns must be >= 0");
  OokBaselines out;
  const double e2 = std::exp(-2.0 * Ns);
  out.classical_pe = 0.5 * e2;
  out.helstrom_pe = 0.5 * (1.0 - std::sqrt(1.0 - e2));
  out.helstrom_asymptotic_pe = 0.25 * e2;
  return out;
}

double dolinar_ppm_asymptotic_pe(int m, double Ns) {
  return 0.5 * (m - 1) * std::exp(-2.0 * Ns);
}

double ppm_quantum_limit_asymptotic_pe(int m, double Ns) {
  return 0.25 * (m - 1) * std::exp(-2.0 * Ns);
}

SlotwiseClassicalPpm slotwise_classical_ppm_pe(int m, double Ns) {
  if (m < 2) throw std::invalid_argument("slotwise_classical_ppm_pe: m must be >= 2");
  SlotwiseClassicalPpm out;
  out.pe = static_cast<double>(m) / (m - 1) * std::exp(-Ns);
  out.exceeds_unity = out.pe > 1.0;
  return out;
}

void export_sdp(const Constellation& c, const std::string& path, std::int64_t cap) {
  const auto& p = c.params();
  if (p.composite_dim() > cap) {
    throw std::invalid_argument("export_sdp: composite dimension " +
                                std::to_string(p.composite_dim()) + " exceeds cap " +
                                std::to_string(cap));
  }
  // Exact composite densities as Kronecker products of the slot densities.
  std::vector<Matrix> rhos;
  rhos.reserve(p.m);
  for (int i = 0; i < p.m; ++i) {
    Matrix rho = Matrix::Ones(1, 1);
    for (int slot = p.m - 1; slot >= 0; --slot) {
      rho = linalg::kron(rho, slot == i ? c.rho1().matrix.mat() : c.rho0().matrix.mat());
    }
    rhos.push_back(std::move(rho));
  }
  sdpa::write_sdpa(sdpa::build_povm_problem(rhos), path);
}

}  // namespace qppm::detect
