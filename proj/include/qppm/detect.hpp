// detect.hpp — exact and baseline detectors: the binary optimum, closed-form
// pure-state PPM, classical photon-counting PPM, on-off-keying limits, and
// export of the m-ary optimal-measurement problem for external conic solvers.

#pragma once

#include "qppm/constellation.hpp"
#include "qppm/linalg.hpp"
#include "qppm/result.hpp"

#include <string>

namespace qppm::detect {

using constellation::Constellation;
using linalg::HermitianMatrix;
using linalg::Matrix;

/// Binary hypothesis pair with priors.
struct BinaryProblem {
  HermitianMatrix rho0;
  HermitianMatrix rho1;
  double q0 = 0.5;
  double q1 = 0.5;
};

/// Composite 2-PPM binary problem: rho_0 = rho^0 (x) rho^1 and
/// rho_1 = rho^1 (x) rho^0 (slot 0 is the rightmost factor). When `normalize`
/// is set both slot densities are scaled by the common factor 1/tr(rho^1)
/// before taking products.
BinaryProblem ppm_binary_problem(const Constellation& c, bool normalize = false);

/// Optimal binary decision: D = q1 rho1 - q0 rho0,
/// Pc = q0 + sum of positive eigenvalues of D. Zero eigenvalues go to Pi_0.
struct HelstromOutcome {
  DetectionResult result;
  Matrix pi0;
  Matrix pi1;
};

HelstromOutcome helstrom_binary_full(const BinaryProblem& p);
DetectionResult helstrom_binary(const BinaryProblem& p);

/// Pc = (1/m^2) (sqrt(1 + (m-1) e^{-Ns}) + (m-1) sqrt(1 - e^{-Ns}))^2.
DetectionResult pure_ppm_closed_form(int m, double Ns);

/// Photon-counting PPM with geometric (thermal) dark counts:
/// Pe = (1/m) sum_{i=2..m} (-1)^i C(m,i) exp[-(1-v)(1-v^{i-1}) Ns / (1-v^i)],
/// v = nbar/(1+nbar).
DetectionResult classical_ppm(int m, double Ns, double nbar);

/// On-off-keying error rates and the related asymptotes.
struct OokBaselines {
  double classical_pe = 0.0;             // (1/2) e^{-2Ns}
  double helstrom_pe = 0.0;              // (1/2)[1 - sqrt(1 - e^{-2Ns})]
  double helstrom_asymptotic_pe = 0.0;   // (1/4) e^{-2Ns}
};

OokBaselines ook_baselines(double Ns);

/// Conditionally-nulling receiver asymptote, (1/2)(m-1) e^{-2Ns}.
double dolinar_ppm_asymptotic_pe(int m, double Ns);
/// PPM quantum-limit asymptote, (1/4)(m-1) e^{-2Ns}.
double ppm_quantum_limit_asymptotic_pe(int m, double Ns);

/// Slot-by-slot classical PPM error rate as printed in the source material,
/// (m/(m-1)) e^{-Ns}. The prefactor exceeds 1 for small Ns; `exceeds_unity`
/// flags when the value is not a probability. The self-consistent noiseless
/// baseline is classical_ppm(m, Ns, 0) = ((m-1)/m) e^{-Ns}.
struct SlotwiseClassicalPpm {
  double pe = 0.0;
  bool exceeds_unity = false;
};

SlotwiseClassicalPpm slotwise_classical_ppm_pe(int m, double Ns);

/// Writes the optimal-POVM semidefinite program for the constellation to
/// `path` in the sparse SDPA text format. Refuses composite dimensions above
/// `cap` (default 150).
void export_sdp(const Constellation& c, const std::string& path, std::int64_t cap = 150);

}  // namespace qppm::detect
