// sdpa.hpp — sparse SDPA (.dat-s) export of the optimal-POVM semidefinite
// program, with a round-trip parser for testing.
//
// Layout (dual form: max tr(F0 Y), tr(Fk Y) = c_k, Y >= 0):
//   - Y is block-diagonal with m blocks, one per symbol; block i is the real
//     embedding [[Re P, -Im P], [Im P, Re P]] of the Hermitian POVM element
//     P = Pi_i, so each block has size 2N.
//   - F0 carries the embedded rho_i / (2m); tr(F0 Y) is then the correct
//     detection probability (the embedding doubles traces).
//   - The completeness constraint sum_i Pi_i = I contributes N^2 real
//     equalities: N diagonal (c = 2), N(N-1)/2 real parts and N(N-1)/2
//     imaginary parts of the off-diagonal entries (c = 0).

#pragma once

#include "qppm/linalg.hpp"

#include <string>
#include <vector>

namespace qppm::sdpa {

using linalg::Matrix;

/// One nonzero entry of a constraint matrix; indexes are 1-based as in the
/// file format, matno 0 denotes F0.
struct SdpEntry {
  int matno = 0;
  int block = 1;
  int row = 1;
  int col = 1;
  double value = 0.0;

  bool operator==(const SdpEntry&) const = default;
};

struct SdpProblem {
  std::vector<int> block_sizes;   // one per block (all positive here)
  std::vector<double> rhs;        // c vector, one per constraint
  std::vector<SdpEntry> entries;  // upper-triangle entries only

  bool operator==(const SdpProblem&) const = default;
};

/// Builds the POVM program from the m density operators (each N x N Hermitian,
/// given as dense matrices).
SdpProblem build_povm_problem(const std::vector<Matrix>& rhos);

void write_sdpa(const SdpProblem& p, const std::string& path);

SdpProblem parse_sdpa(const std::string& path);

}  // namespace qppm::sdpa
