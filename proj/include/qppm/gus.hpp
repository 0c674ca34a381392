// gus.hpp — the PPM slot-rotation symmetry operator as a structured
// permutation: cycle enumeration, multiplicity counting, and the analytic
// eigendecomposition into per-eigenvalue column families.

#pragma once

#include "qppm/linalg.hpp"

#include <cstdint>
#include <vector>

namespace qppm::gus {

using linalg::Complex;
using linalg::Matrix;

/// Cyclic shift S of the m-fold tensor power of an n-dimensional space.
/// On basis indexes (base-n digit strings, slot 0 = least significant digit)
/// S rotates the digit string one step: S w(k) = w(k * n^(m-1) mod (n^m - 1)),
/// with the all-max word fixed. The inverse map pi(k) = n*k mod (n^m - 1)
/// generates the cycle members in the order the eigenvector recipes use.
class ShuffleOperator {
 public:
  ShuffleOperator(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  std::int64_t dim() const { return dim_; }

  /// Index map of S itself: S w(k) = w(apply_index(k)).
  std::int64_t apply_index(std::int64_t k) const { return power_index(k, 1); }

  /// Index map of S^t (t may be negative).
  std::int64_t power_index(std::int64_t k, long t) const;

  /// pi(k) = n*k mod (n^m - 1); the cycle-generation recursion.
  std::int64_t cycle_next(std::int64_t k) const;

  /// Dense materialization, small instances only (dim <= cap).
  Matrix dense(std::int64_t cap = 4096) const;

 private:
  int n_;
  int m_;
  std::int64_t dim_;
};

struct Cycle {
  int period = 0;
  std::int64_t representative = 0;      // minimal index in the orbit
  std::vector<std::int64_t> members;    // ordered by the pi recursion
};

struct CycleDecomposition {
  int n = 0;
  int m = 0;
  std::vector<Cycle> cycles;                   // grouped by ascending period
  std::vector<std::pair<int, std::int64_t>> counts;  // (period p, N_p)

  std::int64_t count_for_period(int p) const;
};

CycleDecomposition cycles(int n, int m);

/// Eigenvalue multiplicities (n_0, ..., n_{m-1}) of S, eigenvalue W_m^{-k},
/// computed arithmetically from the divisor recursion n^p = sum_{d|p} N_d.
std::vector<std::int64_t> count_multiplicities(int n, int m);

/// Sparse eigenvector family: one recipe per (cycle, phase index). The
/// eigenvector for a cycle of period p and phase j is
///   (1/sqrt p) sum_h W_p^{-jh} w(k_h),
/// with eigenvalue W_m^{-i}, i = j*m/p.
struct SymmetrySpectrum {
  int n = 0;
  int m = 0;
  CycleDecomposition decomposition;
  // recipes[i] lists (cycle index, phase j) pairs for global eigenvalue index i.
  std::vector<std::vector<std::pair<std::size_t, int>>> recipes;

  std::vector<std::int64_t> multiplicities() const;
  /// Dense n_i-column eigenvector matrix Y_i (small instances).
  Matrix family(int i) const;
};

SymmetrySpectrum spectrum(int n, int m);

/// Rows of x permuted by the index map of S^t; O(rows * cols), no matrices.
Matrix apply_symmetry_power(const ShuffleOperator& s, long t, const Matrix& x);

}  // namespace qppm::gus
