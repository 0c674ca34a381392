// constellation.hpp — the m-ary PPM constellation on the composite space
// H0^{tensor m}: composite pure kets, low-rank composite density factors, and
// the Gram blocks G_{0s}, all built from slot-level objects so that no
// N-dimensional matrix is formed in the production path.

#pragma once

#include "qppm/glauber.hpp"
#include "qppm/gus.hpp"
#include "qppm/linalg.hpp"

#include <cstdint>

namespace qppm::constellation {

using linalg::Complex;
using linalg::HermitianMatrix;
using linalg::Matrix;
using linalg::Vector;

constexpr std::int64_t kDefaultCompositeCap = std::int64_t{1} << 24;
constexpr std::int64_t kDefaultDenseCap = 4096;

/// Dimension schedule of one PPM instance. N = n^m is the composite dimension,
/// h^m the composite factor width; construction refuses N above `cap`.
struct PpmParams {
  int m = 2;          // PPM order
  int n = 1;          // slot (Fock-space) dimension
  int h = 1;          // slot factor rank
  double Ns = 0.0;    // mean signal photons per pulse, |alpha|^2
  double nbar = 0.0;  // mean thermal photons per mode
  double eps = 0.0;   // truncation accuracy used to pick n (0 if n was given)
  double nu = 0.0;    // factorization accuracy used to pick h (0 if h was given)

  PpmParams(int m, int n, int h, double Ns, double nbar,
            std::int64_t cap = kDefaultCompositeCap);

  std::int64_t composite_dim() const { return composite_dim_; }   // n^m
  std::int64_t composite_rank() const { return composite_rank_; }  // h^m

 private:
  std::int64_t composite_dim_ = 1;
  std::int64_t composite_rank_ = 1;
};

/// Chooses the slot dimension n (quasi-unitary trace criterion at eps) and the
/// common slot rank h (factorization threshold nu) for given Ns, nbar.
/// force_n / force_h override the automatic choice when positive.
PpmParams choose_params(int m, double Ns, double nbar,
                        double eps = glauber::kDefaultTruncationEps,
                        double nu = glauber::kDefaultRankNu, int force_n = 0,
                        int force_h = 0, std::int64_t cap = kDefaultCompositeCap);

/// N x h^m factor of the composite density operator of one PPM symbol.
struct CompositeFactor {
  Matrix matrix;
  int index = 0;
};

/// Slot states and factors shared by all symbols: the ground density rho0 and
/// the pulse density rho1 on a common n-dimensional space, with n x h factors
/// g0, g1 (the lower-rank one zero-padded to the common width h).
class Constellation {
 public:
  explicit Constellation(const PpmParams& params);

  const PpmParams& params() const { return params_; }
  const glauber::ThermalDensity& rho0() const { return rho0_; }
  const glauber::ThermalDensity& rho1() const { return rho1_; }
  const Matrix& g0() const { return g0_; }
  const Matrix& g1() const { return g1_; }
  /// Worst max-entry reconstruction error of the two slot factors.
  double factor_error() const { return factor_error_; }
  /// Trace deficit 1 - tr(rho) of the truncated pulse density.
  double trace_deficit() const { return 1.0 - rho1_.trace(); }

  /// Pure composite ket |gamma_i> (nbar = 0 only): pulse in slot i, slot 0 is
  /// the rightmost Kronecker factor.
  Vector composite_pure(int i) const;

  /// Composite factor gamma_i with gamma_i gamma_i* = kron of slot densities
  /// and gamma_i = S^{-i} gamma_0 as matrices. Dense oracle path only.
  CompositeFactor composite_factor(int i, std::int64_t dense_cap = kDefaultDenseCap) const;

  /// Gram block G_{0s} = gamma_0* gamma_s (h^m x h^m), built from h x h
  /// slot-level cross-Grams; no N-dimensional object is formed.
  Matrix gram_block(int s) const;

 private:
  /// Column permutation aligning the slot-built Kronecker factor of symbol s
  /// with S^{-s} gamma_0: digit rotation C -> C * h^{(m-s) mod m} mod (h^m - 1).
  std::int64_t column_shift(std::int64_t c, int s) const;

  PpmParams params_;
  glauber::ThermalDensity rho0_;
  glauber::ThermalDensity rho1_;
  Matrix g0_;
  Matrix g1_;
  double factor_error_ = 0.0;
};

}  // namespace qppm::constellation
