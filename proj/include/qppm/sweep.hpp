// sweep.hpp — experiment harness: parameter sweeps over (Ns, nbar) per
// method, CSV emission, and static SVG plot rendering.

#pragma once

#include "qppm/constellation.hpp"
#include "qppm/glauber.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qppm::sweep {

constexpr std::int64_t kDefaultEidCap = 1500;  // max composite rank H = h^m

/// Sweep request. Methods: srm, helstrom, pure-closed-form, classical,
/// ook-baselines (the last expands to ook-classical and ook-helstrom rows).
struct SweepSpec {
  int m = 2;
  std::vector<double> ns_grid;
  std::vector<double> nbar_list;
  std::vector<std::string> methods;
  double eps = glauber::kDefaultTruncationEps;
  double nu = glauber::kDefaultRankNu;
  int force_n = 0;
  int force_h = 0;
  std::int64_t composite_cap = constellation::kDefaultCompositeCap;
  std::int64_t eid_cap = kDefaultEidCap;
  int threads = 0;  // worker pool size, 0 = hardware concurrency
};

/// Throws std::invalid_argument on an inconsistent spec (empty grids,
/// unknown methods, helstrom with m != 2, negative values).
void validate(const SweepSpec& spec);

struct SweepRow {
  std::string method;
  int m = 0;
  double Ns = 0.0;
  double nbar = 0.0;
  int n = 0;
  int h = 0;
  std::int64_t H = 0;
  double Pe = 0.0;
  double Pc = 0.0;
  double runtime_s = 0.0;
  std::string error;  // nonempty when this point failed; excluded from CSV
};

/// Runs all (method, nbar, Ns) points on a bounded worker pool; rows come
/// back ordered by (method, nbar, Ns) regardless of schedule. Per-point
/// failures land in SweepRow::error and do not stop the sweep.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// CSV with header method,m,Ns,nbar,n,h,H,Pe,Pc,runtime_s; error rows are
/// skipped.
std::string to_csv(const std::vector<SweepRow>& rows);
void write_csv(const std::vector<SweepRow>& rows, const std::string& path);
std::vector<SweepRow> read_csv(const std::string& path);

/// One SVG per call: Pe (log scale) against Ns, one polyline per
/// (method, nbar) pair. Rows with Pe <= 0 or errors are skipped.
void write_plot(const std::vector<SweepRow>& rows, const std::string& path);

/// EID cap from the QPPM_MAX_H environment variable, or `fallback`.
std::int64_t eid_cap_from_env(std::int64_t fallback = kDefaultEidCap);

}  // namespace qppm::sweep
