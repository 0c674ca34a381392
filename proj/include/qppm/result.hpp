// result.hpp — the uniform detection-performance record every evaluator
// returns, with per-run diagnostics and a guarded probability clamp.

#pragma once

#include <string>

namespace qppm {

struct Diagnostics {
  int m = 0;
  int n = 0;
  int h = 0;
  double Ns = 0.0;
  double nbar = 0.0;
  double eps = 0.0;
  double nu = 0.0;
  double trace_deficit = 0.0;
  double raw_pc = 0.0;  // before the [0,1] clamp
  double runtime_s = 0.0;
};

struct DetectionResult {
  std::string method;
  double Pc = 0.0;
  double Pe = 1.0;
  Diagnostics diagnostics;
};

/// Builds a result from a raw probability. Values outside [0,1] by at most
/// 1e-9 are clamped (the raw value is kept in diagnostics); anything further
/// out throws.
DetectionResult make_result(std::string method, double raw_pc, Diagnostics diagnostics);

}  // namespace qppm
