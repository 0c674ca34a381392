#include "qppm/result.hpp"

#include <stdexcept>
#include <utility>

namespace qppm {

DetectionResult make_result(std::string method, double raw_pc, Diagnostics diagnostics) {
  constexpr double kSlack = 1e-9;
  if (raw_pc < -kSlack || raw_pc > 1.0 + kSlack) {
    throw std::runtime_error("make_result(" + method + "): probability " +
                             std::to_string(raw_pc) + " out of [0,1] beyond slack");
  }
  diagnostics.raw_pc = raw_pc;
  DetectionResult out;
  out.method = std::move(method);
  out.Pc = raw_pc < 0.0 ? 0.0 : (raw_pc > 1.0 ? 1.0 : raw_pc);
  out.Pe = 1.0 - out.Pc;
  out.diagnostics = diagnostics;
  return out;
}

}  // namespace qppm
