#pragma once

#include <stdexcept>
#include <string>

namespace gbm {

enum class Errc {
  domain,              // point outside chart domain or region
  definiteness,        // metric not symmetric positive definite
  configuration,       // invalid numerical configuration
  dimension,           // operation not defined in this dimension
  capability,          // request beyond what the implementation supports
  range,               // argument outside the formula's range of validity
  numerical_quality,   // input violates a required symmetry
  corner_regularity,   // active constraint gradients are dependent
  singular_gradient,   // constraint gradient vanishes
  insufficient_data,   // topology neither known nor supplied
  model_consistency,   // model violates its own invariants
  inconsistency,       // two independent estimates disagree
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace gbm
