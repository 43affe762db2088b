#include "gbm/error.hpp"

namespace gbm {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::domain: return "domain error";
    case Errc::definiteness: return "definiteness error";
    case Errc::configuration: return "configuration error";
    case Errc::dimension: return "dimension error";
    case Errc::capability: return "capability error";
    case Errc::range: return "range error";
    case Errc::numerical_quality: return "numerical-quality error";
    case Errc::corner_regularity: return "corner-regularity error";
    case Errc::singular_gradient: return "singular-gradient error";
    case Errc::insufficient_data: return "insufficient-data error";
    case Errc::model_consistency: return "model-consistency error";
    case Errc::inconsistency: return "inconsistency error";
  }
  return "error";
}

}  // namespace gbm
