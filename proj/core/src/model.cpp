#include "spdecay/model.hpp"

#include <cmath>

#include "spdecay/error.hpp"

namespace spdecay {

void validate(const ModelParams& params) {
  if (!std::isfinite(params.e1) || !std::isfinite(params.e2)) {
    throw Error(ErrorCode::InvalidArgument, "level energies must be finite");
  }
  if (!(params.e2 > params.e1)) {
    throw Error(ErrorCode::InvalidArgument,
                "upper level e2 must lie strictly above lower level e1");
  }
  validate(params.coupling);
}

}  // namespace spdecay
