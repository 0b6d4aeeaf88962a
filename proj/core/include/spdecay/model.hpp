#pragma once

#include "spdecay/coupling.hpp"

namespace spdecay {

/// One physical scenario: the two level energies and the field coupling.
struct ModelParams {
  double e1 = 0.0;
  double e2 = 1.0;
  CouplingModel coupling;

  double level_gap() const noexcept { return e2 - e1; }
};

/// Throws Error(InvalidArgument) unless e2 > e1 and the coupling is valid.
void validate(const ModelParams& params);

}  // namespace spdecay
