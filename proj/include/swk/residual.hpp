#pragma once

#include <cmath>
#include <limits>

namespace swk {

/// Running maximum of residuals in which a NaN counts as +∞, so a failed
/// evaluation can never hide behind std::max's comparison semantics.
inline double worst_of(double current, double candidate) {
  if (std::isnan(candidate)) return std::numeric_limits<double>::infinity();
  return candidate > current ? candidate : current;
}

}  // namespace swk
