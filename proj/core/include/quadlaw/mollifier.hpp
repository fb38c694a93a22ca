#pragma once

#include "quadlaw/initial_data.hpp"
#include "quadlaw/quadrature.hpp"

namespace quadlaw {

// Friedrichs mollifier: the standard bump scaled to [-radius, radius] and
// normalized to unit mass.
struct MollifierSpec {
  double radius = 0.1;
  double normalization = 0.0;  // derived

  explicit MollifierSpec(double radius);
  double eta(double s) const;
  // Quadrature check of the unit-mass invariant.
  double mass(const QuadratureSpec& quad = {}) const;
};

ComponentData mollify(const ComponentData& data, const MollifierSpec& spec);
PiecewiseInitialData mollify(const PiecewiseInitialData& data,
                             const MollifierSpec& spec);

}  // namespace quadlaw
