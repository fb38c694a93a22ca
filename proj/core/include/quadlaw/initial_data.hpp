#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "quadlaw/errors.hpp"
#include "quadlaw/field_sample.hpp"

namespace quadlaw {

// One scalar component of the initial data: smooth pieces separated by
// strictly increasing breakpoints, plus a declared sup-norm bound.
// pieces[i] covers (breakpoints[i-1], breakpoints[i]); the first piece
// extends to -inf and the last to +inf. At a breakpoint the right piece
// wins (a measure-zero convention).
struct ComponentData {
  std::vector<double> breakpoints;
  std::vector<std::function<double(double)>> pieces;
  double sup_norm = 0.0;

  double operator()(double x) const;
  void validate() const;

  static ComponentData constant(double value);
  static ComponentData step(double left, double right);  // jump at x = 0
  static ComponentData smooth(std::function<double(double)> f,
                              double sup_norm);
};

struct PiecewiseInitialData {
  ComponentData u, v, w, z;

  void validate() const;
  FieldSample at(double x) const;
  const ComponentData& component(int k) const;
  double max_sup_norm() const;
  // Hull of all breakpoints; {0, 0} when there are none.
  std::pair<double, double> breakpoint_span() const;

  static PiecewiseInitialData constant(double u, double v, double w, double z);
  static PiecewiseInitialData zero();
};

}  // namespace quadlaw
