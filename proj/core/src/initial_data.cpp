#include "quadlaw/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadlaw {

double ComponentData::operator()(double x) const {
  const auto it =
      std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  const std::size_t idx = static_cast<std::size_t>(it - breakpoints.begin());
  return pieces[idx](x);
}

void ComponentData::validate() const {
  if (pieces.size() != breakpoints.size() + 1)
    throw InvalidInput("ComponentData: pieces must be breakpoints + 1");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1]))
      throw InvalidInput("ComponentData: breakpoints must be strictly increasing");
  for (double b : breakpoints)
    if (!std::isfinite(b))
      throw InvalidInput("ComponentData: non-finite breakpoint");
  if (!(sup_norm >= 0.0) || !std::isfinite(sup_norm))
    throw InvalidInput("ComponentData: sup_norm must be finite and >= 0");

  // Spot-check boundedness by sampling each piece on its interval.
  const double tol = sup_norm * (1.0 + 1e-9) + 1e-12;
  auto check = [&](double x) {
    const double val = (*this)(x);
    if (!std::isfinite(val))
      throw InvalidInput("ComponentData: non-finite sample");
    if (std::abs(val) > tol)
      throw InvalidInput("ComponentData: sample exceeds declared sup-norm");
  };
  if (breakpoints.empty()) {
    for (double x : {-50.0, -5.0, -0.5, 0.0, 0.5, 5.0, 50.0}) check(x);
    return;
  }
  const double lo = breakpoints.front(), hi = breakpoints.back();
  for (double off : {0.5, 5.0, 50.0}) {
    check(lo - off);
    check(hi + off);
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const double a = breakpoints[i - 1], b = breakpoints[i];
    for (double s : {0.25, 0.5, 0.75}) check(a + s * (b - a));
  }
  for (double b : breakpoints) check(b);
}

ComponentData ComponentData::constant(double value) {
  ComponentData c;
  c.pieces = {[value](double) { return value; }};
  c.sup_norm = std::abs(value);
  return c;
}

ComponentData ComponentData::step(double left, double right) {
  ComponentData c;
  c.breakpoints = {0.0};
  c.pieces = {[left](double) { return left; },
              [right](double) { return right; }};
  c.sup_norm = std::max(std::abs(left), std::abs(right));
  return c;
}

ComponentData ComponentData::smooth(std::function<double(double)> f,
                                    double sup_norm) {
  ComponentData c;
  c.pieces = {std::move(f)};
  c.sup_norm = sup_norm;
  return c;
}

void PiecewiseInitialData::validate() const {
  u.validate();
  v.validate();
  w.validate();
  z.validate();
}

FieldSample PiecewiseInitialData::at(double x) const {
  return {u(x), v(x), w(x), z(x)};
}

const ComponentData& PiecewiseInitialData::component(int k) const {
  switch (k) {
    case 0: return u;
    case 1: return v;
    case 2: return w;
    default: return z;
  }
}

double PiecewiseInitialData::max_sup_norm() const {
  return std::max(std::max(u.sup_norm, v.sup_norm),
                  std::max(w.sup_norm, z.sup_norm));
}

std::pair<double, double> PiecewiseInitialData::breakpoint_span() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    const auto& bp = component(k).breakpoints;
    if (bp.empty()) continue;
    lo = std::min(lo, bp.front());
    hi = std::max(hi, bp.back());
  }
  if (lo > hi) return {0.0, 0.0};
  return {lo, hi};
}

PiecewiseInitialData PiecewiseInitialData::constant(double u, double v,
                                                    double w, double z) {
  return {ComponentData::constant(u), ComponentData::constant(v),
          ComponentData::constant(w), ComponentData::constant(z)};
}

PiecewiseInitialData PiecewiseInitialData::zero() {
  return constant(0.0, 0.0, 0.0, 0.0);
}

}  // namespace quadlaw
