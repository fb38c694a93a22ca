#include "quadlaw/mollifier.hpp"

#include <algorithm>
#include <cmath>

namespace quadlaw {

namespace {

double standard_bump(double s) {
  const double q = 1.0 - s * s;
  if (q <= 1e-12) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

double bump_mass() {
  // int_{-1}^{1} exp(1 - 1/(1-s^2)) ds, computed once.
  static const double m = adaptive_integrate(standard_bump, -1.0, 1.0, 1e-14,
                                             1 << 12);
  return m;
}

}  // namespace

MollifierSpec::MollifierSpec(double r) : radius(r) {
  if (!(r > 0.0)) throw InvalidInput("MollifierSpec: radius must be positive");
  normalization = 1.0 / (radius * bump_mass());
}

double MollifierSpec::eta(double s) const {
  return normalization * standard_bump(s / radius);
}

double MollifierSpec::mass(const QuadratureSpec& quad) const {
  return adaptive_integrate([this](double s) { return eta(s); }, -radius,
                            radius, quad.rel_tol, quad.max_panels);
}

ComponentData mollify(const ComponentData& data, const MollifierSpec& spec) {
  data.validate();
  const double r = spec.radius;
  const ComponentData src = data;  // value copy shared by the closure
  auto smoothed = [src, spec, r](double x) {
    // Convolution over [-r, r]; panels split where x - s crosses a data
    // breakpoint so every panel integrand is smooth.
    std::vector<double> splits;
    for (double bp : src.breakpoints) {
      const double s = x - bp;
      if (s > -r && s < r) splits.push_back(s);
    }
    for (int j = 1; j < 8; ++j) splits.push_back(-r + 2.0 * r * j / 8.0);
    std::sort(splits.begin(), splits.end());
    splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
    auto f = [&](double s) { return spec.eta(s) * src(x - s); };
    return adaptive_integrate(f, -r, r, 1e-12, 1 << 12,
                              1e-15 * (src.sup_norm + 1.0), splits);
  };
  ComponentData out = ComponentData::smooth(std::move(smoothed), data.sup_norm);
  return out;
}

PiecewiseInitialData mollify(const PiecewiseInitialData& data,
                             const MollifierSpec& spec) {
  return {mollify(data.u, spec), mollify(data.v, spec), mollify(data.w, spec),
          mollify(data.z, spec)};
}

}  // namespace quadlaw
