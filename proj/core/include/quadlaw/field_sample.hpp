#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace quadlaw {

// State of the four-component system at one space-time point.
struct FieldSample {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double z = 0.0;

  double operator[](int k) const {
    switch (k) {
      case 0: return u;
      case 1: return v;
      case 2: return w;
      default: return z;
    }
  }

  bool finite() const {
    return std::isfinite(u) && std::isfinite(v) && std::isfinite(w) &&
           std::isfinite(z);
  }
};

inline constexpr std::array<const char*, 4> kComponentNames = {"u", "v", "w",
                                                               "z"};

// Fluxes of the inviscid system: (u^2/2, uv, v^2/2 + uw, vw + uz).
inline std::array<double, 4> inviscid_flux(const FieldSample& s) {
  return {0.5 * s.u * s.u, s.u * s.v, 0.5 * s.v * s.v + s.u * s.w,
          s.v * s.w + s.u * s.z};
}

inline int component_index(char name) {
  switch (name) {
    case 'u': return 0;
    case 'v': return 1;
    case 'w': return 2;
    case 'z': return 3;
    default: return -1;
  }
}

}  // namespace quadlaw
