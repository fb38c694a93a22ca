#pragma once

#include <vector>

#include "quadlaw/field_sample.hpp"
#include "quadlaw/primitives.hpp"

namespace quadlaw {

struct ViscousParams {
  double gamma = 1.0;
  QuadratureSpec quad{};
  // Floor for the integral-formula path; queries at t = 0 return the data.
  // Practical gamma floor at double precision is about 1e-4; smaller values
  // work for mild data but lose digits to cancellation.
  double t_min = 1e-6;

  void validate() const {
    if (!(gamma > 0.0))
      throw InvalidInput("ViscousParams: gamma must be positive");
    if (!(t_min > 0.0))
      throw InvalidInput("ViscousParams: t_min must be positive");
    quad.validate();
  }
};

// The eight kernel integrals of the solution formula, all divided by one
// shared positive factor (exponent shift and Gaussian prefactor), so only
// ratios are meaningful. a is strictly positive.
struct KernelMoments {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  double a_x = 0.0, b_x = 0.0, c_x = 0.0, d_x = 0.0;
};

KernelMoments eval_kernel_moments(const Primitives& prims,
                                  const ViscousParams& params, double x,
                                  double t);

// Combine moments into (u, v, w, z); invariant under scaling all eight
// moments by one positive factor.
FieldSample fields_from_moments(const KernelMoments& m, double gamma);

FieldSample eval_fields(const Primitives& prims, const ViscousParams& params,
                        double x, double t);

struct GridSpec {
  double x_min, x_max;
  int nx;
  double t_min, t_max;
  int nt;

  void validate() const;
  double x(int j) const;
  double t(int i) const;
};

// Row-major table, t outer and x inner. Each point is independent; rows are
// evaluated concurrently when parallel is set.
std::vector<FieldSample> sample_grid(const Primitives& prims,
                                     const ViscousParams& params,
                                     const GridSpec& grid,
                                     bool parallel = true);

}  // namespace quadlaw
