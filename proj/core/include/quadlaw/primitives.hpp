#pragma once

#include <array>
#include <memory>
#include <vector>

#include "quadlaw/initial_data.hpp"
#include "quadlaw/quadrature.hpp"

namespace quadlaw {

// Cumulative integral F(x) = int_0^x f(y) dy with per-panel Chebyshev
// antiderivatives cached over a working range. A lookup inside the range
// costs one binary search plus one Clenshaw evaluation; outside, the tail
// is integrated on the fly.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(ComponentData f, double lo, double hi, double tol);

  double operator()(double x) const { return static_cast<double>(ext(x)); }
  long double ext(double x) const;  // full cache precision
  const ComponentData& integrand() const { return f_; }
  std::size_t panel_count() const { return panels_.size(); }

 private:
  // Extended-precision panel: U0 feeds exp(-U0/gamma), so absolute error
  // here is amplified by 1/gamma downstream. degree trims trailing zero
  // coefficients (piecewise-linear primitives evaluate in two terms).
  struct ChebPanel {
    double a, b;
    std::array<long double, 17> acoef;  // antiderivative coeffs, F(a) = 0
    int degree = 16;
    long double integral_to(double x) const;
  };

  static ChebPanel fit_panel(const std::function<double(double)>& f, double a,
                             double b);
  void build_segment(const std::function<double(double)>& piece, double a,
                     double b, int depth);
  double tail(double from, double to) const;

  ComponentData f_;
  std::vector<ChebPanel> panels_;  // contiguous, ascending
  std::vector<double> starts_;     // panel left edges, the search keys
  std::vector<long double> cum_;   // F at panel left edges, F(0) = 0
  long double total_right_ = 0.0;  // F at the right edge of the cache
  double tol_ = 1e-13;
  bool is_zero_ = false;           // identically-zero integrand
};

// Antiderivatives (U0, V0, W0, Z0) of the four data components plus the
// metadata the kernel quadrature needs.
class Primitives {
 public:
  static Primitives build(const PiecewiseInitialData& data,
                          const QuadratureSpec& quad);

  double U0(double x) const { return F_[0](x) + u0_offset_; }
  double V0(double x) const { return F_[1](x); }
  double W0(double x) const { return F_[2](x); }
  double Z0(double x) const { return F_[3](x); }

  // Extended-precision reads for the kernel quadrature.
  long double U0_ext(double x) const { return F_[0].ext(x) + u0_offset_; }
  long double V0_ext(double x) const { return F_[1].ext(x); }
  long double W0_ext(double x) const { return F_[2].ext(x); }
  long double Z0_ext(double x) const { return F_[3].ext(x); }

  FieldSample data_at(double x) const { return data_.at(x); }
  const PiecewiseInitialData& data() const { return data_; }
  double sup_u() const { return data_.u.sup_norm; }
  std::pair<double, double> breakpoint_span() const { return span_; }
  bool has_breakpoints() const { return has_breakpoints_; }

  // Diagnostic hook: U0 shifted by a constant. The solution formulas are
  // invariant under this shift; tests exercise that directly.
  Primitives with_u0_offset(double k0) const;

 private:
  std::array<CumulativeIntegral, 4> F_;
  PiecewiseInitialData data_;
  std::pair<double, double> span_{0.0, 0.0};
  bool has_breakpoints_ = false;
  double u0_offset_ = 0.0;
};

Primitives build_primitives(const PiecewiseInitialData& data,
                            const QuadratureSpec& quad);

}  // namespace quadlaw
