#include "quadlaw/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace quadlaw {

namespace {

// Nodes by Newton iteration on the Legendre recurrence.
GaussLegendre16 compute_gl16() {
  GaussLegendre16 r{};
  constexpr int n = 16;
  constexpr double tol = 1e-15;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    int polish = 2;  // extra steps after convergence pin the last digits
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1) * x * p2 - j * p3) / (j + 1);
      }
      pp = n * (x * p1 - p2) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < tol && polish-- <= 0) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

}  // namespace

const GaussLegendre16& gl16() {
  static const GaussLegendre16 rule = compute_gl16();
  return rule;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InvalidInput("fit_line: need at least two matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw InvalidInput("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

double richardson2(double f_coarse, double f_fine, double h_coarse,
                   double h_fine, double order) {
  if (!(h_coarse > h_fine && h_fine > 0))
    throw InvalidInput("richardson2: need h_coarse > h_fine > 0");
  const double rc = std::pow(h_coarse, order);
  const double rf = std::pow(h_fine, order);
  return f_fine + (f_fine - f_coarse) * rf / (rc - rf);
}

}  // namespace quadlaw
