#include "quadlaw/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace quadlaw {

namespace {

constexpr int kChebN = 15;  // degree; 16 Lobatto samples per panel

// Chebyshev coefficients of the degree-15 interpolant through the Lobatto
// samples f_k = f(cos(k pi / 15)).
std::array<long double, 16> cheb_coeffs(const std::array<long double, 16>& fk) {
  std::array<long double, 16> c{};
  for (int j = 0; j <= kChebN; ++j) {
    long double s = 0.5L * (fk[0] + (j % 2 ? -1.0L : 1.0L) * fk[kChebN]);
    for (int k = 1; k < kChebN; ++k)
      s += fk[k] * std::cos(static_cast<long double>(j) * k * M_PI / kChebN);
    c[j] = 2.0L * s / kChebN;
  }
  c[0] *= 0.5L;
  c[kChebN] *= 0.5L;
  return c;
}

long double clenshaw(const std::array<long double, 17>& a, int degree,
                     long double xi) {
  long double b1 = 0.0L, b2 = 0.0L;
  for (int j = degree; j >= 1; --j) {
    const long double b0 = a[j] + 2.0L * xi * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return a[0] + xi * b1 - b2;
}

}  // namespace

long double CumulativeIntegral::ChebPanel::integral_to(double x) const {
  const long double xi =
      (2.0L * x - (static_cast<long double>(a) + b)) / (static_cast<long double>(b) - a);
  return clenshaw(acoef, degree, xi);
}

CumulativeIntegral::ChebPanel CumulativeIntegral::fit_panel(
    const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::array<long double, 16> fk{};
  for (int k = 0; k <= kChebN; ++k)
    fk[k] = f(mid + half * std::cos(k * M_PI / kChebN));
  const auto c = cheb_coeffs(fk);

  // Antiderivative series, then shift so the value at the left edge is 0.
  std::array<long double, 17> A{};
  A[1] = c[0] - 0.5L * c[2];
  for (int j = 2; j <= 16; ++j) {
    const long double cm = c[j - 1];
    const long double cp = (j + 1 <= kChebN) ? c[j + 1] : 0.0L;
    A[j] = (cm - cp) / (2.0L * j);
  }
  long double at_left = 0.0L;
  for (int j = 1; j <= 16; ++j) at_left += (j % 2 ? -A[j] : A[j]);
  A[0] = -at_left;
  for (long double& v : A) v *= half;

  long double amax = 0.0L;
  for (const long double& v : A) amax = std::max(amax, std::abs(v));
  int degree = 16;
  while (degree > 1 && std::abs(A[degree]) <= 1e-19L * amax) --degree;
  return ChebPanel{a, b, A, degree};
}

void CumulativeIntegral::build_segment(
    const std::function<double(double)>& piece, double a, double b,
    int depth) {
  ChebPanel p = fit_panel(piece, a, b);
  const double m = 0.5 * (a + b);
  const double ref_lo = gl16_panel(piece, a, m);
  const double ref_hi = gl16_panel(piece, m, b);
  const double err =
      std::abs(static_cast<double>(p.integral_to(b)) - (ref_lo + ref_hi)) +
      std::abs(static_cast<double>(p.integral_to(m)) - ref_lo);
  const bool small_enough =
      err <= tol_ * (1.0 + std::abs(ref_lo + ref_hi));
  const bool at_floor =
      depth > 42 || (b - a) < 1e-9 * (1.0 + std::abs(a) + std::abs(b));
  if ((depth >= 1 && small_enough) || at_floor) {
    panels_.push_back(p);
    return;
  }
  build_segment(piece, a, m, depth + 1);
  build_segment(piece, m, b, depth + 1);
}

CumulativeIntegral::CumulativeIntegral(ComponentData f, double lo, double hi,
                                       double tol)
    : f_(std::move(f)), tol_(tol) {
  std::vector<double> edges{lo, hi};
  if (lo < 0.0 && 0.0 < hi) edges.push_back(0.0);
  for (double b : f_.breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const double cap = 0.25;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / cap)));
    // Segments never straddle breakpoints; sample the covering piece
    // directly so edge nodes on a breakpoint see the right one-sided value.
    const auto bp = f_.breakpoints;
    const auto it =
        std::upper_bound(bp.begin(), bp.end(), 0.5 * (a + b));
    const std::function<double(double)> piece =
        f_.pieces[static_cast<std::size_t>(it - bp.begin())];
    for (int j = 0; j < parts; ++j) {
      const double sa = a + (b - a) * j / parts;
      const double sb = (j + 1 == parts) ? b : a + (b - a) * (j + 1) / parts;
      build_segment(piece, sa, sb, 0);
    }
  }

  cum_.resize(panels_.size());
  starts_.resize(panels_.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < panels_.size(); ++i) {
    starts_[i] = panels_[i].a;
    cum_[i] = acc;
    acc += panels_[i].integral_to(panels_[i].b);
  }
  // Identically-zero data short-circuits lookups entirely.
  is_zero_ = (f_.sup_norm == 0.0);
  if (is_zero_) {
    long double mx = 0.0L;
    for (const long double& c : cum_) mx = std::max(mx, std::abs(c));
    if (mx > 1e-13) is_zero_ = false;
  }
  // Normalize so F(0) = 0 (0 is always a panel edge when in range).
  long double shift = 0.0L;
  if (lo < 0.0 && 0.0 < hi) {
    auto it = std::lower_bound(
        panels_.begin(), panels_.end(), 0.0,
        [](const ChebPanel& p, double x) { return p.a < x; });
    shift = cum_[static_cast<std::size_t>(it - panels_.begin())];
  } else {
    shift = (hi <= 0.0) ? acc : 0.0L;  // F at the edge nearest to 0
  }
  for (long double& c : cum_) c -= shift;
  total_right_ = acc - shift;
}

double CumulativeIntegral::tail(double from, double to) const {
  if (from == to) return 0.0;
  const double a = std::min(from, to), b = std::max(from, to);
  const double floor = 1e-15 * f_.sup_norm * (b - a);
  const double val =
      adaptive_integrate([this](double x) { return f_(x); }, a, b, 1e-12,
                         1 << 14, floor);
  return (to > from) ? val : -val;
}

long double CumulativeIntegral::ext(double x) const {
  if (panels_.empty()) throw InvalidInput("CumulativeIntegral: empty cache");
  if (is_zero_) return 0.0L;
  const double lo = starts_.front(), hi = panels_.back().b;
  if (x < lo) return cum_.front() + tail(lo, x);
  if (x > hi) return total_right_ + tail(hi, x);
  auto it = std::upper_bound(starts_.begin(), starts_.end(), x);
  const std::size_t idx =
      (it == starts_.begin()) ? 0
                              : static_cast<std::size_t>(it - starts_.begin()) - 1;
  return cum_[idx] + panels_[idx].integral_to(x);
}

Primitives Primitives::build(const PiecewiseInitialData& data,
                             const QuadratureSpec& quad) {
  data.validate();
  quad.validate();
  Primitives p;
  p.data_ = data;
  p.span_ = data.breakpoint_span();
  p.has_breakpoints_ = false;
  for (int k = 0; k < 4; ++k)
    if (!data.component(k).breakpoints.empty()) p.has_breakpoints_ = true;

  const double pad = 64.0;
  const double lo = std::min(0.0, p.span_.first) - pad;
  const double hi = std::max(0.0, p.span_.second) + pad;
  const double tol = 1e-13;
  for (int k = 0; k < 4; ++k)
    p.F_[k] = CumulativeIntegral(data.component(k), lo, hi, tol);
  return p;
}

Primitives Primitives::with_u0_offset(double k0) const {
  Primitives p = *this;
  p.u0_offset_ += k0;
  return p;
}

Primitives build_primitives(const PiecewiseInitialData& data,
                            const QuadratureSpec& quad) {
  return Primitives::build(data, quad);
}

}  // namespace quadlaw
