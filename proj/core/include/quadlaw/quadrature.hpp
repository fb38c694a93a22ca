#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "quadlaw/errors.hpp"

namespace quadlaw {

// Tolerances and budgets shared by all quadratures in the project.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  int max_panels = 4096;
  double window_safety = 1.25;

  void validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
      throw InvalidInput("QuadratureSpec: rel_tol must lie in (0,1)");
    if (max_panels < 4)
      throw InvalidInput("QuadratureSpec: max_panels must be >= 4");
    if (!(window_safety >= 1.0))
      throw InvalidInput("QuadratureSpec: window_safety must be >= 1");
  }
};

// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
};

const GaussLegendre16& gl16();

// Single GL16 panel over [a, b].
template <class F>
double gl16_panel(F&& f, double a, double b) {
  const GaussLegendre16& r = gl16();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
  return s * half;
}

namespace detail {

template <std::size_t N>
struct Panel {
  double a, b;
  std::array<double, N> value;  // two-half GL16 estimate
  std::array<double, N> err;    // |two-half - single| per component
  double badness;               // refinement priority
};

template <std::size_t N, class F>
Panel<N> make_panel(F&& f, double a, double b) {
  Panel<N> p{a, b, {}, {}, 0.0};
  const GaussLegendre16& r = gl16();
  std::array<double, N> coarse{};
  std::array<double, N> fine{};
  {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 16; ++i) {
      auto fv = f(mid + half * r.nodes[i]);
      for (std::size_t k = 0; k < N; ++k) coarse[k] += r.weights[i] * fv[k];
    }
    for (std::size_t k = 0; k < N; ++k) coarse[k] *= half;
  }
  const double m = 0.5 * (a + b);
  for (const auto& [lo, hi] : {std::pair{a, m}, std::pair{m, b}}) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < 16; ++i) {
      auto fv = f(mid + half * r.nodes[i]);
      for (std::size_t k = 0; k < N; ++k)
        fine[k] += half * r.weights[i] * fv[k];
    }
  }
  p.value = fine;
  for (std::size_t k = 0; k < N; ++k) p.err[k] = std::abs(fine[k] - coarse[k]);
  return p;
}

}  // namespace detail

template <std::size_t N>
struct AdaptResult {
  std::array<double, N> value{};
  std::array<double, N> err{};
  int panels = 0;
};

// Globally adaptive composite GL16 for an array-valued integrand.
// Panels are bisected, worst first, until for every component k
//   sum of panel errors <= max(rel_tol * |I_k|, rel_tol/100 * L1_k, floor_k),
// where L1_k sums |panel value|; the L1 term bounds the effort spent on
// integrals that nearly cancel. `split_at` seeds panel boundaries (kinks,
// layer edges); points outside (a, b) are ignored. Throws AccuracyError
// when the budget runs out.
template <std::size_t N, class F>
AdaptResult<N> adaptive_gl16(F&& f, double a, double b, double rel_tol,
                             int max_panels,
                             std::array<double, N> floors = {},
                             std::span<const double> split_at = {}) {
  if (!(b > a)) {
    AdaptResult<N> r;
    return r;
  }
  std::vector<double> edges;
  edges.push_back(a);
  for (double s : split_at)
    if (s > a && s < b) edges.push_back(s);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (static_cast<int>(edges.size()) - 1 > max_panels)
    throw AccuracyError("adaptive_gl16: seed partition exceeds panel budget");

  auto cmp = [](const detail::Panel<N>& x, const detail::Panel<N>& y) {
    if (x.badness != y.badness) return x.badness < y.badness;
    return x.a > y.a;  // deterministic tie-break
  };
  std::vector<detail::Panel<N>> heap;
  std::array<double, N> total{};
  std::array<double, N> toterr{};
  std::array<double, N> l1{};

  auto push = [&](detail::Panel<N> p) {
    p.badness = 0.0;
    for (std::size_t k = 0; k < N; ++k) p.badness = std::max(p.badness, p.err[k]);
    for (std::size_t k = 0; k < N; ++k) {
      total[k] += p.value[k];
      toterr[k] += p.err[k];
      l1[k] += std::abs(p.value[k]);
    }
    heap.push_back(p);
    std::push_heap(heap.begin(), heap.end(), cmp);
  };

  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    push(detail::make_panel<N>(f, edges[i], edges[i + 1]));

  auto converged = [&]() {
    for (std::size_t k = 0; k < N; ++k) {
      const double tol = std::max(
          {rel_tol * std::abs(total[k]), 0.01 * rel_tol * l1[k], floors[k]});
      if (toterr[k] > tol && toterr[k] > 1e-300) return false;
    }
    return true;
  };

  while (!converged()) {
    if (static_cast<int>(heap.size()) + 1 > max_panels)
      throw AccuracyError("adaptive_gl16: panel budget exhausted before tolerance");
    std::pop_heap(heap.begin(), heap.end(), cmp);
    detail::Panel<N> worst = heap.back();
    heap.pop_back();
    for (std::size_t k = 0; k < N; ++k) {
      total[k] -= worst.value[k];
      toterr[k] -= worst.err[k];
      l1[k] -= std::abs(worst.value[k]);
    }
    const double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) {  // width at rounding floor
      push(worst);
      break;
    }
    push(detail::make_panel<N>(f, worst.a, m));
    push(detail::make_panel<N>(f, m, worst.b));
  }

  AdaptResult<N> r;
  r.value = total;
  r.err = toterr;
  r.panels = static_cast<int>(heap.size());
  return r;
}

// Scalar convenience wrapper.
template <class F>
double adaptive_integrate(F&& f, double a, double b, double rel_tol,
                          int max_panels, double floor = 0.0,
                          std::span<const double> split_at = {}) {
  auto wrap = [&f](double x) { return std::array<double, 1>{f(x)}; };
  return adaptive_gl16<1>(wrap, a, b, rel_tol, max_panels, {floor}, split_at)
      .value[0];
}

// Least-squares line y = intercept + slope * x.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual = 0.0;  // rms of fit residuals
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Two-point Richardson extrapolation assuming error ~ C * h^order.
double richardson2(double f_coarse, double f_fine, double h_coarse,
                   double h_fine, double order);

}  // namespace quadlaw
