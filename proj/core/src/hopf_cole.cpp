#include "quadlaw/hopf_cole.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

namespace quadlaw {

namespace {

// Exponent of the kernel: E(y) = -(U0(y) + (x-y)^2 / (2t)) / gamma.
struct KernelCtx {
  const Primitives& prims;
  double gamma;
  double x, t;
  long double shift;  // shared exponent shift m

  double exponent(double y) const {
    const long double d =
        prims.U0_ext(y) +
        static_cast<long double>(x - y) * (x - y) / (2.0L * t);
    return static_cast<double>(-d / gamma);
  }

  // All eight integrands at one node, weight e^{E - m} included. Extended
  // precision in the exponent cancellation and the prefactors: the
  // d-prefactor reaches V0^3/gamma^3 and its roundoff otherwise dominates
  // the z component at small gamma. The exp itself only needs double.
  std::array<long double, 8> integrands(double y) const {
    const long double g = gamma;
    const long double E =
        -(prims.U0_ext(y) +
          static_cast<long double>(x - y) * (x - y) / (2.0L * t)) /
        g;
    const long double e = std::exp(static_cast<double>(E - shift));
    const long double V = prims.V0_ext(y);
    const long double W = prims.W0_ext(y);
    const long double Z = prims.Z0_ext(y);
    const long double pb = -V / g;
    const long double pc = V * V / (2.0L * g * g) - W / g;
    const long double pd =
        -Z / g - V * V * V / (6.0L * g * g * g) + V * W / (g * g);
    const long double dfac = (y - x) / (g * t);  // d/dx of the exponent
    return {e,        pb * e,        pc * e,        pd * e,
            e * dfac, pb * e * dfac, pc * e * dfac, pd * e * dfac};
  }
};

struct Panel8 {
  double a, b;
  std::array<long double, 8> value;
  std::array<double, 8> err;
  double badness;
};

Panel8 make_panel8(const KernelCtx& ctx, double a, double b) {
  const GaussLegendre16& r = gl16();
  Panel8 p{a, b, {}, {}, 0.0};
  std::array<long double, 8> coarse{};
  std::array<long double, 8> fine{};
  {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 16; ++i) {
      const auto f = ctx.integrands(mid + half * r.nodes[i]);
      for (int k = 0; k < 8; ++k) coarse[k] += r.weights[i] * f[k];
    }
    for (int k = 0; k < 8; ++k) coarse[k] *= half;
  }
  const double m = 0.5 * (a + b);
  for (const auto& [lo, hi] : {std::pair{a, m}, std::pair{m, b}}) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < 16; ++i) {
      const auto f = ctx.integrands(mid + half * r.nodes[i]);
      for (int k = 0; k < 8; ++k) fine[k] += half * r.weights[i] * f[k];
    }
  }
  p.badness = 0.0;
  for (int k = 0; k < 8; ++k) {
    p.value[k] = fine[k];
    p.err[k] = static_cast<double>(std::abs(fine[k] - coarse[k]));
    p.badness = std::max(p.badness, p.err[k]);
  }
  return p;
}

struct WindowResult {
  std::array<long double, 8> moments;  // a, b, c, d, a_x, b_x, c_x, d_x
  bool boundary_ok;
};

// Long-double combination; the z formula cancels terms that grow like
// (V0^3 / gamma^3) * Gaussian moments, so the extra mantissa matters for
// small gamma.
FieldSample combine_moments(const std::array<long double, 8>& m,
                            double gamma) {
  const long double g = gamma;
  const long double A = m[0];
  const long double B = m[1] / A, C = m[2] / A, D = m[3] / A;
  const long double logax = m[4] / A;
  const long double Bp = (m[5] - B * m[4]) / A;
  const long double Cp = (m[6] - C * m[4]) / A;
  const long double Dp = (m[7] - D * m[4]) / A;
  FieldSample s;
  s.u = static_cast<double>(-g * logax);
  s.v = static_cast<double>(-g * Bp);
  s.w = static_cast<double>(-g * (Cp - B * Bp));
  s.z = static_cast<double>(-g * (B * B * Bp - Bp * C - B * Cp + Dp));
  return s;
}

// Integrate the eight kernel moments over [lo, hi]. The exponent shift is
// the max of E over an initial scan; panels whose scanned peak sits far
// below the shift are skipped except at the window edges, which feed the
// tail-negligibility check.
WindowResult integrate_window(const Primitives& prims, double gamma, double x,
                              double t, double lo, double hi,
                              const QuadratureSpec& quad) {
  const double width = hi - lo;
  // Panels of width sqrt(gamma t); the accumulated two-half estimates put
  // the effective grid at sqrt(gamma t)/2, the kernel's length scale.
  const double panel_w = std::min(std::sqrt(gamma * t), width / 4.0);
  const int n0 = static_cast<int>(std::ceil(width / panel_w));
  if (n0 > quad.max_panels)
    throw AccuracyError(
        "eval_kernel_moments: window needs more panels than max_panels");

  std::vector<double> edges(n0 + 1);
  for (int i = 0; i <= n0; ++i) edges[i] = lo + width * i / n0;
  // Panels must not straddle data kinks.
  if (prims.has_breakpoints()) {
    const auto span = prims.breakpoint_span();
    for (int k = 0; k < 4; ++k)
      for (double bp : prims.data().component(k).breakpoints)
        if (bp > lo && bp < hi) edges.push_back(bp);
    (void)span;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  const int npan = static_cast<int>(edges.size()) - 1;

  KernelCtx ctx{prims, gamma, x, t, 0.0};

  // Scan for the shared shift and per-panel exponent peaks: edges plus
  // three interior samples. The slope bound of E covers what the coarse
  // scan can miss.
  std::vector<double> edge_exp(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    edge_exp[i] = ctx.exponent(edges[i]);
  std::vector<double> peak(npan);
  double m = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < npan; ++i) {
    const double a = edges[i], b = edges[i + 1];
    double pk = std::max(edge_exp[i], edge_exp[i + 1]);
    for (double s : {0.25, 0.5, 0.75})
      pk = std::max(pk, ctx.exponent(a + s * (b - a)));
    peak[i] = pk;
    m = std::max(m, pk);
  }
  ctx.shift = m;

  const double max_dist = std::max(std::abs(lo - x), std::abs(hi - x));
  const double slope_bound = (prims.sup_u() + max_dist / t) / gamma;
  const double scan_gap = slope_bound * panel_w / 8.0;

  // Contributions below rel_tol * e^-20 of the peak cannot matter; the
  // scan-gap margin covers peaks between scan samples.
  const double cutoff = m + std::log(quad.rel_tol) - 20.0 - scan_gap;

  std::vector<Panel8> heap;
  std::array<double, 8> total{};
  std::array<double, 8> toterr{};
  std::array<double, 8> l1{};
  auto cmp = [](const Panel8& a, const Panel8& b) {
    if (a.badness != b.badness) return a.badness < b.badness;
    return a.a > b.a;
  };
  auto push = [&](const Panel8& p) {
    for (int k = 0; k < 8; ++k) {
      total[k] += p.value[k];
      toterr[k] += p.err[k];
      l1[k] += std::abs(p.value[k]);
    }
    heap.push_back(p);
    std::push_heap(heap.begin(), heap.end(), cmp);
  };

  std::array<double, 8> edge_contrib{};
  for (int i = 0; i < npan; ++i) {
    const bool is_edge = (i == 0 || i == npan - 1);
    if (!is_edge && peak[i] < cutoff) continue;
    const Panel8 p = make_panel8(ctx, edges[i], edges[i + 1]);
    if (is_edge)
      for (int k = 0; k < 8; ++k)
        edge_contrib[k] += std::abs(p.value[k]);
    push(p);
  }
  if (heap.empty())
    throw AccuracyError("eval_kernel_moments: empty integration window");

  // Components that cancel by symmetry (odd prefactors) have |total| far
  // below their L1 mass; the attainable accuracy is then relative to L1.
  auto tol_for = [&](int k) {
    return std::max({quad.rel_tol * std::abs(total[k]),
                     0.01 * quad.rel_tol * l1[k], 4e-15 * l1[k], 1e-300});
  };
  auto converged = [&]() {
    for (int k = 0; k < 8; ++k)
      if (toterr[k] > tol_for(k)) return false;
    return true;
  };
  while (!converged()) {
    if (static_cast<int>(heap.size()) + 1 > quad.max_panels)
      throw AccuracyError(
          "eval_kernel_moments: quadrature not converged within max_panels");
    std::pop_heap(heap.begin(), heap.end(), cmp);
    Panel8 worst = heap.back();
    heap.pop_back();
    for (int k = 0; k < 8; ++k) {
      total[k] -= worst.value[k];
      toterr[k] -= worst.err[k];
      l1[k] -= std::abs(worst.value[k]);
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      push(worst);
      break;
    }
    push(make_panel8(ctx, worst.a, mid));
    push(make_panel8(ctx, mid, worst.b));
  }

  // Deterministic long-double re-sum of the surviving panels; the running
  // totals above only steer refinement.
  std::sort(heap.begin(), heap.end(),
            [](const Panel8& x, const Panel8& y) { return x.a < y.a; });
  std::array<long double, 8> exact{};
  for (const Panel8& p : heap)
    for (int k = 0; k < 8; ++k) exact[k] += p.value[k];

  WindowResult res;
  res.moments = exact;
  res.boundary_ok = true;
  for (int k = 0; k < 8; ++k) {
    const double scale =
        std::max(static_cast<double>(std::abs(exact[k])), 0.01 * l1[k] + 1e-300);
    if (edge_contrib[k] > quad.rel_tol * scale) res.boundary_ok = false;
  }
  return res;
}

// Window sizing plus the tail-negligibility doubling loop.
WindowResult windowed_moments(const Primitives& prims,
                              const ViscousParams& params, double x,
                              double t) {
  params.validate();
  if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(x))
    throw InvalidInput("eval_kernel_moments: need finite x and t > 0");

  const double gamma = params.gamma;
  const QuadratureSpec& quad = params.quad;
  // The exponent maximizer lies within sup|u0| * t of x (U0 is Lipschitz);
  // the sqrt term covers the Gaussian tail down to rel_tol.
  double R = prims.sup_u() * t +
             quad.window_safety *
                 std::sqrt(2.0 * gamma * t * std::log(1.0 / quad.rel_tol));
  R = std::max(R, 4.0 * std::sqrt(gamma * t));
  double lo = x - R, hi = x + R;
  if (prims.has_breakpoints()) {
    const auto [blo, bhi] = prims.breakpoint_span();
    const double margin = std::sqrt(gamma * t);
    const double cap = 2.0 * R + 8.0;  // clamp on the breakpoint extension
    lo -= std::clamp(lo - (blo - margin), 0.0, cap);
    hi += std::clamp((bhi + margin) - hi, 0.0, cap);
  }

  for (int attempt = 0; attempt < 8; ++attempt) {
    const WindowResult res = integrate_window(prims, gamma, x, t, lo, hi, quad);
    if (res.boundary_ok) {
      if (!(res.moments[0] > 0.0L) || !std::isfinite(res.moments[0]))
        throw AccuracyError("eval_kernel_moments: degenerate weight integral");
      return res;
    }
    lo = x - 2.0 * (x - lo);
    hi = x + 2.0 * (hi - x);
  }
  throw AccuracyError(
      "eval_kernel_moments: window doubling never made the boundary "
      "contribution negligible");
}

}  // namespace

KernelMoments eval_kernel_moments(const Primitives& prims,
                                  const ViscousParams& params, double x,
                                  double t) {
  const auto m = windowed_moments(prims, params, x, t).moments;
  return {static_cast<double>(m[0]), static_cast<double>(m[1]),
          static_cast<double>(m[2]), static_cast<double>(m[3]),
          static_cast<double>(m[4]), static_cast<double>(m[5]),
          static_cast<double>(m[6]), static_cast<double>(m[7])};
}

FieldSample fields_from_moments(const KernelMoments& m, double gamma) {
  return combine_moments({m.a, m.b, m.c, m.d, m.a_x, m.b_x, m.c_x, m.d_x},
                         gamma);
}

FieldSample eval_fields(const Primitives& prims, const ViscousParams& params,
                        double x, double t) {
  params.validate();
  if (t == 0.0) return prims.data_at(x);
  if (!(t > 0.0))
    throw InvalidInput("eval_fields: t must be >= 0");
  if (t < params.t_min)
    throw InvalidInput("eval_fields: t below t_min floor");
  const FieldSample s =
      combine_moments(windowed_moments(prims, params, x, t).moments,
                      params.gamma);
  if (!s.finite())
    throw AccuracyError("eval_fields: non-finite sample from moments");
  return s;
}

void GridSpec::validate() const {
  if (nx < 1 || nt < 1) throw InvalidInput("GridSpec: bad counts");
  if (!(x_max >= x_min) || (nx > 1 && !(x_max > x_min)))
    throw InvalidInput("GridSpec: bad x extent");
  if (!(t_min > 0.0) || !(t_max >= t_min) || (nt > 1 && !(t_max > t_min)))
    throw InvalidInput("GridSpec: need 0 < t_min <= t_max");
}

double GridSpec::x(int j) const {
  return (nx == 1) ? x_min : x_min + (x_max - x_min) * j / (nx - 1);
}

double GridSpec::t(int i) const {
  return (nt == 1) ? t_min : t_min + (t_max - t_min) * i / (nt - 1);
}

std::vector<FieldSample> sample_grid(const Primitives& prims,
                                     const ViscousParams& params,
                                     const GridSpec& grid, bool parallel) {
  grid.validate();
  params.validate();
  std::vector<FieldSample> out(static_cast<std::size_t>(grid.nx) * grid.nt);
  auto run_rows = [&](int row_begin, int row_end) {
    for (int i = row_begin; i < row_end; ++i)
      for (int j = 0; j < grid.nx; ++j)
        out[static_cast<std::size_t>(i) * grid.nx + j] =
            eval_fields(prims, params, grid.x(j), grid.t(i));
  };
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers =
      parallel ? std::max(1, std::min<int>(grid.nt, hw ? hw : 1)) : 1;
  if (workers == 1) {
    run_rows(0, grid.nt);
    return out;
  }
  std::vector<std::future<void>> futs;
  const int chunk = (grid.nt + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int b = w * chunk, e = std::min(grid.nt, b + chunk);
    if (b >= e) break;
    futs.push_back(std::async(std::launch::async, run_rows, b, e));
  }
  for (auto& f : futs) f.get();
  return out;
}

}  // namespace quadlaw
