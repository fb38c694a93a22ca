#include "quadlaw/distributions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

namespace quadlaw {

namespace {

// Evaluate f over points concurrently, order-preserving.
std::vector<std::vector<double>> map_points(
    const std::function<std::vector<double>(double)>& f,
    const std::vector<double>& pts, bool parallel) {
  std::vector<std::vector<double>> out(pts.size());
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers =
      parallel ? std::max(1u, std::min<unsigned>(hw ? hw : 1, pts.size())) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
    return out;
  }
  std::vector<std::future<void>> futs;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < workers; ++w)
    futs.push_back(std::async(std::launch::async, [&]() {
      for (std::size_t i = next.fetch_add(1); i < pts.size();
           i = next.fetch_add(1))
        out[i] = f(pts[i]);
    }));
  for (auto& fu : futs) fu.get();
  return out;
}

struct RowSegment {
  double a, b;
  std::vector<double> value;  // two-half estimate
  double err;                 // max-norm coarse/fine disagreement
};

RowSegment eval_segment(const std::function<std::vector<double>(double)>& row,
                        double a, double b, bool parallel) {
  const GaussLegendre16& r = gl16();
  std::vector<double> pts;
  pts.reserve(48);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < 16; ++i) pts.push_back(mid + half * r.nodes[i]);
  for (const auto& [lo, hi] : {std::pair{a, mid}, std::pair{mid, b}}) {
    const double m2 = 0.5 * (lo + hi), h2 = 0.5 * (hi - lo);
    for (int i = 0; i < 16; ++i) pts.push_back(m2 + h2 * r.nodes[i]);
  }
  const auto vals = map_points(row, pts, parallel);
  const std::size_t n = vals[0].size();
  std::vector<double> coarse(n, 0.0), fine(n, 0.0);
  for (int i = 0; i < 16; ++i)
    for (std::size_t k = 0; k < n; ++k)
      coarse[k] += half * r.weights[i] * vals[i][k];
  for (int part = 0; part < 2; ++part)
    for (int i = 0; i < 16; ++i)
      for (std::size_t k = 0; k < n; ++k)
        fine[k] += 0.5 * half * r.weights[i] * vals[16 + part * 16 + i][k];
  double err = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    err = std::max(err, std::abs(fine[k] - coarse[k]));
  return {a, b, std::move(fine), err};
}

}  // namespace

std::vector<double> integrate_rows(
    const std::function<std::vector<double>(double)>& row, double a, double b,
    std::span<const double> splits, double rel_tol, int max_depth,
    bool parallel) {
  if (!(b > a)) throw InvalidInput("integrate_rows: empty interval");
  std::vector<double> edges{a, b};
  for (double s : splits)
    if (s > a && s < b) edges.push_back(s);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<double> total;
  std::function<void(double, double, int)> visit = [&](double lo, double hi,
                                                       int depth) {
    const RowSegment seg = eval_segment(row, lo, hi, parallel);
    if (total.empty()) total.assign(seg.value.size(), 0.0);
    double scale = 0.0;
    for (double v : seg.value) scale = std::max(scale, std::abs(v));
    const bool ok = seg.err <= rel_tol * (scale + 1e-12) || depth >= max_depth;
    if (ok) {
      for (std::size_t k = 0; k < seg.value.size(); ++k)
        total[k] += seg.value[k];
      return;
    }
    const double mid = 0.5 * (lo + hi);
    visit(lo, mid, depth + 1);
    visit(mid, hi, depth + 1);
  };
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    visit(edges[i], edges[i + 1], 0);
  return total;
}

namespace {

// exp(1 - 1/(1 - s^2)) on (-1, 1), zero outside; peak value 1 at s = 0.
double bump1d(double s) {
  const double q = 1.0 - s * s;
  if (q <= 1e-12) return 0.0;
  return std::exp(1.0 - 1.0 / q);
}

double bump1d_deriv(double s) {
  const double q = 1.0 - s * s;
  if (q <= 1e-12) return 0.0;
  return bump1d(s) * (-2.0 * s / (q * q));
}

}  // namespace

double TestFunction::operator()(double x, double t) const {
  return bump1d((x - x0) / rx) * bump1d((t - t0) / rt);
}

double TestFunction::dx(double x, double t) const {
  return bump1d_deriv((x - x0) / rx) / rx * bump1d((t - t0) / rt);
}

double TestFunction::dt(double x, double t) const {
  return bump1d((x - x0) / rx) * bump1d_deriv((t - t0) / rt) / rt;
}

TestFunction bump(double x0, double t0, double rx, double rt) {
  if (!(rx > 0.0) || !(rt > 0.0))
    throw InvalidInput("bump: radii must be positive");
  return TestFunction{x0, t0, rx, rt};
}

FieldSample EpsilonFamily::operator()(double eps, double x, double t) const {
  if (!(eps >= eps_min && eps <= eps_max))
    throw InvalidInput("EpsilonFamily: eps outside declared range");
  return eval(eps, x, t);
}

EpsilonFamily as_epsilon_family(const ShadowWaveFamily& fam) {
  EpsilonFamily f;
  f.eval = [fam](double eps, double x, double t) {
    return fam.eval(eps, x, t);
  };
  f.eps_min = 1e-12;
  f.eps_max = 1.0;
  f.layer_scale = [](double eps, double t) { return eps * t; };
  f.x_kinks = [fam](double eps, double t) {
    const auto b = fam.breakpoints(eps, t);
    return std::vector<double>(b.begin(), b.end());
  };
  f.line_speeds = {fam.rd.u_l, fam.rd.u_r};
  return f;
}

EpsilonFamily viscous_family(std::shared_ptr<const Primitives> prims,
                             QuadratureSpec quad,
                             std::vector<double> line_speeds, double t_min) {
  if (!prims) throw InvalidInput("viscous_family: null primitives");
  EpsilonFamily f;
  f.eval = [prims, quad, t_min](double gamma, double x, double t) {
    const ViscousParams p{gamma, quad, t_min};
    return eval_fields(*prims, p, x, t);
  };
  f.eps_min = 1e-8;
  f.eps_max = 16.0;
  f.layer_scale = [t_min](double gamma, double t) {
    return std::sqrt(gamma * std::max(t, t_min));
  };
  f.x_kinks = [](double, double) { return std::vector<double>{}; };
  f.line_speeds = std::move(line_speeds);
  return f;
}

namespace {

void require_interior_support(const TestFunction& phi) {
  if (!(phi.t0 - phi.rt > 0.0))
    throw InvalidInput("test function support must lie in t > 0");
}

// Partition seeds for one x-row: family kinks plus a refined band around
// each line so smooth layers get >= 8 nodes across their width.
std::vector<double> row_splits(const EpsilonFamily& fam, double eps, double t,
                               double xa, double xb, int max_panels) {
  std::vector<double> s;
  const std::vector<double> kinks =
      fam.x_kinks ? fam.x_kinks(eps, t) : std::vector<double>{};
  for (double k : kinks) s.push_back(k);
  const double scale = fam.layer_scale ? fam.layer_scale(eps, t) : 0.0;
  if (scale > 0.0 && kinks.empty()) {
    for (double c : fam.line_speeds) {
      const double center = c * t;
      for (int j = -16; j <= 16; ++j) s.push_back(center + j * scale / 2.0);
    }
  }
  // Base seeds so phi itself is resolved.
  for (int j = 1; j < 8; ++j) s.push_back(xa + (xb - xa) * j / 8.0);
  std::erase_if(s, [&](double v) { return v <= xa || v >= xb; });
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (static_cast<int>(s.size()) + 1 > max_panels)
    throw AccuracyError(
        "weak residual: resolving the layer needs more panels than "
        "max_panels (under-resolved layer)");
  return s;
}

// Times where a structure line x = c t crosses the support edges; the
// outer integrand kinks there.
std::vector<double> time_splits(const std::vector<double>& speeds, double ta,
                                double tb, double xa, double xb) {
  std::vector<double> s;
  for (double c : speeds) {
    if (c == 0.0) continue;
    for (double edge : {xa, xb}) {
      const double tc = edge / c;
      if (tc > ta && tc < tb) s.push_back(tc);
    }
  }
  s.push_back(0.5 * (ta + tb));
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

}  // namespace

double pair_solution(const DistributionalSolution& sol,
                     const TestFunction& phi, int component,
                     const QuadratureSpec& quad) {
  quad.validate();
  require_interior_support(phi);
  if (component < 0 || component > 3)
    throw InvalidInput("pair_solution: component must be 0..3");

  const auto [xa, xb] = phi.x_support();
  const auto [ta, tb] = phi.t_support();

  // Background part.
  auto row = [&](double t) -> std::array<double, 1> {
    std::vector<double> splits;
    for (double c : sol.region_speeds) {
      const double p = c * t;
      if (p > xa && p < xb) splits.push_back(p);
    }
    for (int j = 1; j < 8; ++j) splits.push_back(xa + (xb - xa) * j / 8.0);
    std::sort(splits.begin(), splits.end());
    auto f = [&](double x) -> std::array<double, 1> {
      return {sol.background(x, t)[component] * phi(x, t)};
    };
    return {adaptive_gl16<1>(f, xa, xb, quad.rel_tol * 0.1, quad.max_panels,
                             {}, splits)
                .value[0]};
  };
  const auto tsplits = time_splits(sol.region_speeds, ta, tb, xa, xb);
  double total = adaptive_gl16<1>(row, ta, tb, quad.rel_tol, quad.max_panels,
                                  {}, tsplits)
                     .value[0];

  // Line parts.
  for (const SingularLine& line : sol.lines) {
    auto f = [&](double t) -> std::array<double, 1> {
      const double xl = line.speed * t;
      return {line.delta_amp[component](t) * phi(xl, t) -
              line.delta_prime_amp[component](t) * phi.dx(xl, t)};
    };
    total += adaptive_gl16<1>(f, ta, tb, quad.rel_tol, quad.max_panels)
                 .value[0];
  }
  return total;
}

std::array<double, 4> weak_residual_family(const EpsilonFamily& fam,
                                           const TestFunction& phi, double eps,
                                           const QuadratureSpec& quad) {
  quad.validate();
  require_interior_support(phi);
  if (!(eps >= fam.eps_min && eps <= fam.eps_max))
    throw InvalidInput("weak_residual_family: eps outside declared range");

  const auto [xa, xb] = phi.x_support();
  const auto [ta, tb] = phi.t_support();

  auto row = [&](double t) -> std::vector<double> {
    const auto splits = row_splits(fam, eps, t, xa, xb, quad.max_panels);
    auto f = [&](double x) -> std::array<double, 4> {
      const FieldSample s = fam.eval(eps, x, t);
      const auto flux = inviscid_flux(s);
      const double pt = phi.dt(x, t), px = phi.dx(x, t);
      return {-(s.u * pt + flux[0] * px), -(s.v * pt + flux[1] * px),
              -(s.w * pt + flux[2] * px), -(s.z * pt + flux[3] * px)};
    };
    const auto r = adaptive_gl16<4>(f, xa, xb, quad.rel_tol * 0.1,
                                    quad.max_panels, {}, splits);
    return {r.value[0], r.value[1], r.value[2], r.value[3]};
  };

  std::vector<double> speeds = fam.line_speeds;
  if (fam.x_kinks)  // kink positions at t = 1 are the kink speeds
    for (double s : fam.x_kinks(eps, 1.0)) speeds.push_back(s);
  const auto tsplits = time_splits(speeds, ta, tb, xa, xb);
  const auto total = integrate_rows(row, ta, tb, tsplits, quad.rel_tol);
  return {total[0], total[1], total[2], total[3]};
}

MomentReport measure_moments(const EpsilonFamily& fam,
                             const DistributionalSolution& ref, int component,
                             double line_speed, double t, double window,
                             double eps, const QuadratureSpec& quad) {
  quad.validate();
  if (!(t > 0.0) || !(window > 0.0))
    throw InvalidInput("measure_moments: need t > 0 and window > 0");
  if (component < 0 || component > 3)
    throw InvalidInput("measure_moments: component must be 0..3");
  if (!(eps >= fam.eps_min && eps <= fam.eps_max))
    throw InvalidInput("measure_moments: eps outside declared range");
  for (const SingularLine& l : ref.lines) {
    if (l.speed == line_speed) continue;
    if (std::abs(l.speed - line_speed) * t <= window)
      throw InvalidInput(
          "measure_moments: window overlaps another singular line");
  }

  const double center = line_speed * t;
  const double xa = center - window, xb = center + window;

  std::vector<double> splits{center};
  for (double c : ref.region_speeds) {
    const double p = c * t;
    if (p > xa && p < xb) splits.push_back(p);
  }
  if (fam.x_kinks)
    for (double k : fam.x_kinks(eps, t))
      if (k > xa && k < xb) splits.push_back(k);
  const double scale = fam.layer_scale ? fam.layer_scale(eps, t) : 0.0;
  if (scale > 0.0)
    for (int j = -16; j <= 16; ++j) {
      const double p = center + j * scale / 2.0;
      if (p > xa && p < xb) splits.push_back(p);
    }
  for (int j = 1; j < 8; ++j) splits.push_back(xa + (xb - xa) * j / 8.0);
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

  auto f = [&](double x) -> std::array<double, 2> {
    const double df =
        fam.eval(eps, x, t)[component] - ref.background(x, t)[component];
    return {df, (x - center) * df};
  };
  const auto r = adaptive_gl16<2>(f, xa, xb, quad.rel_tol, quad.max_panels,
                                  {}, splits);

  MomentReport rep;
  rep.line_speed = line_speed;
  rep.t = t;
  rep.component = component;
  rep.eps = eps;
  rep.window = window;
  rep.m0 = r.value[0];
  rep.m1 = r.value[1];
  return rep;
}

DecayFit fit_decay_order(std::span<const double> eps,
                         std::span<const double> values) {
  if (eps.size() != values.size() || eps.size() < 2)
    throw InvalidInput("fit_decay_order: need matching samples");
  std::vector<double> xs(eps.size()), ys(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw InvalidInput("fit_decay_order: eps must be > 0");
    xs[i] = std::log(1.0 / eps[i]);
    ys[i] = std::log(std::max(std::abs(values[i]), 1e-300));
  }
  const LineFit f = fit_line(xs, ys);
  return {-f.slope, f.residual};
}

}  // namespace quadlaw
