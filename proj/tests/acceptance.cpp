// Acceptance suite: ten oracle- and property-based criteria covering the
// exact viscous solver, the finite-difference cross-check, the closed-form
// distributional solutions, and the eps-family measurements. Prints one
// PASS/FAIL line per criterion; nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "quadlaw/distributions.hpp"
#include "quadlaw/entropy.hpp"
#include "quadlaw/experiments.hpp"
#include "quadlaw/fd_solver.hpp"

using namespace quadlaw;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

PiecewiseInitialData riemann_data(const RiemannData& rd) {
  return {ComponentData::step(rd.u_l, rd.u_r),
          ComponentData::step(rd.v_l, rd.v_r),
          ComponentData::step(rd.w_l, rd.w_r),
          ComponentData::step(rd.z_l, rd.z_r)};
}

PiecewiseInitialData smooth_data() {
  auto g = [](double a, double c, double s) {
    return ComponentData::smooth(
        [a, c, s](double x) {
          const double r = (x - c) / s;
          return a * std::exp(-r * r);
        },
        std::abs(a));
  };
  return {g(0.3, 0.0, 1.0), g(0.4, 0.5, 1.0), g(0.2, 0.0, 1.4),
          g(0.1, -0.3, 1.0)};
}

const RiemannData kStandard{-1, 2, 1, 0, 1, 2, 1, 0};

// 1. Constant-data exactness: (1,2,3,4), gamma in {1, 0.1, 0.01}, 100
//    random (x, t) in [-2,2] x [0.05, 1.5]; max relative error <= 1e-8.
void criterion1() {
  const Primitives p =
      build_primitives(PiecewiseInitialData::constant(1, 2, 3, 4), {});
  std::mt19937 rng(20240801);
  std::uniform_real_distribution<double> px(-2.0, 2.0), pt(0.05, 1.5);
  double worst = 0.0;
  const double expect[4] = {1, 2, 3, 4};
  for (double gamma : {1.0, 0.1, 0.01}) {
    const ViscousParams vp{gamma, {}, 1e-6};
    for (int i = 0; i < 100; ++i) {
      const FieldSample s = eval_fields(p, vp, px(rng), pt(rng));
      for (int k = 0; k < 4; ++k)
        worst = std::max(worst, std::abs(s[k] - expect[k]) / expect[k]);
    }
  }
  report(1, worst <= 1e-8, "constant-data exactness",
         fmt("max rel err %.2e <= 1e-8", worst));
}

// 2. Cross-solver uniqueness check: smooth bounded data, gamma = 0.5,
//    T = 0.5, h = 3e-3; sup-norm disagreement <= 1e-3, halving h improves
//    it by >= 1.5x.
void criterion2() {
  const PiecewiseInitialData data = smooth_data();
  const double gamma = 0.5, T = 0.5;
  const Primitives prims = build_primitives(data, {});
  const ViscousParams vp{gamma, {}, 1e-6};
  auto sup_err = [&](int n) {
    const FDGrid grid{-8.0, 8.0, n, 0.9};
    const FDRunResult res = run(data, grid, Viscosities::from_gamma(gamma), T);
    double sup = 0.0;
    for (int i = 0; i < grid.n_points(); i += 16) {
      const FieldSample ex = eval_fields(prims, vp, grid.x(i), T);
      for (int k = 0; k < 4; ++k)
        sup = std::max(sup, std::abs(ex[k] - res.state.q[k][i]));
    }
    return sup;
  };
  const double coarse = sup_err(5334);   // h = 3.0e-3
  const double fine = sup_err(10667);    // h = 1.5e-3
  report(2, coarse <= 1e-3 && coarse / fine >= 1.5,
         "cross-solver agreement on smooth data",
         fmt("sup %.2e <= 1e-3, refine ratio %.2f >= 1.5", coarse,
             coarse / fine));
}

// 3. Burgers fan recovery at gamma = 1e-3, within 2e-2 outside corner
//    windows of width 0.1.
void criterion3() {
  const Primitives p =
      build_primitives(riemann_data({-1, 0, 0, 0, 1, 0, 0, 0}), {});
  const ViscousParams vp{1e-3, {}, 1e-6};
  auto fan = [](double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); };
  double worst = 0.0;
  for (double x = -2.5; x <= 2.5 + 1e-12; x += 0.025) {
    if (std::abs(std::abs(x) - 1.0) < 0.1) continue;
    worst = std::max(worst, std::abs(eval_fields(p, vp, x, 1.0).u - fan(x)));
  }
  report(3, worst <= 2e-2, "Burgers fan recovery at gamma = 1e-3",
         fmt("max |u - fan| %.2e <= 2e-2 off corners", worst));
}

struct MomentSweep {
  double m0_extrap = 0, m1_extrap = 0;
};

MomentSweep viscous_moment_sweep(int component) {
  auto prims = std::make_shared<Primitives>(build_primitives(
      riemann_data(kStandard), QuadratureSpec{1e-8, 16384, 1.25}));
  const QuadratureSpec quad{1e-8, 16384, 1.25};
  const EpsilonFamily fam = viscous_family(prims, quad, {-1.0, 1.0});
  const DistributionalSolution ref = volpert_solution(kStandard, 0.0);
  const std::vector<double> gammas{1e-2, 3e-3, 1e-3};
  std::vector<double> m0s, m1s;
  for (double g : gammas) {
    const MomentReport rep =
        measure_moments(fam, ref, component, -1.0, 1.0, 0.4, g, quad);
    m0s.push_back(rep.m0);
    m1s.push_back(rep.m1);
  }
  // First order in sqrt(gamma), extrapolated on the finest pair.
  MomentSweep out;
  out.m0_extrap = richardson2(m0s[1], m0s[2], std::sqrt(gammas[1]),
                              std::sqrt(gammas[2]), 1.0);
  out.m1_extrap = richardson2(m1s[1], m1s[2], std::sqrt(gammas[1]),
                              std::sqrt(gammas[2]), 1.0);
  return out;
}

// 4. Delta amplitudes of the vanishing-viscosity limit: M0 of w and z at
//    the left line equal vbar^2 t/2 = vbar wbar t = 2.0 within 5% after
//    extrapolation over gamma in {1e-2, 3e-3, 1e-3}.
void criterion4(const MomentSweep& w_sweep, const MomentSweep& z_sweep) {
  const double ew = std::abs(w_sweep.m0_extrap - 2.0) / 2.0;
  const double ez = std::abs(z_sweep.m0_extrap - 2.0) / 2.0;
  report(4, ew <= 0.05 && ez <= 0.05, "delta amplitudes at the left line",
         fmt("M0w %.4f (err %.1f%%), M0z %.4f (err %.1f%%), gate 5%%",
             w_sweep.m0_extrap, 100 * ew, z_sweep.m0_extrap, 100 * ez));
}

// 5. The delta'-moment discrepancy: viscous z-family M1 -> +4/3 within
//    10%; shadow-wave z-family M1 -> 0 within 10% of that scale; the two
//    M0 values agree within 5%.
void criterion5(const MomentSweep& z_sweep) {
  const double target = 4.0 / 3.0;
  const double e_visc = std::abs(z_sweep.m1_extrap - target) / target;

  const auto [swfam, limit] = shadow_wave(kStandard);
  (void)limit;
  const EpsilonFamily fam = as_epsilon_family(swfam);
  const DistributionalSolution ref = volpert_solution(kStandard, 0.0);
  const std::vector<double> eps{0.1, 0.05, 0.02};
  std::vector<double> m0s, m1s;
  for (double e : eps) {
    const MomentReport rep = measure_moments(
        fam, ref, 3, -1.0, 1.0, 0.4, e, QuadratureSpec{1e-10, 8192, 1.25});
    m0s.push_back(rep.m0);
    m1s.push_back(rep.m1);
  }
  const double sw_m1 = richardson2(m1s[1], m1s[2], eps[1], eps[2], 1.0);
  const double sw_m0 = richardson2(m0s[1], m0s[2], eps[1], eps[2], 1.0);
  const double e_sw = std::abs(sw_m1) / target;
  const double m0_gap = std::abs(z_sweep.m0_extrap - sw_m0) / std::abs(sw_m0);
  report(5, e_visc <= 0.10 && e_sw <= 0.10 && m0_gap <= 0.05,
         "z delta'-moment discrepancy between the two limits",
         fmt("viscous M1 %.4f (err %.1f%%), shadow M1 %.4f (%.1f%% of 4/3), "
             "M0 gap %.1f%%",
             z_sweep.m1_extrap, 100 * e_visc, sw_m1, 100 * e_sw,
             100 * m0_gap));
}

// 6. Shadow-wave weak residuals decay monotonically with fitted order
//    >= 0.8 over eps in {0.1, 0.03, 0.01, 0.003, 0.001}; components whose
//    residual never rises above the quadrature floor pass trivially.
void criterion6() {
  const auto [fam, limit] = shadow_wave(kStandard);
  (void)limit;
  const EpsilonFamily ef = as_epsilon_family(fam);
  const TestFunction phi = bump(-1.0, 1.0, 0.8, 0.5);
  const std::vector<double> eps{0.1, 0.03, 0.01, 0.003, 0.001};
  std::array<std::vector<double>, 4> resid;
  for (double e : eps) {
    const auto r =
        weak_residual_family(ef, phi, e, QuadratureSpec{1e-9, 8192, 1.25});
    for (int k = 0; k < 4; ++k) resid[k].push_back(std::abs(r[k]));
  }
  bool pass = true;
  std::string detail;
  for (int k = 0; k < 4; ++k) {
    const double peak = *std::max_element(resid[k].begin(), resid[k].end());
    if (peak <= 1e-10) {
      detail += fmt("%s: below floor; ", kComponentNames[k]);
      continue;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < eps.size(); ++i)
      monotone = monotone && resid[k][i] < resid[k][i - 1];
    const DecayFit fit = fit_decay_order(eps, resid[k]);
    pass = pass && monotone && fit.order >= 0.8;
    detail += fmt("%s: order %.2f%s; ", kComponentNames[k], fit.order,
                  monotone ? "" : " NOT monotone");
  }
  report(6, pass, "shadow-wave weak residual decay", detail);
}

// 7. Volpert coefficient ODE residuals < 1e-10 on t in [0.1, 2]; the c = 0
//    member equals the vanishing-viscosity limit pointwise to 1e-12.
void criterion7() {
  auto deriv = [](const AmplitudeFn& f, double t) {
    const double h = 1e-4;
    return (8.0 * (f(t + h) - f(t - h)) - (f(t + 2 * h) - f(t - 2 * h))) /
           (12.0 * h);
  };
  double worst_ode = 0.0;
  for (double c : {0.0, 0.8}) {
    const DistributionalSolution sol = volpert_solution(kStandard, c);
    const SingularLine& L = sol.line_at(-1.0);
    const SingularLine& R = sol.line_at(1.0);
    const double v = kStandard.v_l, w = kStandard.w_l;
    AmplitudeFn h_left = [&L](double t) { return -L.delta_prime_amp[3](t); };
    AmplitudeFn h_right = [&R](double t) { return R.delta_prime_amp[3](t); };
    for (double t = 0.1; t <= 2.0 + 1e-12; t += 0.05) {
      worst_ode = std::max(worst_ode,
                           std::abs(deriv(L.delta_amp[2], t) - 0.5 * v * v));
      worst_ode =
          std::max(worst_ode, std::abs(deriv(L.delta_amp[3], t) - v * w));
      worst_ode = std::max(worst_ode,
                           std::abs(deriv(h_left, t) - h_left(t) / (2 * t) -
                                    v * v * v * t / 4.0));
      worst_ode = std::max(worst_ode,
                           std::abs(deriv(h_right, t) - h_right(t) / (2 * t) -
                                    v * v * v * t / 4.0));
    }
  }

  const DistributionalSolution vvl = vanishing_viscosity_limit(kStandard);
  const DistributionalSolution vol = volpert_solution(kStandard, 0.0);
  double worst_amp = 0.0;
  for (double t = 0.05; t <= 2.0 + 1e-12; t += 0.05)
    for (std::size_t li = 0; li < 2; ++li)
      for (int k = 0; k < 4; ++k) {
        worst_amp = std::max(worst_amp,
                             std::abs(vol.lines[li].delta_amp[k](t) -
                                      vvl.lines[li].delta_amp[k](t)));
        worst_amp = std::max(worst_amp,
                             std::abs(vol.lines[li].delta_prime_amp[k](t) -
                                      vvl.lines[li].delta_prime_amp[k](t)));
      }
  report(7, worst_ode < 1e-10 && worst_amp <= 1e-12,
         "volpert coefficient ODEs and the c = 0 identity",
         fmt("max ODE residual %.2e < 1e-10, max amplitude gap %.2e <= 1e-12",
             worst_ode, worst_amp));
}

// 8. Entropy admissibility for the shadow-wave family with eta = u^2/2,
//    c_i = 0: term2 fits through 0 with |intercept| <= 1e-8; term1
//    intercept (the limsup surrogate) <= 1e-8 at both lines.
void criterion8() {
  const auto [fam, limit] = shadow_wave(kStandard);
  (void)limit;
  const EntropyPair pair =
      make_entropy_pair([](double u) { return 0.5 * u * u; },
                        [](double u) { return u; }, 0, 0, 0, {-3.0, 3.0}, {});
  const std::vector<double> eps{0.1, 0.03, 0.01, 0.003, 0.001};
  const AdmissibilityReport rep = admissibility_report(fam, pair, eps, 1e-8);
  bool pass = rep.admissible();
  std::string detail;
  for (const AdmissibilityLine& l : rep.lines) {
    pass = pass && l.term1_fit.intercept <= 1e-8 &&
           std::abs(l.term2_fit.intercept) <= 1e-8 &&
           l.term2_fit.residual <= 1e-8;
    detail += fmt("line %+.0f: t1 %.1e, t2 %.1e (res %.1e); ", l.speed,
                  l.term1_fit.intercept, l.term2_fit.intercept,
                  l.term2_fit.residual);
  }
  report(8, pass, "shadow-wave entropy admissibility", detail);
}

// 9. Moderateness probe on the mollified viscous Riemann family: finite
//    fitted growth exponent with fit residual < 0.2 for j = 0 and 1.
void criterion9() {
  const std::vector<double> eps{0.1, 0.05, 0.02};
  const EpsilonFamily fam = viscous_mollified_riemann_family(
      kStandard, eps, QuadratureSpec{1e-8, 8192, 1.25}, 1e-6);
  SampleSection probe;
  probe.x_min = -1.8;
  probe.x_max = 1.8;
  probe.nx = 61;
  probe.t_min = 0.4;
  probe.t_max = 1.0;
  probe.nt = 3;
  bool pass = true;
  std::string detail;
  for (int j : {0, 1}) {
    const ModeratenessResult res = moderateness_probe(fam, j, eps, probe);
    pass = pass && std::isfinite(res.p) && res.fit_residual < 0.2;
    detail +=
        fmt("j=%d: p %.3f (residual %.3f); ", j, res.p, res.fit_residual);
  }
  report(9, pass, "moderateness growth exponents", detail);
}

// 10. Macroscopic bound probe: sup|z| sqrt(eps) non-increasing across
//     eps in {0.1, 0.05, 0.02} under the beta schedule (K = 3, T = 2).
void criterion10() {
  DataSpec data;  // standard rarefaction Riemann data
  GridSection grid;
  grid.x_min = -8;
  grid.x_max = 8;
  grid.n_cells = 1600;
  const std::vector<double> eps{0.1, 0.05, 0.02};
  const auto rows = macroscopic_run(data, 3.0, eps, grid, 2.0);
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0)
      pass = pass && rows[i].sup_z_sqrt_eps <=
                         rows[i - 1].sup_z_sqrt_eps * (1 + 1e-9);
    detail += fmt("eps %.2f: %.4f; ", rows[i].eps, rows[i].sup_z_sqrt_eps);
  }
  report(10, pass, "macroscopic sup|z| sqrt(eps) non-increasing", detail);
}

template <class F>
void timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("      (%.1f s)\n", dt);
}

}  // namespace

int main() {
  std::printf("quadlaw acceptance suite\n");
  timed(criterion1);
  timed(criterion2);
  timed(criterion3);

  MomentSweep w_sweep{}, z_sweep{};
  timed([&] {
    w_sweep = viscous_moment_sweep(2);
    z_sweep = viscous_moment_sweep(3);
    criterion4(w_sweep, z_sweep);
  });
  timed([&] { criterion5(z_sweep); });
  timed(criterion6);
  timed(criterion7);
  timed(criterion8);
  timed(criterion9);
  timed(criterion10);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria FAILED\n", g_failures);
  return 1;
}
