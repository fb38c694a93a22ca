#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "quadlaw/hopf_cole.hpp"
#include "quadlaw/riemann.hpp"

namespace quadlaw {

// Product bump exp(-1/(1-s^2)) in each scaled coordinate, normalized to
// peak value 1; vanishes with all derivatives on the support boundary.
struct TestFunction {
  double x0 = 0, t0 = 0, rx = 1, rt = 1;

  double operator()(double x, double t) const;
  double dx(double x, double t) const;
  double dt(double x, double t) const;
  std::pair<double, double> x_support() const { return {x0 - rx, x0 + rx}; }
  std::pair<double, double> t_support() const { return {t0 - rt, t0 + rt}; }
};

TestFunction bump(double x0, double t0, double rx, double rt);

// An epsilon-parameterized field family. layer_scale reports the width of
// its internal layers (quadrature must resolve it); x_kinks lists exact
// piece boundaries when the family is piecewise in x.
struct EpsilonFamily {
  std::function<FieldSample(double, double, double)> eval;  // (eps, x, t)
  double eps_min = 0.0, eps_max = 1.0;
  std::function<double(double, double)> layer_scale;        // (eps, t)
  std::function<std::vector<double>(double, double)> x_kinks;
  std::vector<double> line_speeds;

  FieldSample operator()(double eps, double x, double t) const;
};

EpsilonFamily as_epsilon_family(const ShadowWaveFamily& fam);
EpsilonFamily viscous_family(std::shared_ptr<const Primitives> prims,
                             QuadratureSpec quad,
                             std::vector<double> line_speeds = {},
                             double t_min = 1e-6);

// <solution, phi> for one component: background double integral plus
// sum over lines of  int [amp(t) phi(ct,t) - amp'(t) phi_x(ct,t)] dt.
double pair_solution(const DistributionalSolution& sol, const TestFunction& phi,
                     int component, const QuadratureSpec& quad);

// Weak residuals R_k(eps) = -int int [comp_k phi_t + flux_k phi_x] dx dt
// for the four inviscid fluxes. Fails loudly when the layer cannot be
// resolved inside the panel budget.
std::array<double, 4> weak_residual_family(const EpsilonFamily& fam,
                                           const TestFunction& phi, double eps,
                                           const QuadratureSpec& quad);

struct MomentReport {
  double line_speed = 0;
  double t = 0;
  int component = 0;
  double eps = 0;
  double window = 0;
  double m0 = 0;  // -> delta amplitude as eps -> 0
  double m1 = 0;  // -> -(delta' amplitude)
};

// Window moments of (family - closed-form background) about the line.
// The window must exclude every other singular line of `ref`.
MomentReport measure_moments(const EpsilonFamily& fam,
                             const DistributionalSolution& ref, int component,
                             double line_speed, double t, double window,
                             double eps, const QuadratureSpec& quad);

// log-log decay fit: |values| ~ C * eps^order.
struct DecayFit {
  double order = 0;     // fitted decay order p in |v| ~ C eps^p
  double residual = 0;  // rms residual of the log-log fit
};
DecayFit fit_decay_order(std::span<const double> eps,
                         std::span<const double> values);

// Two-level composite GL16 over [a, b] of an expensive vector row
// functional; the 48 rows of a segment evaluate concurrently, segments
// whose coarse/fine estimates disagree are bisected. Splits seed segment
// boundaries.
std::vector<double> integrate_rows(
    const std::function<std::vector<double>(double)>& row, double a, double b,
    std::span<const double> splits, double rel_tol, int max_depth = 12,
    bool parallel = true);

}  // namespace quadlaw
