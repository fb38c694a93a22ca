#include "quadlaw/fd_solver.hpp"

#include <algorithm>
#include <cmath>

namespace quadlaw {

void FDGrid::validate() const {
  if (!(x_min < x_max)) throw InvalidInput("FDGrid: x_min must be < x_max");
  if (n_cells < 16) throw InvalidInput("FDGrid: need at least 16 cells");
  if (!(safety > 0.0 && safety < 1.0))
    throw InvalidInput("FDGrid: safety must lie in (0,1)");
}

double Viscosities::max() const {
  return std::max(std::max(d[0], d[1]), std::max(d[2], d[3]));
}

void Viscosities::validate() const {
  for (double v : d)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InvalidInput("Viscosities: coefficients must be finite and >= 0");
}

double FDState::max_abs_u() const {
  double m = 0.0;
  for (double v : q[0]) m = std::max(m, std::abs(v));
  return m;
}

void FDState::validate(const FDGrid& grid) const {
  for (int k = 0; k < 4; ++k) {
    if (static_cast<int>(q[k].size()) != grid.n_points())
      throw InvalidInput("FDState: array length must be n_cells + 1");
    for (double v : q[k])
      if (!std::isfinite(v)) throw InvalidInput("FDState: non-finite value");
  }
}

FDState init_state(const PiecewiseInitialData& data, const FDGrid& grid) {
  grid.validate();
  data.validate();
  FDState s;
  s.time = 0.0;
  const int n = grid.n_points();
  for (int k = 0; k < 4; ++k) {
    const ComponentData& comp = data.component(k);
    s.q[k].resize(n);
    for (int i = 0; i < n; ++i) s.q[k][i] = comp(grid.x(i));
    s.farfield[k] = {comp(grid.x_min), comp(grid.x_max)};
  }
  s.validate(grid);
  return s;
}

double max_stable_dt(const FDState& state, const FDGrid& grid,
                     const Viscosities& nu) {
  // Additive bound: physical diffusion and the scheme's own dissipation
  // (max|u| h / 2) share the h^2 budget. Strictly tighter than
  // min(h^2 / (2 dmax), h / max|u|), which alone admits steps where the
  // combined diffusion number exceeds 1/2.
  const double h = grid.h();
  const double umax = state.max_abs_u() + 1e-12;
  const double dmax = nu.max() + 0.5 * umax * h;
  return grid.safety / (2.0 * dmax / (h * h) + umax / h);
}

namespace {

// dq/dt for component k with convection coefficients `coef` (the already
// updated upstream components) and own variable `q`. Conservative flux
// difference + diffusion, interior points only.
void update_component(int k, const FDGrid& grid, double dt, double diff,
                      const std::array<const std::vector<double>*, 4>& coef,
                      const std::vector<double>& own,
                      std::vector<double>& out) {
  const int n = static_cast<int>(own.size());
  const double h = grid.h();
  const auto& u = *coef[0];
  const auto& v = *coef[1];
  const auto& w = *coef[2];

  auto flux_at = [&](int i) -> double {
    switch (k) {
      case 0: return 0.5 * own[i] * own[i];
      case 1: return u[i] * own[i];
      case 2: return 0.5 * v[i] * v[i] + u[i] * own[i];
      default: return v[i] * w[i] + u[i] * own[i];
    }
  };

  std::vector<double> F(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const double alpha = std::max(std::abs(u[i]), std::abs(u[i + 1]));
    F[i] = 0.5 * (flux_at(i) + flux_at(i + 1)) -
           0.5 * alpha * (own[i + 1] - own[i]);
  }
  out[0] = own[0];
  out[n - 1] = own[n - 1];
  const double lam = dt / h;
  const double mu = dt * diff / (h * h);
  for (int i = 1; i < n - 1; ++i)
    out[i] = own[i] - lam * (F[i] - F[i - 1]) +
             mu * (own[i + 1] - 2.0 * own[i] + own[i - 1]);
}

}  // namespace

FDState step(const FDState& state, const FDGrid& grid, const Viscosities& nu,
             double dt) {
  grid.validate();
  nu.validate();
  if (!(dt > 0.0)) throw InvalidInput("step: dt must be positive");
  const double dt_max = max_stable_dt(state, grid, nu);
  if (dt > dt_max * (1.0 + 1e-12))
    throw CflError("step: dt violates the stability bound");

  FDState next = state;
  next.time = state.time + dt;
  const int n = grid.n_points();
  for (int k = 0; k < 4; ++k) next.q[k].assign(n, 0.0);

  // u uses the old u; each later component sees the updated ones.
  std::array<const std::vector<double>*, 4> coef{&state.q[0], &state.q[1],
                                                 &state.q[2], &state.q[3]};
  update_component(0, grid, dt, nu.d[0], coef, state.q[0], next.q[0]);
  coef[0] = &next.q[0];
  update_component(1, grid, dt, nu.d[1], coef, state.q[1], next.q[1]);
  coef[1] = &next.q[1];
  update_component(2, grid, dt, nu.d[2], coef, state.q[2], next.q[2]);
  coef[2] = &next.q[2];
  update_component(3, grid, dt, nu.d[3], coef, state.q[3], next.q[3]);
  return next;
}

FDRunResult run(const PiecewiseInitialData& data, const FDGrid& grid,
                const Viscosities& nu, double T,
                const std::vector<double>& snapshot_times) {
  if (!(T > 0.0)) throw InvalidInput("run: T must be positive");
  FDRunResult res;
  res.state = init_state(data, grid);

  std::vector<double> events = snapshot_times;
  events.push_back(T);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  for (double e : events)
    if (!(e > 0.0) || e > T) throw InvalidInput("run: snapshot times must lie in (0, T]");

  const double h = grid.h();
  std::array<double, 4> mass0{};
  for (int k = 0; k < 4; ++k)
    for (int i = 1; i < grid.n_points() - 1; ++i) mass0[k] += res.state.q[k][i] * h;

  // Boundary flux bookkeeping for the conservation audit.
  std::array<double, 4> boundary_flow{};
  auto edge_fluxes = [&](const FDState& before, const FDState& after,
                         double dt) {
    // Recreate the edge fluxes of this step: same upstream-coefficient rule.
    const int n = grid.n_points();
    for (int k = 0; k < 4; ++k) {
      const std::vector<double>& own = before.q[k];
      const std::vector<double>& u = (k == 0) ? before.q[0] : after.q[0];
      const std::vector<double>& v = (k <= 1) ? before.q[1] : after.q[1];
      const std::vector<double>& w = (k <= 2) ? before.q[2] : after.q[2];
      auto flux_at = [&](int i) {
        switch (k) {
          case 0: return 0.5 * own[i] * own[i];
          case 1: return u[i] * own[i];
          case 2: return 0.5 * v[i] * v[i] + u[i] * own[i];
          default: return v[i] * w[i] + u[i] * own[i];
        }
      };
      auto F = [&](int i) {
        const double alpha = std::max(std::abs(u[i]), std::abs(u[i + 1]));
        return 0.5 * (flux_at(i) + flux_at(i + 1)) -
               0.5 * alpha * (own[i + 1] - own[i]);
      };
      const double dif_l = nu.d[k] * (own[1] - own[0]) / h;
      const double dif_r = nu.d[k] * (own[n - 1] - own[n - 2]) / h;
      boundary_flow[k] += dt * (F(0) - F(n - 2)) + dt * (dif_r - dif_l);
    }
  };

  auto requested = [&](double t) {
    for (double s : snapshot_times)
      if (std::abs(s - t) <= 1e-14 * std::max(1.0, T)) return true;
    return false;
  };
  for (double target : events) {
    while (res.state.time < target * (1.0 - 1e-14)) {
      const double dt =
          std::min(max_stable_dt(res.state, grid, nu), target - res.state.time);
      FDState after = step(res.state, grid, nu, dt);
      edge_fluxes(res.state, after, dt);
      res.state = std::move(after);
      ++res.steps;
    }
    res.state.time = target;
    if (requested(target)) res.snapshots.push_back(res.state);
  }

  for (int k = 0; k < 4; ++k) {
    double mass = 0.0;
    for (int i = 1; i < grid.n_points() - 1; ++i) mass += res.state.q[k][i] * h;
    res.conservation_defect[k] = std::abs(mass - mass0[k] - boundary_flow[k]);
  }
  return res;
}

}  // namespace quadlaw
