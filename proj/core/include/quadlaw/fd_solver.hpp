#pragma once

#include <array>
#include <vector>

#include "quadlaw/initial_data.hpp"

namespace quadlaw {

struct FDGrid {
  double x_min, x_max;
  int n_cells;
  double safety = 0.9;

  double h() const { return (x_max - x_min) / n_cells; }
  int n_points() const { return n_cells + 1; }
  double x(int i) const { return x_min + h() * i; }
  void validate() const;
};

// Diffusion coefficients multiplying the second difference, one per
// component. The single-viscosity system uses gamma/2 everywhere; the
// macroscopic construction uses (beta/2, beta/2, beta/2, eps).
struct Viscosities {
  std::array<double, 4> d{};

  static Viscosities from_gamma(double gamma) {
    return {{gamma / 2.0, gamma / 2.0, gamma / 2.0, gamma / 2.0}};
  }
  double max() const;
  void validate() const;
};

struct FDState {
  double time = 0.0;
  std::array<std::vector<double>, 4> q;  // length n_points each
  // Frozen far-field values (left, right) per component.
  std::array<std::pair<double, double>, 4> farfield{};

  double max_abs_u() const;
  void validate(const FDGrid& grid) const;
};

FDState init_state(const PiecewiseInitialData& data, const FDGrid& grid);

double max_stable_dt(const FDState& state, const FDGrid& grid,
                     const Viscosities& nu);

// One explicit update: components in the order u, v, w, z, each equation's
// coefficients taken from the just-updated upstream components. Central
// flux with local Lax-Friedrichs dissipation, 3-point diffusion, endpoints
// pinned to the far field. Rejects dt above the stability bound.
FDState step(const FDState& state, const FDGrid& grid, const Viscosities& nu,
             double dt);

struct FDRunResult {
  FDState state;
  std::array<double, 4> conservation_defect{};
  std::vector<FDState> snapshots;
  long steps = 0;
};

FDRunResult run(const PiecewiseInitialData& data, const FDGrid& grid,
                const Viscosities& nu, double T,
                const std::vector<double>& snapshot_times = {});

}  // namespace quadlaw
