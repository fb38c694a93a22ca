#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <vector>

#include "quadlaw/errors.hpp"
#include "quadlaw/field_sample.hpp"

namespace quadlaw {

struct RiemannData {
  double u_l = 0, v_l = 0, w_l = 0, z_l = 0;
  double u_r = 0, v_r = 0, w_r = 0, z_r = 0;

  bool equal_side_states() const {
    return v_l == v_r && w_l == w_r && z_l == z_r;
  }
  FieldSample left() const { return {u_l, v_l, w_l, z_l}; }
  FieldSample right() const { return {u_r, v_r, w_r, z_r}; }
  void validate() const;
  bool operator==(const RiemannData&) const = default;
};

enum class RiemannKind { Rarefaction, Contact, Shock };

RiemannKind classify(const RiemannData& rd);
const char* to_string(RiemannKind k);

using AmplitudeFn = std::function<double(double)>;  // of time

// One discontinuity line x = speed * t carrying per-component delta and
// delta-prime amplitudes; delta' means d/dx, so <h delta', phi> = -h phi_x.
struct SingularLine {
  double speed = 0.0;
  std::array<AmplitudeFn, 4> delta_amp;
  std::array<AmplitudeFn, 4> delta_prime_amp;
};

// Piecewise-smooth background plus singular lines.
struct DistributionalSolution {
  std::function<FieldSample(double, double)> background;  // off the lines
  std::vector<double> region_speeds;  // background kink speeds, ascending
  std::vector<SingularLine> lines;    // distinct speeds

  const SingularLine& line_at(double speed) const;
};

// Piecewise-constant-with-fan background shared by every rarefaction-case
// construction here: side states outside the wedge, (x/t, 0, 0, 0) inside.
FieldSample rarefaction_background(const RiemannData& rd, double x, double t);
std::pair<double, double> background_uv(const RiemannData& rd, double x,
                                        double t);

// Vanishing-viscosity limit, stated only for equal side states: w-deltas
// +-v^2 t/2, z-deltas +-v w t, z-delta' -(v^3 t^2/6) on the left line and
// the negation on the right. For unequal side states use volpert_solution;
// its c = 0 member reduces to this limit when the sides agree.
DistributionalSolution vanishing_viscosity_limit(const RiemannData& rd);

// epsilon-wedge ansatz with sqrt(eps)- and 1/eps-scaled intermediate layers.
struct ShadowWaveFamily {
  RiemannData rd;
  double v1 = 0, w1 = 0, z1 = 0;  // left-layer scaled states
  double v2 = 0, w2 = 0, z2 = 0;  // right-layer scaled states

  FieldSample eval(double eps, double x, double t) const;
  // Piece boundaries at time t: (u_l - eps) t, u_l t, u_r t, (u_r + eps) t.
  std::array<double, 4> breakpoints(double eps, double t) const;
};

std::pair<ShadowWaveFamily, DistributionalSolution> shadow_wave(
    const RiemannData& rd);

// Volpert-product solution; c is the free homogeneous parameter of the
// delta' amplitude (c = 0 picks the vanishing-viscosity member).
DistributionalSolution volpert_solution(const RiemannData& rd, double c = 0.0);

// Mean of one-sided traces; the Volpert value of a BV function at a jump.
inline double volpert_average(double left_trace, double right_trace) {
  return 0.5 * (left_trace + right_trace);
}

// Structured text export: background region table and per-line amplitude
// samples at the requested times.
void write_background_table(std::ostream& os, const RiemannData& rd);
void write_amplitude_table(std::ostream& os, const DistributionalSolution& sol,
                           const std::vector<double>& times);

}  // namespace quadlaw
