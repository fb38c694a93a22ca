#include "quadlaw/riemann.hpp"

#include <cmath>
#include <ostream>

#include "quadlaw/csv.hpp"
#include "quadlaw/errors.hpp"

namespace quadlaw {

void RiemannData::validate() const {
  for (double s : {u_l, v_l, w_l, z_l, u_r, v_r, w_r, z_r})
    if (!std::isfinite(s)) throw InvalidInput("RiemannData: non-finite state");
}

RiemannKind classify(const RiemannData& rd) {
  rd.validate();
  if (rd.u_l < rd.u_r) return RiemannKind::Rarefaction;
  if (rd.u_l == rd.u_r) return RiemannKind::Contact;
  return RiemannKind::Shock;
}

const char* to_string(RiemannKind k) {
  switch (k) {
    case RiemannKind::Rarefaction: return "rarefaction";
    case RiemannKind::Contact: return "contact";
    default: return "shock";
  }
}

namespace {

void require_rarefaction(const RiemannData& rd, const char* who) {
  if (classify(rd) != RiemannKind::Rarefaction)
    throw UnsupportedCase(std::string(who) +
                          ": unsupported: shock/contact cases are resolved "
                          "in cited prior work");
}

AmplitudeFn zero_fn() {
  return [](double) { return 0.0; };
}

std::array<AmplitudeFn, 4> zero_amps() {
  return {zero_fn(), zero_fn(), zero_fn(), zero_fn()};
}

}  // namespace

const SingularLine& DistributionalSolution::line_at(double speed) const {
  for (const auto& l : lines)
    if (l.speed == speed) return l;
  throw InvalidInput("DistributionalSolution: no line at requested speed");
}

FieldSample rarefaction_background(const RiemannData& rd, double x, double t) {
  if (!(t > 0.0)) throw InvalidInput("rarefaction_background: t must be > 0");
  if (x < rd.u_l * t) return rd.left();
  if (x > rd.u_r * t) return rd.right();
  return {x / t, 0.0, 0.0, 0.0};
}

std::pair<double, double> background_uv(const RiemannData& rd, double x,
                                        double t) {
  require_rarefaction(rd, "background_uv");
  const FieldSample s = rarefaction_background(rd, x, t);
  return {s.u, s.v};
}

DistributionalSolution vanishing_viscosity_limit(const RiemannData& rd) {
  require_rarefaction(rd, "vanishing_viscosity_limit");
  if (!rd.equal_side_states())
    throw InvalidInput(
        "vanishing_viscosity_limit: stated only for equal side states "
        "(v_l = v_r, w_l = w_r, z_l = z_r)");
  const double v = rd.v_l, w = rd.w_l;

  DistributionalSolution sol;
  sol.background = [rd](double x, double t) {
    return rarefaction_background(rd, x, t);
  };
  sol.region_speeds = {rd.u_l, rd.u_r};

  SingularLine left;
  left.speed = rd.u_l;
  left.delta_amp = zero_amps();
  left.delta_prime_amp = zero_amps();
  left.delta_amp[2] = [v](double t) { return 0.5 * v * v * t; };
  left.delta_amp[3] = [v, w](double t) { return v * w * t; };
  left.delta_prime_amp[3] = [v](double t) { return -v * v * v * t * t / 6.0; };

  SingularLine right;
  right.speed = rd.u_r;
  right.delta_amp = zero_amps();
  right.delta_prime_amp = zero_amps();
  right.delta_amp[2] = [v](double t) { return -0.5 * v * v * t; };
  right.delta_amp[3] = [v, w](double t) { return -v * w * t; };
  right.delta_prime_amp[3] = [v](double t) { return v * v * v * t * t / 6.0; };

  sol.lines = {left, right};
  return sol;
}

FieldSample ShadowWaveFamily::eval(double eps, double x, double t) const {
  if (!(eps > 0.0)) throw InvalidInput("ShadowWaveFamily: eps must be > 0");
  if (!(t > 0.0)) throw InvalidInput("ShadowWaveFamily: t must be > 0");
  const double se = std::sqrt(eps);
  if (x < (rd.u_l - eps) * t) return rd.left();
  if (x < rd.u_l * t) return {rd.u_l, v1 / se, w1 / eps, z1 / eps};
  if (x < rd.u_r * t) return {x / t, 0.0, 0.0, 0.0};
  if (x < (rd.u_r + eps) * t) return {rd.u_r, v2 / se, w2 / eps, z2 / eps};
  return rd.right();
}

std::array<double, 4> ShadowWaveFamily::breakpoints(double eps,
                                                    double t) const {
  return {(rd.u_l - eps) * t, rd.u_l * t, rd.u_r * t, (rd.u_r + eps) * t};
}

std::pair<ShadowWaveFamily, DistributionalSolution> shadow_wave(
    const RiemannData& rd) {
  require_rarefaction(rd, "shadow_wave");

  ShadowWaveFamily fam;
  fam.rd = rd;
  fam.v1 = 0.0;
  fam.v2 = 0.0;
  fam.w1 = 0.5 * rd.v_l * rd.v_l;
  fam.w2 = -0.5 * rd.v_r * rd.v_r;
  fam.z1 = rd.v_l * rd.w_l;
  fam.z2 = -rd.v_r * rd.w_r;

  DistributionalSolution sol;
  sol.background = [rd](double x, double t) {
    return rarefaction_background(rd, x, t);
  };
  sol.region_speeds = {rd.u_l, rd.u_r};

  SingularLine left;
  left.speed = rd.u_l;
  left.delta_amp = zero_amps();
  left.delta_prime_amp = zero_amps();
  left.delta_amp[2] = [w1 = fam.w1](double t) { return w1 * t; };
  left.delta_amp[3] = [z1 = fam.z1](double t) { return z1 * t; };

  SingularLine right;
  right.speed = rd.u_r;
  right.delta_amp = zero_amps();
  right.delta_prime_amp = zero_amps();
  right.delta_amp[2] = [w2 = fam.w2](double t) { return w2 * t; };
  right.delta_amp[3] = [z2 = fam.z2](double t) { return z2 * t; };

  sol.lines = {left, right};
  return {fam, sol};
}

DistributionalSolution volpert_solution(const RiemannData& rd, double c) {
  require_rarefaction(rd, "volpert_solution");
  if (!std::isfinite(c)) throw InvalidInput("volpert_solution: bad c");

  DistributionalSolution sol;
  sol.background = [rd](double x, double t) {
    return rarefaction_background(rd, x, t);
  };
  sol.region_speeds = {rd.u_l, rd.u_r};

  const double vl = rd.v_l, wl = rd.w_l, vr = rd.v_r, wr = rd.w_r;

  SingularLine left;
  left.speed = rd.u_l;
  left.delta_amp = zero_amps();
  left.delta_prime_amp = zero_amps();
  left.delta_amp[2] = [vl](double t) { return 0.5 * vl * vl * t; };
  left.delta_amp[3] = [vl, wl](double t) { return vl * wl * t; };
  left.delta_prime_amp[3] = [vl, c](double t) {
    return -(vl * vl * vl * t * t / 6.0 + c * std::sqrt(t));
  };

  SingularLine right;
  right.speed = rd.u_r;
  right.delta_amp = zero_amps();
  right.delta_prime_amp = zero_amps();
  right.delta_amp[2] = [vr](double t) { return -0.5 * vr * vr * t; };
  right.delta_amp[3] = [vr, wr](double t) { return -vr * wr * t; };
  right.delta_prime_amp[3] = [vr, c](double t) {
    return vr * vr * vr * t * t / 6.0 + c * std::sqrt(t);
  };

  sol.lines = {left, right};
  return sol;
}

void write_background_table(std::ostream& os, const RiemannData& rd) {
  os << "region,speed_lo,speed_hi,u,v,w,z\n";
  os << "left,-inf," << csv::num(rd.u_l) << ',' << csv::num(rd.u_l) << ','
     << csv::num(rd.v_l) << ',' << csv::num(rd.w_l) << ',' << csv::num(rd.z_l)
     << '\n';
  os << "fan," << csv::num(rd.u_l) << ',' << csv::num(rd.u_r)
     << ",x/t,0,0,0\n";
  os << "right," << csv::num(rd.u_r) << ",inf," << csv::num(rd.u_r) << ','
     << csv::num(rd.v_r) << ',' << csv::num(rd.w_r) << ',' << csv::num(rd.z_r)
     << '\n';
}

void write_amplitude_table(std::ostream& os, const DistributionalSolution& sol,
                           const std::vector<double>& times) {
  os << "line,component,t,delta,delta_prime\n";
  for (std::size_t li = 0; li < sol.lines.size(); ++li) {
    const SingularLine& l = sol.lines[li];
    const char* name = (li == 0) ? "left" : (li == 1 ? "right" : "line");
    for (int k = 2; k < 4; ++k) {  // only w and z carry singular parts
      for (double t : times) {
        os << name << ',' << kComponentNames[k] << ',' << csv::num(t) << ','
           << csv::num(l.delta_amp[k](t)) << ','
           << csv::num(l.delta_prime_amp[k](t)) << '\n';
      }
    }
  }
}

}  // namespace quadlaw
