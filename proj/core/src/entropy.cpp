#include "quadlaw/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace quadlaw {

EntropyPair::EntropyPair(std::function<double(double)> eta_bar,
                         std::function<double(double)> eta_bar_prime,
                         double c1, double c2, double c3,
                         std::shared_ptr<const CumulativeIntegral> Q)
    : eta_bar_(std::move(eta_bar)),
      eta_bar_prime_(std::move(eta_bar_prime)),
      c1_(c1),
      c2_(c2),
      c3_(c3),
      Q_(std::move(Q)) {}

double EntropyPair::eta(const FieldSample& s) const {
  return eta_bar_(s.u) + c1_ * s.v + c2_ * s.w + c3_ * s.z;
}

double EntropyPair::q(const FieldSample& s) const {
  return Q(s.u) + c1_ * s.u * s.v + c2_ * (0.5 * s.v * s.v + s.u * s.w) +
         c3_ * (s.v * s.w + s.u * s.z);
}

EntropyPair make_entropy_pair(std::function<double(double)> eta_bar,
                              std::function<double(double)> eta_bar_prime,
                              double c1, double c2, double c3,
                              std::pair<double, double> u_range,
                              const QuadratureSpec& quad) {
  quad.validate();
  if (!eta_bar || !eta_bar_prime)
    throw InvalidInput("make_entropy_pair: missing eta_bar or its derivative");
  auto [lo, hi] = u_range;
  if (!(hi > lo)) throw InvalidInput("make_entropy_pair: bad u_range");

  // Convexity spot check by sampled second differences.
  const int n = 200;
  const double h = (hi - lo) / n;
  for (int i = 1; i < n; ++i) {
    const double u = lo + i * h;
    const double dd =
        (eta_bar(u - h) - 2.0 * eta_bar(u) + eta_bar(u + h)) / (h * h);
    if (!(dd >= -1e-9))
      throw InvalidInput("make_entropy_pair: eta_bar fails the convexity check");
  }

  // Q cached over a padded range; outside it the tail integrates on demand.
  ComponentData integrand = ComponentData::smooth(
      [eta_bar_prime](double s) { return s * eta_bar_prime(s); },
      0.0);
  // sup_norm is only used for tail floors; a generous bound is fine.
  double bound = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = lo + i * h;
    bound = std::max(bound, std::abs(u * eta_bar_prime(u)));
  }
  integrand.sup_norm = bound;
  auto Q = std::make_shared<CumulativeIntegral>(
      std::move(integrand), std::min(lo, 0.0) - 2.0, std::max(hi, 0.0) + 2.0,
      1e-13);
  return EntropyPair(std::move(eta_bar), std::move(eta_bar_prime), c1, c2, c3,
                     std::move(Q));
}

FieldSample to_prolonged(const FieldSample& s) {
  return {2.0 * s.u, s.v, 4.0 * s.w, 24.0 * s.z};
}

FieldSample from_prolonged(const FieldSample& s) {
  return {s.u / 2.0, s.v, s.w / 4.0, s.z / 24.0};
}

bool AdmissibilityReport::admissible() const {
  return std::all_of(lines.begin(), lines.end(), [](const AdmissibilityLine& l) {
    return l.verdict == "admissible";
  });
}

namespace {

struct LineStates {
  double speed;
  FieldSample outer1, outer2;  // states left/right of the line
  // Layer states at given eps; a zero-width layer reuses the outer state.
  std::function<FieldSample(double)> layer1, layer2;
};

std::array<LineStates, 2> line_states(const ShadowWaveFamily& fam) {
  const RiemannData& rd = fam.rd;
  const FieldSample fan_l{rd.u_l, 0, 0, 0};
  const FieldSample fan_r{rd.u_r, 0, 0, 0};

  LineStates left;
  left.speed = rd.u_l;
  left.outer1 = rd.left();
  left.outer2 = fan_l;
  left.layer1 = [fam, rd](double eps) {
    return FieldSample{rd.u_l, fam.v1 / std::sqrt(eps), fam.w1 / eps,
                       fam.z1 / eps};
  };
  left.layer2 = [fan_l](double) { return fan_l; };

  LineStates right;
  right.speed = rd.u_r;
  right.outer1 = fan_r;
  right.outer2 = rd.right();
  right.layer1 = [fan_r](double) { return fan_r; };
  right.layer2 = [fam, rd](double eps) {
    return FieldSample{rd.u_r, fam.v2 / std::sqrt(eps), fam.w2 / eps,
                       fam.z2 / eps};
  };
  return {left, right};
}

}  // namespace

AdmissibilityReport admissibility_report(const ShadowWaveFamily& fam,
                                         const EntropyPair& pair,
                                         std::span<const double> eps_list,
                                         double tol) {
  if (eps_list.size() < 2)
    throw InvalidInput("admissibility_report: need at least two eps values");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw InvalidInput("admissibility_report: eps_list must decrease");

  AdmissibilityReport rep;
  rep.tol = tol;
  for (const LineStates& ls : line_states(fam)) {
    const double c = ls.speed;
    const double jump_eta = pair.eta(ls.outer2) - pair.eta(ls.outer1);
    const double jump_q = pair.q(ls.outer2) - pair.q(ls.outer1);

    std::vector<double> xs, t1s, t2s, o1s;
    for (double eps : eps_list) {
      const FieldSample L1 = ls.layer1(eps);
      const FieldSample L2 = ls.layer2(eps);
      const double layer_eta = pair.eta(L1) + pair.eta(L2);
      const double layer_q = pair.q(L1) + pair.q(L2);
      const double term1 = -c * jump_eta + eps * layer_eta + jump_q;
      const double term2 = -c * eps * layer_eta + eps * layer_q;
      rep.rows.push_back({ls.speed, eps, term1, term2});
      xs.push_back(eps);
      t1s.push_back(term1);
      t2s.push_back(term2);
      o1s.push_back(eps * layer_eta);
    }

    AdmissibilityLine line;
    line.speed = ls.speed;
    line.term1_fit = fit_line(xs, t1s);
    line.term2_fit = fit_line(xs, t2s);
    line.layer_entropy_o1 = fit_line(xs, o1s).intercept;
    if (std::abs(line.layer_entropy_o1) > tol)
      line.verdict = "deferred-o1-layer-terms";
    else if (line.term1_fit.intercept <= tol &&
             std::abs(line.term2_fit.intercept) <= tol)
      line.verdict = "admissible";
    else
      line.verdict = "not-admissible";
    rep.lines.push_back(std::move(line));
  }
  return rep;
}

}  // namespace quadlaw
