#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "quadlaw/primitives.hpp"
#include "quadlaw/riemann.hpp"

namespace quadlaw {

// Convex entropy / flux pair for the four-component system:
//   eta(U) = eta_bar(u) + c1 v + c2 w + c3 z
//   q(U)   = Q(u) + c1 u v + c2 (v^2/2 + u w) + c3 (v w + u z)
// with Q'(u) = u eta_bar'(u), Q(0) = 0.
class EntropyPair {
 public:
  EntropyPair(std::function<double(double)> eta_bar,
              std::function<double(double)> eta_bar_prime, double c1,
              double c2, double c3,
              std::shared_ptr<const CumulativeIntegral> Q);

  double eta_bar(double u) const { return eta_bar_(u); }
  double Q(double u) const { return (*Q_)(u); }
  double eta(const FieldSample& s) const;
  double q(const FieldSample& s) const;
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double c3() const { return c3_; }

 private:
  std::function<double(double)> eta_bar_, eta_bar_prime_;
  double c1_, c2_, c3_;
  std::shared_ptr<const CumulativeIntegral> Q_;
};

// Builds the pair; rejects eta_bar whose sampled second differences over
// u_range dip below -1e-9.
EntropyPair make_entropy_pair(std::function<double(double)> eta_bar,
                              std::function<double(double)> eta_bar_prime,
                              double c1, double c2, double c3,
                              std::pair<double, double> u_range,
                              const QuadratureSpec& quad);

// Linear change of variables taking the system to the prolonged form.
FieldSample to_prolonged(const FieldSample& s);
FieldSample from_prolonged(const FieldSample& s);

struct AdmissibilityRow {
  double line_speed = 0;
  double eps = 0;
  double term1 = 0;
  double term2 = 0;
};

struct AdmissibilityLine {
  double speed = 0;
  LineFit term1_fit;       // term = intercept + slope * eps
  LineFit term2_fit;
  double layer_entropy_o1 = 0;  // fitted limit of eps*(eta(L1)+eta(L2))
  std::string verdict;          // admissible | not-admissible | deferred-o1-layer-terms
};

struct AdmissibilityReport {
  std::vector<AdmissibilityRow> rows;
  std::vector<AdmissibilityLine> lines;
  double tol = 1e-8;
  bool admissible() const;
};

// Entropy admissibility sequences for the shadow-wave family:
//   term1(eps) = -c (eta(U2) - eta(U1)) + eps (eta(L1) + eta(L2)) + q(U2) - q(U1)
//   term2(eps) = -c eps (eta(L1) + eta(L2)) + eps (q(L1) + q(L2))
// per singular line, with outer states U1, U2 and layer states L1, L2.
// Verdicts come from linear-fit intercepts over the eps sequence; when the
// eps-scaled layer entropy keeps an O(1) part (possible for c2, c3 != 0)
// the verdict is deferred and the raw sequences stand on their own.
AdmissibilityReport admissibility_report(const ShadowWaveFamily& fam,
                                         const EntropyPair& pair,
                                         std::span<const double> eps_list,
                                         double tol = 1e-8);

}  // namespace quadlaw
