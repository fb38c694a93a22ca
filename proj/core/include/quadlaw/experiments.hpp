#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "quadlaw/config.hpp"
#include "quadlaw/distributions.hpp"

namespace quadlaw {

// beta(eps) = (K / log(1/sqrt(eps)))^2, the slow viscosity schedule of the
// macroscopic construction.
double beta_schedule(double K, double eps);

struct MacroscopicRow {
  double eps = 0, beta = 0;
  double sup_z = 0, sup_zx = 0;
  double sup_z_sqrt_eps = 0, sup_zx_eps = 0;
};

// For each eps: mollify (u,v,w) at radius beta(eps) and z at radius eps,
// run the solver with viscosities (beta/2, beta/2, beta/2, eps), and record
// the sup norms of z and z_x with their expected-bounded rescalings.
std::vector<MacroscopicRow> macroscopic_run(const DataSpec& data, double K,
                                            std::span<const double> eps_list,
                                            const GridSection& grid, double T);

struct ModeratenessResult {
  int j = 0;              // derivative order probed
  double p = 0;           // fitted growth exponent: sup ~ eps^{-p}
  double fit_residual = 0;
  std::vector<double> eps;
  std::vector<double> sup_norm;
};

// Least-squares slope of log sup-norm against log(1/eps) over a probe grid.
// Derivatives are centered differences at the family's resolved scale.
ModeratenessResult moderateness_probe(const EpsilonFamily& fam, int j,
                                      std::span<const double> eps_list,
                                      const SampleSection& probe_grid);

// Probe families for the moderateness experiment.
EpsilonFamily constant_probe_family(double value);
EpsilonFamily scaled_bump_probe_family();  // (1/eps) * bump, growth p = 1
EpsilonFamily viscous_mollified_riemann_family(const RiemannData& rd,
                                               std::span<const double> eps_list,
                                               const QuadratureSpec& quad,
                                               double t_min);

struct RunSummary {
  std::vector<std::filesystem::path> artifacts;
  std::string note;
};

// Executes one experiment and writes its CSV artifacts. Deterministic:
// identical configs yield byte-identical files.
RunSummary run_experiment(const ExperimentConfig& cfg);

}  // namespace quadlaw
