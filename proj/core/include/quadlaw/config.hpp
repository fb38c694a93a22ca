#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quadlaw/fd_solver.hpp"
#include "quadlaw/hopf_cole.hpp"
#include "quadlaw/riemann.hpp"

namespace quadlaw {

enum class ExperimentKind {
  ExactEval,
  FdRun,
  Compare,
  Riemann,
  Measure,
  EntropyCheck,
  Macroscopic,
  Moderateness,
};

const char* to_string(ExperimentKind k);
std::optional<ExperimentKind> experiment_kind_from(const std::string& name);

// Initial data selection: a Riemann step, a constant state, or a sum of
// Gaussian pulses; optionally smoothed by the Friedrichs mollifier.
struct DataSpec {
  enum class Kind { Riemann, Constant, Gaussians, Zero };
  Kind kind = Kind::Riemann;
  RiemannData rd{-1, 2, 1, 0, 1, 2, 1, 0};
  std::array<double, 4> value{};                    // Constant
  std::array<double, 4> amp{0.3, 0.4, 0.2, 0.1};    // Gaussians
  std::array<double, 4> center{0.0, 0.5, 0.0, -0.3};
  std::array<double, 4> width{1.0, 1.0, 1.4, 1.0};
  double mollify_radius = 0.0;  // 0 = none

  PiecewiseInitialData build() const;
  bool operator==(const DataSpec&) const = default;
};

struct GridSection {
  double x_min = -8.0, x_max = 8.0;
  int n_cells = 2000;
  double safety = 0.9;
  bool operator==(const GridSection&) const = default;
  FDGrid to_grid() const { return {x_min, x_max, n_cells, safety}; }
};

struct QuadSection {
  double rel_tol = 1e-10;
  int max_panels = 4096;
  double window_safety = 1.25;
  double t_min = 1e-6;
  bool operator==(const QuadSection&) const = default;
  QuadratureSpec to_spec() const { return {rel_tol, max_panels, window_safety}; }
};

struct SampleSection {
  double x_min = -3.0, x_max = 3.0;
  int nx = 121;
  double t_min = 0.1, t_max = 1.0;
  int nt = 10;
  bool operator==(const SampleSection&) const = default;
  GridSpec to_grid() const { return {x_min, x_max, nx, t_min, t_max, nt}; }
};

struct BumpSection {
  double x0 = -1.0, t0 = 1.0, rx = 0.8, rt = 0.5;
  bool operator==(const BumpSection&) const = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ExactEval;
  std::string out = "artifacts/run";
  DataSpec data{};
  QuadSection quad{};
  GridSection grid{};
  SampleSection sample{};
  BumpSection bump{};

  double gamma = 0.5;
  double T = 0.5;
  std::vector<double> eps_list{1e-2, 3e-3, 1e-3};
  std::vector<double> times{1.0};

  // measure
  std::string family = "viscous";        // viscous | shadow
  std::string measure_kind = "moments";  // moments | residual
  std::string line = "left";             // left | right
  std::string component = "w";
  double t = 1.0;
  double window = 0.4;
  double order = 0.5;  // assumed extrapolation order in the family parameter

  // riemann
  std::string solution = "volpert";  // volpert | vvl | shadow
  double volpert_c = 0.0;

  // entropy-check
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
  std::string eta_bar = "half_u2";  // half_u2 | u2 | cosh
  double entropy_tol = 1e-8;

  // macroscopic
  double K = 1.0;

  // moderateness
  std::string probe_family = "viscous_mollified";  // | constant | scaled_bump
  std::vector<int> j_list{0, 1};

  bool operator==(const ExperimentConfig&) const = default;
};

// key = value sections; '#' starts a comment. Unknown sections or keys are
// rejected. `kind` may come from the file or from the caller (CLI
// subcommand); when both are present they must agree.
ExperimentConfig parse_config(std::istream& in,
                              std::optional<ExperimentKind> kind_hint = {});
ExperimentConfig parse_config_file(const std::string& path,
                                   std::optional<ExperimentKind> kind_hint = {});
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace quadlaw
