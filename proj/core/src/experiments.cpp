#include "quadlaw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "quadlaw/csv.hpp"
#include "quadlaw/entropy.hpp"
#include "quadlaw/mollifier.hpp"

namespace quadlaw {

double beta_schedule(double K, double eps) {
  if (!(K > 0.0)) throw InvalidInput("beta_schedule: K must be positive");
  if (!(eps > 0.0 && eps < 1.0))
    throw InvalidInput("beta_schedule: eps must lie in (0,1)");
  const double denom = std::log(1.0 / std::sqrt(eps));
  return (K / denom) * (K / denom);
}

namespace {

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double sup_abs_diff(const std::vector<double>& v, double h) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    m = std::max(m, std::abs(v[i + 1] - v[i - 1]) / (2.0 * h));
  return m;
}

}  // namespace

std::vector<MacroscopicRow> macroscopic_run(const DataSpec& data, double K,
                                            std::span<const double> eps_list,
                                            const GridSection& grid,
                                            double T) {
  if (eps_list.empty()) throw InvalidInput("macroscopic_run: empty eps list");
  if (!(T > 0.0)) throw InvalidInput("macroscopic_run: T must be positive");
  DataSpec raw = data;
  raw.mollify_radius = 0.0;
  const PiecewiseInitialData base = raw.build();

  std::vector<MacroscopicRow> rows;
  for (double eps : eps_list) {
    const double beta = beta_schedule(K, eps);
    const MollifierSpec smooth_uvw(beta);
    const MollifierSpec smooth_z(eps);
    PiecewiseInitialData d{mollify(base.u, smooth_uvw),
                           mollify(base.v, smooth_uvw),
                           mollify(base.w, smooth_uvw),
                           mollify(base.z, smooth_z)};
    const Viscosities nu{{beta / 2.0, beta / 2.0, beta / 2.0, eps}};
    std::vector<double> snaps;
    for (int i = 1; i < 8; ++i) snaps.push_back(T * i / 8.0);
    const FDRunResult res = run(d, grid.to_grid(), nu, T, snaps);

    MacroscopicRow row;
    row.eps = eps;
    row.beta = beta;
    const double h = grid.to_grid().h();
    auto absorb = [&](const FDState& s) {
      row.sup_z = std::max(row.sup_z, sup_abs(s.q[3]));
      row.sup_zx = std::max(row.sup_zx, sup_abs_diff(s.q[3], h));
    };
    for (const FDState& s : res.snapshots) absorb(s);
    absorb(res.state);
    row.sup_z_sqrt_eps = row.sup_z * std::sqrt(eps);
    row.sup_zx_eps = row.sup_zx * eps;
    rows.push_back(row);
  }
  return rows;
}

ModeratenessResult moderateness_probe(const EpsilonFamily& fam, int j,
                                      std::span<const double> eps_list,
                                      const SampleSection& probe_grid) {
  if (j != 0 && j != 1)
    throw InvalidInput("moderateness_probe: j must be 0 or 1");
  if (eps_list.size() < 2)
    throw InvalidInput("moderateness_probe: need at least two eps values");
  probe_grid.to_grid().validate();

  ModeratenessResult res;
  res.j = j;
  for (double eps : eps_list) {
    double sup = 0.0;
    for (int it = 0; it < probe_grid.nt; ++it) {
      const double t = probe_grid.to_grid().t(it);
      const double scale =
          fam.layer_scale ? fam.layer_scale(eps, t) : 1e-3;
      const double dx = std::max(scale / 8.0, 1e-6);
      for (int ix = 0; ix < probe_grid.nx; ++ix) {
        const double x = probe_grid.to_grid().x(ix);
        double val;
        if (j == 0) {
          val = fam.eval(eps, x, t).z;
        } else {
          val = (fam.eval(eps, x + dx, t).z - fam.eval(eps, x - dx, t).z) /
                (2.0 * dx);
        }
        if (!std::isfinite(val))
          throw InvalidInput("moderateness_probe: non-finite sample");
        sup = std::max(sup, std::abs(val));
      }
    }
    res.eps.push_back(eps);
    res.sup_norm.push_back(sup);
  }
  std::vector<double> xs(res.eps.size()), ys(res.eps.size());
  for (std::size_t i = 0; i < res.eps.size(); ++i) {
    xs[i] = std::log(1.0 / res.eps[i]);
    ys[i] = std::log(std::max(res.sup_norm[i], 1e-300));
  }
  const LineFit f = fit_line(xs, ys);
  res.p = f.slope;
  res.fit_residual = f.residual;
  return res;
}

EpsilonFamily constant_probe_family(double value) {
  EpsilonFamily f;
  f.eval = [value](double, double, double) {
    return FieldSample{value, value, value, value};
  };
  f.eps_min = 0.0;
  f.eps_max = 1.0;
  f.layer_scale = [](double, double) { return 1.0; };
  return f;
}

EpsilonFamily scaled_bump_probe_family() {
  EpsilonFamily f;
  f.eval = [](double eps, double x, double) {
    const double q = 1.0 - x * x;
    const double b = (q <= 1e-12) ? 0.0 : std::exp(1.0 - 1.0 / q);
    const double v = b / eps;
    return FieldSample{v, v, v, v};
  };
  f.eps_min = 0.0;
  f.eps_max = 1.0;
  f.layer_scale = [](double, double) { return 0.25; };
  return f;
}

EpsilonFamily viscous_mollified_riemann_family(const RiemannData& rd,
                                               std::span<const double> eps_list,
                                               const QuadratureSpec& quad,
                                               double t_min) {
  rd.validate();
  auto prims = std::make_shared<std::vector<std::pair<double, Primitives>>>();
  DataSpec spec;
  spec.kind = DataSpec::Kind::Riemann;
  spec.rd = rd;
  for (double eps : eps_list) {
    DataSpec s = spec;
    s.mollify_radius = eps;
    prims->emplace_back(eps, build_primitives(s.build(), quad));
  }
  EpsilonFamily f;
  f.eval = [prims, quad, t_min](double eps, double x, double t) {
    for (const auto& [e, p] : *prims)
      if (std::abs(e - eps) <= 1e-12 * e) {
        const ViscousParams vp{eps, quad, t_min};
        return eval_fields(p, vp, x, t);
      }
    throw InvalidInput(
        "viscous_mollified_riemann_family: eps not in the prepared list");
  };
  f.eps_min = *std::min_element(eps_list.begin(), eps_list.end());
  f.eps_max = *std::max_element(eps_list.begin(), eps_list.end());
  f.layer_scale = [t_min](double eps, double t) {
    return std::sqrt(eps * std::max(t, t_min));
  };
  f.line_speeds = {rd.u_l, rd.u_r};
  return f;
}

namespace {

RiemannData require_riemann(const ExperimentConfig& cfg, const char* who) {
  if (cfg.data.kind != DataSpec::Kind::Riemann)
    throw ConfigError(std::string(who) + ": data kind must be riemann");
  return cfg.data.rd;
}

EntropyPair entropy_from_config(const ExperimentConfig& cfg) {
  std::function<double(double)> eta, etap;
  if (cfg.eta_bar == "half_u2") {
    eta = [](double u) { return 0.5 * u * u; };
    etap = [](double u) { return u; };
  } else if (cfg.eta_bar == "u2") {
    eta = [](double u) { return u * u; };
    etap = [](double u) { return 2.0 * u; };
  } else {
    eta = [](double u) { return std::cosh(u); };
    etap = [](double u) { return std::sinh(u); };
  }
  const RiemannData rd = cfg.data.rd;
  const double lo = std::min({rd.u_l, rd.u_r, 0.0}) - 2.0;
  const double hi = std::max({rd.u_l, rd.u_r, 0.0}) + 2.0;
  return make_entropy_pair(eta, etap, cfg.c1, cfg.c2, cfg.c3, {lo, hi},
                           cfg.quad.to_spec());
}

std::filesystem::path artifact(const ExperimentConfig& cfg,
                               const std::string& suffix) {
  return std::filesystem::path(cfg.out + "_" + suffix + ".csv");
}

void write_fields_csv(csv::Writer& wr, double t, double x,
                      const FieldSample& s) {
  wr.row({csv::num(t), csv::num(x), csv::num(s.u), csv::num(s.v),
          csv::num(s.w), csv::num(s.z)});
}

RunSummary run_exact_eval(const ExperimentConfig& cfg) {
  const Primitives prims = build_primitives(cfg.data.build(), cfg.quad.to_spec());
  const ViscousParams vp{cfg.gamma, cfg.quad.to_spec(), cfg.quad.t_min};
  const GridSpec grid = cfg.sample.to_grid();
  const auto table = sample_grid(prims, vp, grid);

  csv::Writer wr(artifact(cfg, "fields"));
  wr.header({"t", "x", "u", "v", "w", "z"});
  for (int i = 0; i < grid.nt; ++i)
    for (int j = 0; j < grid.nx; ++j)
      write_fields_csv(wr, grid.t(i), grid.x(j),
                       table[static_cast<std::size_t>(i) * grid.nx + j]);
  return {{wr.path()}, "exact-eval: " + std::to_string(table.size()) + " samples"};
}

RunSummary run_fd(const ExperimentConfig& cfg) {
  const FDRunResult res =
      run(cfg.data.build(), cfg.grid.to_grid(), Viscosities::from_gamma(cfg.gamma),
          cfg.T, cfg.times);

  csv::Writer wr(artifact(cfg, "snapshots"));
  wr.header({"t", "x", "u", "v", "w", "z"});
  const FDGrid grid = cfg.grid.to_grid();
  auto dump = [&](const FDState& s) {
    for (int i = 0; i < grid.n_points(); ++i)
      write_fields_csv(wr, s.time, grid.x(i),
                       {s.q[0][i], s.q[1][i], s.q[2][i], s.q[3][i]});
  };
  for (const FDState& s : res.snapshots) dump(s);
  dump(res.state);

  csv::Writer cons(artifact(cfg, "conservation"));
  cons.header({"component", "defect"});
  for (int k = 0; k < 4; ++k)
    cons.row({kComponentNames[k], csv::num(res.conservation_defect[k])});

  std::ostringstream note;
  note << "fd-run: " << res.steps << " steps, max conservation defect "
       << csv::num(*std::max_element(res.conservation_defect.begin(),
                                     res.conservation_defect.end()));
  return {{wr.path(), cons.path()}, note.str()};
}

RunSummary run_compare(const ExperimentConfig& cfg) {
  const PiecewiseInitialData data = cfg.data.build();
  const Primitives prims = build_primitives(data, cfg.quad.to_spec());
  const ViscousParams vp{cfg.gamma, cfg.quad.to_spec(), cfg.quad.t_min};
  const FDGrid grid = cfg.grid.to_grid();
  const FDRunResult res =
      run(data, grid, Viscosities::from_gamma(cfg.gamma), cfg.T);

  const int stride = std::max(1, grid.n_points() / 4000);
  std::array<double, 4> sup{};
  for (int i = 0; i < grid.n_points(); i += stride) {
    const FieldSample exact = eval_fields(prims, vp, grid.x(i), cfg.T);
    for (int k = 0; k < 4; ++k)
      sup[k] = std::max(sup[k], std::abs(exact[k] - res.state.q[k][i]));
  }

  csv::Writer wr(artifact(cfg, "compare"));
  wr.header({"component", "sup_error"});
  for (int k = 0; k < 4; ++k)
    wr.row({kComponentNames[k], csv::num(sup[k])});
  std::ostringstream note;
  note << "compare: max sup error "
       << csv::num(*std::max_element(sup.begin(), sup.end()));
  return {{wr.path()}, note.str()};
}

RunSummary run_riemann(const ExperimentConfig& cfg) {
  const RiemannData rd = require_riemann(cfg, "riemann");
  DistributionalSolution sol;
  if (cfg.solution == "vvl")
    sol = vanishing_viscosity_limit(rd);
  else if (cfg.solution == "shadow")
    sol = shadow_wave(rd).second;
  else
    sol = volpert_solution(rd, cfg.volpert_c);

  auto open = [](const std::filesystem::path& p) {
    if (p.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream os(p, std::ios::binary);
    if (!os) throw IoError("riemann: cannot open " + p.string());
    return os;
  };
  {
    std::ofstream bg = open(artifact(cfg, "background"));
    write_background_table(bg, rd);
  }
  {
    std::ofstream amp = open(artifact(cfg, "amplitudes"));
    write_amplitude_table(amp, sol, cfg.times);
  }

  return {{artifact(cfg, "background"), artifact(cfg, "amplitudes")},
          "riemann: " + cfg.solution + " solution, " +
              std::string(to_string(classify(rd)))};
}

EpsilonFamily family_from_config(const ExperimentConfig& cfg,
                                 const RiemannData& rd) {
  if (cfg.family == "shadow") return as_epsilon_family(shadow_wave(rd).first);
  auto prims = std::make_shared<Primitives>(
      build_primitives(cfg.data.build(), cfg.quad.to_spec()));
  return viscous_family(prims, cfg.quad.to_spec(), {rd.u_l, rd.u_r},
                        cfg.quad.t_min);
}

RunSummary run_measure(const ExperimentConfig& cfg) {
  const RiemannData rd = require_riemann(cfg, "measure");
  const EpsilonFamily fam = family_from_config(cfg, rd);
  std::vector<double> eps = cfg.eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());

  if (cfg.measure_kind == "residual") {
    const TestFunction phi =
        bump(cfg.bump.x0, cfg.bump.t0, cfg.bump.rx, cfg.bump.rt);
    csv::Writer wr(artifact(cfg, "residuals"));
    wr.header({"epsilon", "R1", "R2", "R3", "R4"});
    for (double e : eps) {
      const auto r = weak_residual_family(fam, phi, e, cfg.quad.to_spec());
      wr.row({csv::num(e), csv::num(r[0]), csv::num(r[1]), csv::num(r[2]),
              csv::num(r[3])});
    }
    return {{wr.path()}, "measure: residual sweep over " +
                             std::to_string(eps.size()) + " eps values"};
  }

  const DistributionalSolution ref = volpert_solution(rd, 0.0);
  const double speed = (cfg.line == "left") ? rd.u_l : rd.u_r;
  const int comp = component_index(cfg.component[0]);

  csv::Writer wr(artifact(cfg, "moments"));
  wr.header({"epsilon", "component", "line_speed", "t", "M0", "M1",
             "assumed_order"});
  std::vector<double> m0s, m1s;
  for (double e : eps) {
    const MomentReport rep = measure_moments(fam, ref, comp, speed, cfg.t,
                                             cfg.window, e, cfg.quad.to_spec());
    m0s.push_back(rep.m0);
    m1s.push_back(rep.m1);
    wr.row({csv::num(e), cfg.component, csv::num(speed), csv::num(cfg.t),
            csv::num(rep.m0), csv::num(rep.m1), csv::num(cfg.order)});
  }
  if (eps.size() >= 2) {
    const std::size_t n = eps.size();
    const double m0x = richardson2(m0s[n - 2], m0s[n - 1], eps[n - 2],
                                   eps[n - 1], cfg.order);
    const double m1x = richardson2(m1s[n - 2], m1s[n - 1], eps[n - 2],
                                   eps[n - 1], cfg.order);
    wr.row({csv::num(0.0), cfg.component, csv::num(speed), csv::num(cfg.t),
            csv::num(m0x), csv::num(m1x), csv::num(cfg.order)});
  }
  return {{wr.path()},
          "measure: moments of " + cfg.component + " at the " + cfg.line +
              " line (epsilon = 0 row is the order-" + csv::num(cfg.order) +
              " extrapolation)"};
}

RunSummary run_entropy(const ExperimentConfig& cfg) {
  const RiemannData rd = require_riemann(cfg, "entropy-check");
  const auto [fam, limit] = shadow_wave(rd);
  (void)limit;
  const EntropyPair pair = entropy_from_config(cfg);
  std::vector<double> eps = cfg.eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  const AdmissibilityReport rep =
      admissibility_report(fam, pair, eps, cfg.entropy_tol);

  csv::Writer wr(artifact(cfg, "entropy"));
  wr.comment("layer entropy sum convention: eta(layer1) + eta(layer2)");
  wr.comment("verdict: linear-fit intercepts against eps, tol = " +
             csv::num(cfg.entropy_tol));
  wr.header({"line_speed", "epsilon", "term1", "term2", "verdict"});
  for (const AdmissibilityRow& row : rep.rows) {
    const auto& line = *std::find_if(
        rep.lines.begin(), rep.lines.end(),
        [&](const AdmissibilityLine& l) { return l.speed == row.line_speed; });
    wr.row({csv::num(row.line_speed), csv::num(row.eps), csv::num(row.term1),
            csv::num(row.term2), line.verdict});
  }
  std::ostringstream note;
  note << "entropy-check: ";
  for (const auto& l : rep.lines)
    note << "line " << csv::num(l.speed) << " -> " << l.verdict << "; ";
  return {{wr.path()}, note.str()};
}

RunSummary run_macroscopic(const ExperimentConfig& cfg) {
  std::vector<double> eps = cfg.eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  const auto rows = macroscopic_run(cfg.data, cfg.K, eps, cfg.grid, cfg.T);
  csv::Writer wr(artifact(cfg, "macroscopic"));
  wr.header({"epsilon", "beta", "sup_z", "sup_zx", "sup_z_sqrt_eps",
             "sup_zx_eps"});
  for (const MacroscopicRow& r : rows)
    wr.row({csv::num(r.eps), csv::num(r.beta), csv::num(r.sup_z),
            csv::num(r.sup_zx), csv::num(r.sup_z_sqrt_eps),
            csv::num(r.sup_zx_eps)});
  return {{wr.path()},
          "macroscopic: " + std::to_string(rows.size()) + " eps values"};
}

RunSummary run_moderateness(const ExperimentConfig& cfg) {
  EpsilonFamily fam;
  if (cfg.probe_family == "constant")
    fam = constant_probe_family(1.0);
  else if (cfg.probe_family == "scaled_bump")
    fam = scaled_bump_probe_family();
  else {
    const RiemannData rd = require_riemann(cfg, "moderateness");
    fam = viscous_mollified_riemann_family(rd, cfg.eps_list,
                                           cfg.quad.to_spec(), cfg.quad.t_min);
  }
  std::vector<double> eps = cfg.eps_list;
  std::sort(eps.begin(), eps.end(), std::greater<>());

  csv::Writer wr(artifact(cfg, "moderateness"));
  wr.header({"j", "epsilon", "sup_norm", "fitted_p", "fit_residual"});
  std::ostringstream note;
  note << "moderateness:";
  for (int j : cfg.j_list) {
    const ModeratenessResult res = moderateness_probe(fam, j, eps, cfg.sample);
    for (std::size_t i = 0; i < res.eps.size(); ++i)
      wr.row({csv::num(j), csv::num(res.eps[i]), csv::num(res.sup_norm[i]),
              csv::num(res.p), csv::num(res.fit_residual)});
    note << " j=" << j << " p=" << csv::num(res.p) << " (residual "
         << csv::num(res.fit_residual) << ")";
  }
  return {{wr.path()}, note.str()};
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::ExactEval: return run_exact_eval(cfg);
    case ExperimentKind::FdRun: return run_fd(cfg);
    case ExperimentKind::Compare: return run_compare(cfg);
    case ExperimentKind::Riemann: return run_riemann(cfg);
    case ExperimentKind::Measure: return run_measure(cfg);
    case ExperimentKind::EntropyCheck: return run_entropy(cfg);
    case ExperimentKind::Macroscopic: return run_macroscopic(cfg);
    default: return run_moderateness(cfg);
  }
}

}  // namespace quadlaw
