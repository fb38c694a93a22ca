// quadlaw: experiments on the four-component triangular conservation-law
// system. Every subcommand reads a key = value config file and writes CSV
// artifacts next to the configured output prefix.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "quadlaw/config.hpp"
#include "quadlaw/experiments.hpp"

namespace {

// Exit statuses, one per failure mode.
enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kBadInput = 3,
  kAccuracy = 4,
  kCfl = 5,
  kUnsupported = 6,
  kIo = 7,
};

int run(quadlaw::ExperimentKind kind, const std::string& config_path,
        const std::string& out_override) {
  using namespace quadlaw;
  try {
    ExperimentConfig cfg = parse_config_file(config_path, kind);
    if (!out_override.empty()) cfg.out = out_override;
    const RunSummary summary = run_experiment(cfg);
    std::cout << summary.note << '\n';
    for (const auto& p : summary.artifacts)
      std::cout << "wrote " << p.string() << '\n';
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const UnsupportedCase& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const CflError& e) {
    std::cerr << "cfl error: " << e.what() << '\n';
    return kCfl;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy failure: " << e.what() << '\n';
    return kAccuracy;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "quadlaw: exact viscous solutions, distributional Riemann solutions, "
      "and weak-convergence measurements for a 4-component triangular "
      "conservation-law system"};
  app.require_subcommand(1);

  struct Sub {
    quadlaw::ExperimentKind kind;
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {quadlaw::ExperimentKind::ExactEval, "exact-eval",
       "sample the exact viscous solution on a grid"},
      {quadlaw::ExperimentKind::FdRun, "fd-run",
       "run the finite-difference solver and export snapshots"},
      {quadlaw::ExperimentKind::Compare, "compare",
       "sup-norm distance between the exact formula and the fd solver"},
      {quadlaw::ExperimentKind::Riemann, "riemann",
       "closed-form distributional Riemann solution tables"},
      {quadlaw::ExperimentKind::Measure, "measure",
       "delta/delta' moments or weak residuals of an eps-family"},
      {quadlaw::ExperimentKind::EntropyCheck, "entropy-check",
       "shadow-wave entropy admissibility sequences"},
      {quadlaw::ExperimentKind::Macroscopic, "macroscopic",
       "slow-viscosity construction with sup-norm bound probes"},
      {quadlaw::ExperimentKind::Moderateness, "moderateness",
       "growth exponent of an eps-family's sup norm"},
  };

  int rc = kUsage;
  for (const Sub& s : subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    auto config_path = std::make_shared<std::string>();
    auto out_override = std::make_shared<std::string>();
    cmd->add_option("-c,--config", *config_path, "config file (key = value sections)")
        ->required();
    cmd->add_option("-o,--out", *out_override, "override the artifact prefix");
    cmd->callback([&rc, kind = s.kind, config_path, out_override]() {
      rc = run(kind, *config_path, *out_override);
    });
  }

  CLI11_PARSE(app, argc, argv);
  return rc;
}
