#pragma once

#include <stdexcept>

namespace quadlaw {

// Error taxonomy. The CLI maps each type to a distinct exit status; library
// code never reports a degraded result silently.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or non-finite inputs (data, grids, parameters).
struct InvalidInput : Error {
  using Error::Error;
};

// A quadrature did not reach its tolerance within the panel budget.
struct AccuracyError : Error {
  using Error::Error;
};

// Time step rejected by the stability bound before any state was touched.
struct CflError : Error {
  using Error::Error;
};

// Riemann configurations this project does not construct (shock / contact).
struct UnsupportedCase : Error {
  using Error::Error;
};

// Experiment configuration problems.
struct ConfigError : Error {
  using Error::Error;
};

// Artifact read/write failures.
struct IoError : Error {
  using Error::Error;
};

}  // namespace quadlaw
