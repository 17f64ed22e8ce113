#pragma once

#include <stdexcept>
#include <string>

namespace bandlab {

// Base class for all recoverable bandlab failures. The CLI maps each
// subclass to a distinct exit code (see cli.hpp).
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested manifold kind has no closed-form eigenbasis in the catalogue.
class unimplemented_manifold_error : public error {
 public:
  using error::error;
};

// Ball radius outside the regime where the closed-form volume is valid.
class radius_too_large_error : public error {
 public:
  using error::error;
};

// Point configuration is degenerate where a nonsingular one is required
// (duplicate nodes in a Riesz Gram, dependent rows in a Vandermonde).
class singular_configuration_error : public error {
 public:
  using error::error;
};

// A computed quantity violates a mathematical certainty (eigenvalue of a
// concentration operator outside [0,1]); signals quadrature failure.
class numerical_integrity_error : public error {
 public:
  using error::error;
};

// Derived bandwidth fell below 1, where no eigenbasis is defined.
class bandwidth_too_small_error : public error {
 public:
  using error::error;
};

// A triangular family has no point set at the requested level L.
class missing_level_error : public error {
 public:
  using error::error;
};

// Greedy Fekete start could not reach full rank on the candidate set.
class enlarge_candidates_error : public error {
 public:
  using error::error;
};

// Malformed configuration, flags, or input files.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace bandlab
