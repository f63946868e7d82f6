#pragma once

#include <stdexcept>
#include <string>

namespace ldg {

/// Precondition on an argument was violated (non-unit director, bad range, ...).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Tensor lies on (or numerically near) the biaxial cone, where the
/// projection onto the vacuum manifold is undefined.
struct DegenerateTensor : std::domain_error {
  using std::domain_error::domain_error;
};

/// Tensor norm below the floor where the field potential is differentiable.
struct NearZeroTensor : std::domain_error {
  using std::domain_error::domain_error;
};

/// Field does not satisfy the Dirichlet / axis invariants.
struct BoundaryViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed config file or flag combination.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ldg
