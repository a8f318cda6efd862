#ifndef PTSCATTER_ERRORS_HPP
#define PTSCATTER_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "ptscatter/types.hpp"

namespace ptscatter {

/// A precondition of an operation was violated by the caller.
struct ContractViolation : std::invalid_argument {
  explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// |m22| fell below the resolvable threshold: transmission and reflections
/// diverge at this wavenumber.
struct SpectralSingularityError : std::runtime_error {
  Wavenumber k;
  double m22_abs;
  SpectralSingularityError(const std::string& what, Wavenumber k_at, double residual)
      : std::runtime_error(what), k(k_at), m22_abs(residual) {}
};

/// The adaptive integrator could not meet its tolerance within the step budget.
struct IntegrationFailure : std::runtime_error {
  Wavenumber k;
  double x_reached;
  double last_step;
  std::size_t steps_taken;
  IntegrationFailure(const std::string& what, Wavenumber k_at, double x, double h,
                     std::size_t steps)
      : std::runtime_error(what), k(k_at), x_reached(x), last_step(h), steps_taken(steps) {}
};

/// Zero counting by the argument principle did not settle to a consistent
/// winding number.
struct SearchFailure : std::runtime_error {
  explicit SearchFailure(const std::string& what) : std::runtime_error(what) {}
};

/// The map fixes every point of the sphere (matrix is +-identity).
struct EverywhereFixedError : std::runtime_error {
  explicit EverywhereFixedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ptscatter

#endif
