#ifndef PTSCATTER_POTENTIAL_HPP
#define PTSCATTER_POTENTIAL_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ptscatter/transfer.hpp"
#include "ptscatter/types.hpp"

namespace ptscatter {

// Complex potentials U(x) with compact support, in the reduced units of the
// stationary equation  psi'' = (U(x) - k^2) psi.  U is identically zero
// outside [x_min, x_max].

/// One constant piece U = u on [x0, x1).
struct Segment {
  double x0;
  double x1;
  Complex u;
};

/// Constant slab u over a width d starting at x0.
struct SlabFamily {
  Complex u;
  double d;
  double x0 = 0.0;
};

/// Balanced dimer: u = a + ib on [-d, 0), u = a - ib on [0, d).
/// Conjugate-even by construction, U*(-x) = U(x).
struct PTDimerFamily {
  double a;
  double b;
  double d;
};

/// Complex exponential grating U(x) = alpha e^{2 i beta x} on [-L/2, L/2].
struct ExpGratingFamily {
  Complex alpha;
  double beta;
  double length;
};

using AnalyticFamily = std::variant<SlabFamily, PTDimerFamily, ExpGratingFamily>;

/// Sampled profile: strictly increasing grid, piecewise-linear in between,
/// zero outside [x.front(), x.back()].
struct SampledProfile {
  std::vector<double> x;
  std::vector<Complex> u;
};

struct PiecewiseConstant {
  std::vector<Segment> segments;  // contiguous, left to right
};

/// A complex potential profile in one of three representations.
class PotentialSpec {
 public:
  using Variant = std::variant<PiecewiseConstant, SampledProfile, AnalyticFamily>;

  /// Validates contiguity / monotonicity / positive widths; throws
  /// ContractViolation on malformed input.
  static PotentialSpec piecewise(std::vector<Segment> segments);
  static PotentialSpec sampled(std::vector<double> x, std::vector<Complex> u);
  static PotentialSpec analytic(AnalyticFamily family);

  /// Convenience: one constant slab.
  static PotentialSpec slab(Complex u, double d, double x0 = 0.0);

  const Variant& variant() const { return variant_; }
  double support_min() const { return support_min_; }
  double support_max() const { return support_max_; }
  bool empty_support() const { return support_max_ <= support_min_; }

  /// Pointwise evaluation; zero outside the support.
  Complex value_at(double x) const;

  /// Evaluation on one smooth interval (lo, hi) between breakpoints: the
  /// active branch is selected by the interval midpoint and evaluated at x,
  /// so x = hi yields the left limit rather than the next piece's value.
  Complex value_on_interval(double x, double lo, double hi) const;

  /// x-positions where U or its slope may jump; integration restarts there.
  std::vector<double> breakpoints() const;

 private:
  explicit PotentialSpec(Variant v);
  Variant variant_;
  double support_min_ = 0.0;
  double support_max_ = 0.0;
};

/// Reads a sampled profile from three-column text (x, Re U, Im U), columns
/// separated by commas or whitespace; an optional header line and '#' comment
/// lines are skipped.  Throws ContractViolation on malformed rows.
PotentialSpec read_sampled_profile(std::istream& in);
PotentialSpec read_sampled_profile_file(const std::string& path);

struct IntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  std::size_t max_steps = 1000000;
};

/// Transfer matrix of a constant slab u on [x0, x0 + d], in closed form.
/// With q^2 = k^2 - u the entries depend on q only through cos(qd) and
/// sin(qd)/q, both even in q, so the square-root branch is immaterial and
/// evanescent slabs need no special casing.  det = 1 analytically.
/// Throws ContractViolation for d <= 0 or k = 0.
TransferMatrix slab_transfer(Complex u, double d, Wavenumber k, double x0 = 0.0);

/// Transfer matrix of an arbitrary profile.  Piecewise-constant specs multiply
/// slab_transfer factors; sampled and analytic specs integrate the wave
/// equation (see integrate_transfer).  Requires Re k > 0 for real k use; any
/// nonzero complex k is accepted for bound-state work.
TransferMatrix transfer_of_potential(const PotentialSpec& p, Wavenumber k,
                                     const IntegrationOptions& opts = {});

/// Always takes the ODE route, regardless of representation: integrates
/// psi'' = (U - k^2) psi for two independent initial conditions with an
/// adaptive embedded Runge-Kutta scheme and converts the fundamental-solution
/// propagator to plane-wave amplitude form.  Serves as the independent route
/// against the closed-form slab algebra.
/// Throws IntegrationFailure when the step budget is exhausted.
TransferMatrix integrate_transfer(const PotentialSpec& p, Wavenumber k,
                                  const IntegrationOptions& opts = {});

/// Transmission amplitudes for left and for right incidence, each from its own
/// boundary-value solve (outgoing-wave data on one edge, integrated across the
/// support).  The two solves share no intermediate results with each other or
/// with the transfer-matrix assembly.
std::pair<Complex, Complex> direct_transmissions(const PotentialSpec& p, Wavenumber k,
                                                 const IntegrationOptions& opts = {});

/// The conjugate-reflected profile x -> conj(U(-x)).  An exact involution.
PotentialSpec pt_reflect_potential(const PotentialSpec& p);

/// True iff the profile equals its conjugate reflection within tol in sup
/// norm, checked on a grid refined at all breakpoints of both profiles.
bool is_pt_symmetric_potential(const PotentialSpec& p, double tol = 1e-10);

}  // namespace ptscatter

#endif
