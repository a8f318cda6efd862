#ifndef PTSCATTER_MOEBIUS_HPP
#define PTSCATTER_MOEBIUS_HPP

#include <optional>
#include <string>

#include "ptscatter/transfer.hpp"
#include "ptscatter/types.hpp"

namespace ptscatter {

// Transfer matrices act on the Riemann sphere by fractional-linear maps and,
// through the Poincare extension, as orientation-preserving isometries of
// hyperbolic upper half-space {(w, z) : w in C, z > 0}.  Scalar multiples of a
// matrix act identically, so everything here lives in PSL(2, C).

/// Point of the Riemann sphere: a complex number or the point at infinity.
struct RiemannPoint {
  Complex w{0.0, 0.0};
  bool infinite = false;

  static RiemannPoint infinity() { return RiemannPoint{Complex{0.0, 0.0}, true}; }
  static RiemannPoint of(Complex v) { return RiemannPoint{v, false}; }
};

/// Chordal metric on the sphere (bounded by 2, exact at infinity); the right
/// notion of closeness when one side may be near or at infinity.
double chordal_distance(const RiemannPoint& p, const RiemannPoint& q);

/// Interior point of hyperbolic half-space: boundary coordinate w, height z > 0.
struct HalfSpacePoint {
  Complex w{0.0, 0.0};
  double z = 1.0;
};

enum class MoebiusType { Identity, Elliptic, Hyperbolic, Parabolic, Loxodromic };

std::string to_string(MoebiusType type);

/// Trace classification of the induced map, with fixed points and the
/// parameter of the conjugated canonical form:
///   elliptic   w -> w e^{i theta}   (theta real, trace = 2 cos(theta/2)),
///   hyperbolic w -> w e^{xi}        (xi > 0,     trace = 2 cosh(xi/2)),
///   parabolic  w -> w + lambda      (lambda complex),
///   loxodromic w -> mu^2 w          (canonical_parameter = multiplier mu^2,
///                                    |mu| >= 1; complex trace, beyond the
///                                    real-trace taxonomy).
struct MoebiusClassification {
  MoebiusType type;
  Complex trace_sq;
  RiemannPoint fixed_first;
  std::optional<RiemannPoint> fixed_second;
  Complex canonical_parameter{0.0, 0.0};
};

struct FixedPoints {
  RiemannPoint first;
  std::optional<RiemannPoint> second;
};

/// w' = (m11 w + m12)/(m21 w + m22), total on the sphere: infinity maps to
/// m11/m21 (or stays put when m21 = 0) and zeros of the denominator map to
/// infinity.
RiemannPoint mobius_apply(const TransferMatrix& m, const RiemannPoint& p);

/// Poincare extension to the upper half-space; an isometry of the hyperbolic
/// metric.  As z -> 0+ the w component converges to mobius_apply(m, w).
/// Requires p.z > 0.
HalfSpacePoint mobius_apply_halfspace(const TransferMatrix& m, const HalfSpacePoint& p);

/// Fixed points on the sphere; parabolic maps return a single repeated point.
/// Throws EverywhereFixedError for +-identity.
FixedPoints fixed_points(const TransferMatrix& m);

/// Classification by squared trace: real trace gives elliptic (< 4),
/// hyperbolic (> 4) or parabolic (= 4 within 1e-9, matrix != +-I); non-real
/// trace is loxodromic.  +-identity gets its own label.
MoebiusClassification classify_mobius(const TransferMatrix& m);

/// Geodesic distance in the half-space metric |d(point)| / z:
/// cosh d = 1 + (|w_p - w_q|^2 + (z_p - z_q)^2) / (2 z_p z_q).
double hyperbolic_distance(const HalfSpacePoint& p, const HalfSpacePoint& q);

}  // namespace ptscatter

#endif
