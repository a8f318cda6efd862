#include "ptscatter/moebius.hpp"

#include <cmath>

#include "ptscatter/errors.hpp"

namespace ptscatter {

namespace {

constexpr double kClassifyTol = 1e-9;

bool is_scalar_identity(const TransferMatrix& m, double sign) {
  return std::abs(m.m11 - sign) <= kClassifyTol && std::abs(m.m22 - sign) <= kClassifyTol &&
         std::abs(m.m12) <= kClassifyTol && std::abs(m.m21) <= kClassifyTol;
}

}  // namespace

double chordal_distance(const RiemannPoint& p, const RiemannPoint& q) {
  if (p.infinite && q.infinite) return 0.0;
  if (p.infinite) return 2.0 / std::sqrt(1.0 + std::norm(q.w));
  if (q.infinite) return 2.0 / std::sqrt(1.0 + std::norm(p.w));
  return 2.0 * std::abs(p.w - q.w) /
         (std::sqrt(1.0 + std::norm(p.w)) * std::sqrt(1.0 + std::norm(q.w)));
}

RiemannPoint mobius_apply(const TransferMatrix& m, const RiemannPoint& p) {
  if (p.infinite) {
    if (m.m21 == Complex{0.0, 0.0}) return RiemannPoint::infinity();
    return RiemannPoint::of(m.m11 / m.m21);
  }
  const Complex denom = m.m21 * p.w + m.m22;
  if (denom == Complex{0.0, 0.0}) return RiemannPoint::infinity();
  return RiemannPoint::of((m.m11 * p.w + m.m12) / denom);
}

HalfSpacePoint mobius_apply_halfspace(const TransferMatrix& m, const HalfSpacePoint& p) {
  if (!(p.z > 0.0)) {
    throw ContractViolation("mobius_apply_halfspace: height must be positive");
  }
  // Quaternionic closed form of the extension: with P = w + z j,
  // P' = (aP + b)(cP + d)^{-1}.  Composing the elementary translation,
  // dilation and inversion extensions yields exactly this.
  const Complex cw_d = m.m21 * p.w + m.m22;
  const double denom = std::norm(cw_d) + std::norm(m.m21) * p.z * p.z;
  const Complex num =
      (m.m11 * p.w + m.m12) * std::conj(cw_d) + m.m11 * std::conj(m.m21) * p.z * p.z;
  const double scale = std::abs(m.det());
  return HalfSpacePoint{num / denom, scale * p.z / denom};
}

FixedPoints fixed_points(const TransferMatrix& m) {
  if (is_scalar_identity(m, 1.0) || is_scalar_identity(m, -1.0)) {
    throw EverywhereFixedError("fixed_points: +-identity fixes every point");
  }

  const Complex tr = m.trace();
  const Complex disc = tr * tr - 4.0;

  if (m.m21 == Complex{0.0, 0.0}) {
    // Infinity is fixed; a second finite point exists unless the map is a
    // pure translation.
    if (std::abs(m.m11 - m.m22) <= kClassifyTol * std::max(1.0, m.max_abs())) {
      return FixedPoints{RiemannPoint::infinity(), std::nullopt};
    }
    return FixedPoints{RiemannPoint::infinity(),
                       RiemannPoint::of(m.m12 / (m.m22 - m.m11))};
  }

  if (std::abs(disc) <= kClassifyTol) {
    return FixedPoints{RiemannPoint::of((m.m11 - m.m22) / (2.0 * m.m21)), std::nullopt};
  }
  const Complex root = std::sqrt(disc);
  return FixedPoints{RiemannPoint::of((m.m11 - m.m22 + root) / (2.0 * m.m21)),
                     RiemannPoint::of((m.m11 - m.m22 - root) / (2.0 * m.m21))};
}

std::string to_string(MoebiusType type) {
  switch (type) {
    case MoebiusType::Identity: return "Identity";
    case MoebiusType::Elliptic: return "Elliptic";
    case MoebiusType::Hyperbolic: return "Hyperbolic";
    case MoebiusType::Parabolic: return "Parabolic";
    case MoebiusType::Loxodromic: return "Loxodromic";
  }
  return "Identity";
}

MoebiusClassification classify_mobius(const TransferMatrix& m) {
  MoebiusClassification c;
  const Complex tr = m.trace();
  c.trace_sq = tr * tr;

  if (is_scalar_identity(m, 1.0) || is_scalar_identity(m, -1.0)) {
    c.type = MoebiusType::Identity;
    c.fixed_first = RiemannPoint::infinity();  // everywhere fixed; nominal
    c.canonical_parameter = Complex{0.0, 0.0};
    return c;
  }

  const FixedPoints fp = fixed_points(m);
  c.fixed_first = fp.first;
  c.fixed_second = fp.second;

  const bool trace_real = std::abs(tr.imag()) <= kClassifyTol * std::max(1.0, std::abs(tr));
  const double tr2_gap = std::abs(c.trace_sq - 4.0);

  if (trace_real && tr2_gap <= kClassifyTol) {
    c.type = MoebiusType::Parabolic;
    // Parameter of w -> w + lambda in the chart moving the fixed point to
    // infinity (u = 1/(w - w_f)); with trace sign s = +-1 this is s*m21, and
    // s*m12 when already upper triangular.
    const double s = tr.real() >= 0.0 ? 1.0 : -1.0;
    c.canonical_parameter =
        m.m21 == Complex{0.0, 0.0} ? s * m.m12 : s * m.m21;
    return c;
  }

  if (trace_real) {
    const double t = tr.real();
    if (t * t < 4.0) {
      c.type = MoebiusType::Elliptic;
      c.canonical_parameter = Complex{2.0 * std::acos(t / 2.0), 0.0};
    } else {
      c.type = MoebiusType::Hyperbolic;
      // trace sign is a scalar multiple in PSL; use |tr|.
      c.canonical_parameter = Complex{2.0 * std::acosh(std::abs(t) / 2.0), 0.0};
    }
    return c;
  }

  c.type = MoebiusType::Loxodromic;
  const Complex root = std::sqrt(c.trace_sq - 4.0);
  Complex mu = (tr + root) / 2.0;
  if (std::abs(mu) < 1.0) mu = (tr - root) / 2.0;
  c.canonical_parameter = mu * mu;  // multiplier of w -> mu^2 w
  return c;
}

double hyperbolic_distance(const HalfSpacePoint& p, const HalfSpacePoint& q) {
  if (!(p.z > 0.0) || !(q.z > 0.0)) {
    throw ContractViolation("hyperbolic_distance: heights must be positive");
  }
  const double cosh_d =
      1.0 + (std::norm(p.w - q.w) + (p.z - q.z) * (p.z - q.z)) / (2.0 * p.z * q.z);
  return std::acosh(std::max(1.0, cosh_d));
}

}  // namespace ptscatter
