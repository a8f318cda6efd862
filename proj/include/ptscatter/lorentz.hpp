#ifndef PTSCATTER_LORENTZ_HPP
#define PTSCATTER_LORENTZ_HPP

#include <array>
#include <utility>

#include "ptscatter/transfer.hpp"
#include "ptscatter/types.hpp"

namespace ptscatter {

// The two-to-one map from unimodular transfer matrices to proper
// orthochronous Lorentz transformations.  A rank-one Hermitian matrix built
// from the wave amplitudes carries the Minkowski coordinates
//
//   x0 = (x11 + x22)/2,  x1 = Re x12,  x2 = -Im x12,  x3 = (x11 - x22)/2,
//
// in signature (+,-,-,-); conjugation X -> M X M^dagger then acts on these
// coordinates as the 4x4 matrix lorentz_from_transfer(M).  Amplitude-generated
// vectors are null (det X = 0) and stay null.

/// 2x2 Hermitian matrix; Hermiticity is exact by storage.
struct HermitianState {
  double x11 = 0.0;
  Complex x12{0.0, 0.0};
  double x22 = 0.0;

  double trace() const { return x11 + x22; }
  double det() const { return x11 * x22 - std::norm(x12); }
};

struct MinkowskiVector {
  double x0 = 0.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;

  /// x.x = x0^2 - x1^2 - x2^2 - x3^2.
  double norm2() const { return x0 * x0 - x1 * x1 - x2 * x2 - x3 * x3; }
};

/// Dense 4x4 real matrix, row major.
struct Mat4 {
  std::array<std::array<double, 4>, 4> a{};

  static Mat4 identity();
  static Mat4 zero() { return Mat4{}; }

  double& operator()(int r, int c) { return a[r][c]; }
  double operator()(int r, int c) const { return a[r][c]; }
};

Mat4 operator*(const Mat4& l, const Mat4& r);
MinkowskiVector operator*(const Mat4& m, const MinkowskiVector& v);
Mat4 operator+(const Mat4& l, const Mat4& r);
Mat4 operator*(double s, const Mat4& m);

double max_abs(const Mat4& m);
double max_abs_diff(const Mat4& a, const Mat4& b);
double det4(const Mat4& m);

using LorentzMatrix = Mat4;

/// Max entry of Lambda^T g Lambda - g with g = diag(1,-1,-1,-1); zero for an
/// exact Lorentz transformation.
double lorentz_defect(const LorentzMatrix& lambda);

/// Nilpotent so(1,3) generator of a null rotation together with the
/// reflection amplitude it came from.  N^3 = 0.
struct NullGenerator {
  Mat4 n;
  Complex rho;
};

/// X = a (x) a^dagger: x11 = |plus|^2, x12 = plus conj(minus), x22 = |minus|^2.
/// Rank one with nonnegative trace.
HermitianState hermitian_from_amplitudes(const WaveAmplitudes& a);

/// Trace coordinates of a Hermitian matrix (see module comment).  Rank-one
/// states map to null vectors.
MinkowskiVector minkowski_coords(const HermitianState& x);

/// Image of M under the Pauli-trace homomorphism:
/// Lambda^mu_nu = Re Tr(sigma^mu M sigma^nu M^dagger)/2.  Satisfies
/// minkowski_coords(M X M^dagger) = Lambda * minkowski_coords(X) and
/// Lambda(M) = Lambda(-M).
LorentzMatrix lorentz_from_transfer(const TransferMatrix& m);

/// Closed-form null rotation generated by the unipotent matrix [[1,rho],[0,1]]:
/// fixes the lightlike direction (1,0,0,1) and agrees with
/// lorentz_from_transfer of that matrix.
LorentzMatrix null_rotation(Complex rho);

/// Its nilpotent generator: exp(N) = I + N + N^2/2 = null_rotation(rho).
NullGenerator null_generator(Complex rho);

/// Coefficients (c1, c2) = (Re rho, -Im rho) of N in the fixed generator
/// basis  N = c1 (K1 + J2) + c2 (K2 + J1),  where K_i is the boost with unit
/// entries at (0,i),(i,0) and the rotation blocks are fixed per axis as
/// J1: (2,3) = -1, (3,2) = +1 and J2: (1,3) = -1, (3,1) = +1 (these signs are
/// what reproduce the null-rotation generator entrywise; within each summand
/// the boost rapidity and rotation angle share one magnitude by construction).
/// Throws ContractViolation if the reconstruction does not match N.
std::pair<double, double> generator_decomposition(const NullGenerator& n);

/// The triple (x2, x0 - x3, x0^2 - x1^2 - x3^2) conserved by the
/// imaginary-rho null-rotation flow: the difference x0 - x3 on every vector,
/// all three on the null plane x0 = x3; on the light cone the orbits are
/// parabolas inside the null plane x0 - x3 = const.
std::array<double, 3> killing_invariants(const MinkowskiVector& v);

}  // namespace ptscatter

#endif
