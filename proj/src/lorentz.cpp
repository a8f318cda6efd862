#include "ptscatter/lorentz.hpp"

#include <cmath>
#include <sstream>

#include "ptscatter/errors.hpp"

namespace ptscatter {

Mat4 Mat4::identity() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m.a[i][i] = 1.0;
  return m;
}

Mat4 operator*(const Mat4& l, const Mat4& r) {
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += l.a[i][k] * r.a[k][j];
      out.a[i][j] = s;
    }
  }
  return out;
}

MinkowskiVector operator*(const Mat4& m, const MinkowskiVector& v) {
  const std::array<double, 4> in{v.x0, v.x1, v.x2, v.x3};
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out[i] += m.a[i][j] * in[j];
  }
  return MinkowskiVector{out[0], out[1], out[2], out[3]};
}

Mat4 operator+(const Mat4& l, const Mat4& r) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.a[i][j] = l.a[i][j] + r.a[i][j];
  return out;
}

Mat4 operator*(double s, const Mat4& m) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.a[i][j] = s * m.a[i][j];
  return out;
}

double max_abs(const Mat4& m) {
  double v = 0.0;
  for (const auto& row : m.a)
    for (double x : row) v = std::max(v, std::abs(x));
  return v;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double v = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v = std::max(v, std::abs(a.a[i][j] - b.a[i][j]));
  return v;
}

double det4(const Mat4& m) {
  // Expansion in 2x2 complementary minors along the first two rows.
  auto minor2 = [&](int c0, int c1) {
    return m.a[0][c0] * m.a[1][c1] - m.a[0][c1] * m.a[1][c0];
  };
  auto cominor2 = [&](int c0, int c1) {
    return m.a[2][c0] * m.a[3][c1] - m.a[2][c1] * m.a[3][c0];
  };
  return minor2(0, 1) * cominor2(2, 3) - minor2(0, 2) * cominor2(1, 3) +
         minor2(0, 3) * cominor2(1, 2) + minor2(1, 2) * cominor2(0, 3) -
         minor2(1, 3) * cominor2(0, 2) + minor2(2, 3) * cominor2(0, 1);
}

double lorentz_defect(const LorentzMatrix& lambda) {
  // Lambda^T g Lambda - g, g = diag(1,-1,-1,-1).
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = lambda.a[0][i] * lambda.a[0][j];
      for (int r = 1; r < 4; ++r) s -= lambda.a[r][i] * lambda.a[r][j];
      const double g = i == j ? (i == 0 ? 1.0 : -1.0) : 0.0;
      worst = std::max(worst, std::abs(s - g));
    }
  }
  return worst;
}

HermitianState hermitian_from_amplitudes(const WaveAmplitudes& a) {
  HermitianState x;
  x.x11 = std::norm(a.plus);
  x.x12 = a.plus * std::conj(a.minus);
  x.x22 = std::norm(a.minus);
  return x;
}

MinkowskiVector minkowski_coords(const HermitianState& x) {
  MinkowskiVector v;
  v.x0 = 0.5 * (x.x11 + x.x22);
  v.x1 = x.x12.real();
  v.x2 = -x.x12.imag();
  v.x3 = 0.5 * (x.x11 - x.x22);
  return v;
}

namespace {

struct Herm2 {
  Complex h11, h12, h21, h22;
};

// M H M^dagger for 2x2 complex M and (numerically) Hermitian H.
Herm2 congruence(const TransferMatrix& m, const Herm2& h) {
  // t = M H
  const Complex t11 = m.m11 * h.h11 + m.m12 * h.h21;
  const Complex t12 = m.m11 * h.h12 + m.m12 * h.h22;
  const Complex t21 = m.m21 * h.h11 + m.m22 * h.h21;
  const Complex t22 = m.m21 * h.h12 + m.m22 * h.h22;
  // t M^dagger
  Herm2 r;
  r.h11 = t11 * std::conj(m.m11) + t12 * std::conj(m.m12);
  r.h12 = t11 * std::conj(m.m21) + t12 * std::conj(m.m22);
  r.h21 = t21 * std::conj(m.m11) + t22 * std::conj(m.m12);
  r.h22 = t21 * std::conj(m.m21) + t22 * std::conj(m.m22);
  return r;
}

}  // namespace

LorentzMatrix lorentz_from_transfer(const TransferMatrix& m) {
  // Columns: coordinates of M sigma^nu M^dagger for sigma = (1, sigma_x,
  // sigma_y, sigma_z).
  static const Herm2 kBasis[4] = {
      {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0}},
      {Complex{0, 0}, Complex{1, 0}, Complex{1, 0}, Complex{0, 0}},
      {Complex{0, 0}, Complex{0, -1}, Complex{0, 1}, Complex{0, 0}},
      {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{-1, 0}},
  };
  LorentzMatrix lambda;
  for (int nu = 0; nu < 4; ++nu) {
    const Herm2 y = congruence(m, kBasis[nu]);
    lambda.a[0][nu] = 0.5 * (y.h11.real() + y.h22.real());
    lambda.a[1][nu] = 0.5 * (y.h12 + y.h21).real();
    lambda.a[2][nu] = 0.5 * (y.h21 - y.h12).imag();
    lambda.a[3][nu] = 0.5 * (y.h11.real() - y.h22.real());
  }
  return lambda;
}

LorentzMatrix null_rotation(Complex rho) {
  const double re = rho.real(), im = rho.imag();
  const double half = 0.5 * std::norm(rho);
  LorentzMatrix l;
  l.a = {{{1.0 + half, re, -im, -half},
          {re, 1.0, 0.0, -re},
          {-im, 0.0, 1.0, im},
          {half, re, -im, 1.0 - half}}};
  return l;
}

NullGenerator null_generator(Complex rho) {
  const double re = rho.real(), im = rho.imag();
  NullGenerator g;
  g.rho = rho;
  g.n.a = {{{0.0, re, -im, 0.0},
            {re, 0.0, 0.0, -re},
            {-im, 0.0, 0.0, im},
            {0.0, re, -im, 0.0}}};
  return g;
}

namespace {

Mat4 boost_generator(int axis) {
  Mat4 k;
  k.a[0][axis] = 1.0;
  k.a[axis][0] = 1.0;
  return k;
}

Mat4 rotation_j1() {
  Mat4 j;
  j.a[2][3] = -1.0;
  j.a[3][2] = 1.0;
  return j;
}

Mat4 rotation_j2() {
  Mat4 j;
  j.a[1][3] = -1.0;
  j.a[3][1] = 1.0;
  return j;
}

}  // namespace

std::pair<double, double> generator_decomposition(const NullGenerator& gen) {
  const double c1 = gen.rho.real();
  const double c2 = -gen.rho.imag();
  const Mat4 rebuilt =
      c1 * (boost_generator(1) + rotation_j2()) + c2 * (boost_generator(2) + rotation_j1());
  const double mismatch = max_abs_diff(rebuilt, gen.n);
  if (mismatch > 1e-12 * std::max(1.0, max_abs(gen.n))) {
    std::ostringstream msg;
    msg << "generator_decomposition: basis reconstruction off by " << mismatch
        << " (generator was not built by null_generator?)";
    throw ContractViolation(msg.str());
  }
  return {c1, c2};
}

std::array<double, 3> killing_invariants(const MinkowskiVector& v) {
  return {v.x2, v.x0 - v.x3, v.x0 * v.x0 - v.x1 * v.x1 - v.x3 * v.x3};
}

}  // namespace ptscatter
