#include <doctest.h>

#include <cmath>
#include <random>

#include "ptscatter/errors.hpp"
#include "ptscatter/potential.hpp"
#include "ptscatter/transfer.hpp"

#include "oracles.hpp"

using namespace ptscatter;
using ptscatter::testing::random_unimodular;

namespace {
const Wavenumber k1(1.0);
const Complex I{0.0, 1.0};
}  // namespace

TEST_CASE("compose: identity and free propagation") {
  std::mt19937 rng(42);
  const TransferMatrix m = random_unimodular(rng);
  const TransferMatrix id = TransferMatrix::identity(k1);
  CHECK(max_abs_diff(compose(m, id), m) == 0.0);
  CHECK(max_abs_diff(compose(id, m), m) == 0.0);

  // two zero-potential slabs: identity in the global-phase convention
  const TransferMatrix free1 = slab_transfer({0.0, 0.0}, 0.7, k1, -0.7);
  const TransferMatrix free2 = slab_transfer({0.0, 0.0}, 1.3, k1, 0.0);
  CHECK(max_abs_diff(compose(free1, free2), id) < 1e-14);
}

TEST_CASE("compose: two half slabs equal the full slab") {
  const Complex u{2.0, 0.0};
  const TransferMatrix left = slab_transfer(u, 0.5, k1, 0.0);
  const TransferMatrix right = slab_transfer(u, 0.5, k1, 0.5);
  const TransferMatrix whole = slab_transfer(u, 1.0, k1, 0.0);
  CHECK(max_abs_diff(compose(left, right), whole) < 1e-13);
  CHECK(std::abs(compose(left, right).det() - 1.0) < 1e-13);
}

TEST_CASE("compose: rejects mismatched wavenumbers") {
  const TransferMatrix a = TransferMatrix::identity(k1);
  const TransferMatrix b = TransferMatrix::identity(Wavenumber(2.0));
  CHECK_THROWS_AS(compose(a, b), ContractViolation);
}

TEST_CASE("coefficients_from_transfer: identity and parallel displacement") {
  const ScatterCoefficients free = coefficients_from_transfer(TransferMatrix::identity(k1));
  CHECK(free.t == Complex{1.0, 0.0});
  CHECK(free.r_left == Complex{0.0, 0.0});
  CHECK(free.r_right == Complex{0.0, 0.0});

  const Complex rho{0.3, 0.2};
  const TransferMatrix shear{Complex{1.0}, rho, Complex{0.0}, Complex{1.0}, k1};
  const ScatterCoefficients c = coefficients_from_transfer(shear);
  CHECK(std::abs(c.t - 1.0) == 0.0);
  CHECK(std::abs(c.r_left) == 0.0);
  CHECK(std::abs(c.r_right - rho) == 0.0);
}

TEST_CASE("coefficients_from_transfer: slab values") {
  const TransferMatrix m = slab_transfer({2.0, 0.0}, 1.0, k1, 0.0);
  const ScatterCoefficients c = coefficients_from_transfer(m);
  CHECK(std::abs(c.t - std::exp(-I) / std::cosh(1.0)) < 1e-14);
  CHECK(std::abs(c.r_left + I * std::tanh(1.0)) < 1e-14);
  CHECK(std::abs(c.r_right + I * std::tanh(1.0) * std::exp(-2.0 * I)) < 1e-14);

  // reconstructing m11 from the coefficient identities matches the input
  const Complex m11 = c.t - c.r_left * c.r_right / c.t;
  CHECK(std::abs(m11 - m.m11) < 1e-12 * m.max_abs());
}

TEST_CASE("coefficients_from_transfer: singular m22 raises") {
  TransferMatrix m = TransferMatrix::identity(k1);
  m.m22 = Complex{0.0, 1e-14};
  m.m11 = Complex{0.0, 0.0};
  m.m12 = Complex{1.0, 0.0};
  m.m21 = Complex{-1.0, 0.0};
  CHECK_THROWS_AS(coefficients_from_transfer(m), SpectralSingularityError);
  try {
    coefficients_from_transfer(m);
  } catch (const SpectralSingularityError& err) {
    CHECK(err.m22_abs < kSingularM22Threshold);
  }
}

TEST_CASE("transfer_from_coefficients: round trip and golden cases") {
  CHECK(max_abs_diff(transfer_from_coefficients(ScatterCoefficients{}, k1),
                     TransferMatrix::identity(k1)) == 0.0);

  const Complex rho{0.4, -0.7};
  ScatterCoefficients shear;
  shear.t = 1.0;
  shear.r_right = rho;
  const TransferMatrix m = transfer_from_coefficients(shear, k1);
  CHECK(std::abs(m.m12 - rho) == 0.0);
  CHECK(std::abs(m.m21) == 0.0);

  ScatterCoefficients slab;
  slab.t = std::exp(-I) / std::cosh(1.0);
  slab.r_left = -I * std::tanh(1.0);
  slab.r_right = -I * std::tanh(1.0) * std::exp(-2.0 * I);
  CHECK(max_abs_diff(transfer_from_coefficients(slab, k1),
                     slab_transfer({2.0, 0.0}, 1.0, k1, 0.0)) < 1e-14);

  ScatterCoefficients dead;
  dead.t = Complex{0.0, 0.0};
  CHECK_THROWS_AS(transfer_from_coefficients(dead, k1), ContractViolation);
}

TEST_CASE("coefficient round trip on random unimodular matrices") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const TransferMatrix m = random_unimodular(rng);
    const TransferMatrix back = transfer_from_coefficients(coefficients_from_transfer(m), m.k);
    CHECK(max_abs_diff(back, m) < 1e-12 * std::max(1.0, m.max_abs()));
    CHECK(std::abs(back.det() - 1.0) < 1e-12 * std::max(1.0, m.max_abs()));
  }
}

TEST_CASE("compose is associative on random triples") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const TransferMatrix a = random_unimodular(rng);
    const TransferMatrix b = random_unimodular(rng);
    const TransferMatrix c = random_unimodular(rng);
    const TransferMatrix lhs = compose(compose(a, b), c);
    const TransferMatrix rhs = compose(a, compose(b, c));
    const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
    CHECK(max_abs_diff(lhs, rhs) < 1e-12 * scale);
  }
}

TEST_CASE("scattering_from_transfer: diagonal carries the transmission twice") {
  const ScatteringMatrix sid = scattering_from_transfer(TransferMatrix::identity(k1));
  CHECK(sid.s11 == Complex{1.0, 0.0});
  CHECK(sid.s12 == Complex{0.0, 0.0});
  CHECK(sid.s21 == Complex{0.0, 0.0});
  CHECK(sid.s22 == Complex{1.0, 0.0});

  const Complex rho{0.3, 0.2};
  const TransferMatrix shear{Complex{1.0}, rho, Complex{0.0}, Complex{1.0}, k1};
  const ScatteringMatrix s = scattering_from_transfer(shear);
  CHECK(s.s11 == s.s22);
  CHECK(std::abs(s.s12 - rho) == 0.0);
  CHECK(std::abs(s.s21) == 0.0);

  const ScatteringMatrix sl = scattering_from_transfer(slab_transfer({2.0, 0.0}, 1.0, k1, 0.0));
  CHECK(std::abs(sl.s11 - std::exp(-I) / std::cosh(1.0)) < 1e-14);
  CHECK(sl.s11 == sl.s22);

  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    const ScatteringMatrix r = scattering_from_transfer(random_unimodular(rng));
    CHECK(r.s11 == r.s22);
  }
}

TEST_CASE("s_eigenvalues: degenerate and slab cases") {
  const auto [ip, im_] = s_eigenvalues(TransferMatrix::identity(k1));
  CHECK(std::abs(ip - 1.0) == 0.0);
  CHECK(std::abs(im_ - 1.0) == 0.0);

  // unit-diagonal shear: same degenerate radical
  const TransferMatrix shear{Complex{1.0}, Complex{0.5, 0.5}, Complex{0.0}, Complex{1.0}, k1};
  const auto [sp, sm] = s_eigenvalues(shear);
  CHECK(std::abs(sp - 1.0) == 0.0);
  CHECK(std::abs(sm - 1.0) == 0.0);

  // slab: 1 - m11 m22 = -sinh^2(1)
  const TransferMatrix slab = slab_transfer({2.0, 0.0}, 1.0, k1, 0.0);
  const auto [lp, lm] = s_eigenvalues(slab);
  const Complex denom = std::cosh(1.0) * std::exp(I);
  CHECK(std::abs(lp - (1.0 + I * std::sinh(1.0)) / denom) < 1e-14);
  CHECK(std::abs(lm - (1.0 - I * std::sinh(1.0)) / denom) < 1e-14);
}

TEST_CASE("s_eigenvalues: product identity s+ s- m22^2 = m11 m22") {
  std::mt19937 rng(23);
  for (int i = 0; i < 200; ++i) {
    const TransferMatrix m = random_unimodular(rng);
    const auto [sp, sm] = s_eigenvalues(m);
    const Complex lhs = sp * sm * m.m22 * m.m22;
    const Complex rhs = m.m11 * m.m22;
    CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("det stays 1 for matrices produced by the operations") {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    TransferMatrix acc = TransferMatrix::identity(k1);
    for (int l = 0; l < 4; ++l) acc = compose(acc, random_unimodular(rng));
    CHECK(std::abs(acc.det() - 1.0) < 1e-9 * std::max(1.0, acc.max_abs() * acc.max_abs()));
  }
}

TEST_CASE("reciprocity_check is the transmission gap") {
  CHECK(reciprocity_check(Complex{1.0, 0.0}, Complex{1.0, 0.0}) == 0.0);
  CHECK(reciprocity_check(Complex{1.0, 0.0}, Complex{1.0, 1e-9}) == doctest::Approx(1e-9));
}
