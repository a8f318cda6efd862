#include "ptscatter/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptscatter/errors.hpp"

namespace ptscatter {

double TransferMatrix::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

TransferMatrix matrix_product(const TransferMatrix& b, const TransferMatrix& a) {
  TransferMatrix r;
  r.m11 = b.m11 * a.m11 + b.m12 * a.m21;
  r.m12 = b.m11 * a.m12 + b.m12 * a.m22;
  r.m21 = b.m21 * a.m11 + b.m22 * a.m21;
  r.m22 = b.m21 * a.m12 + b.m22 * a.m22;
  r.k = b.k;
  return r;
}

double max_abs_diff(const TransferMatrix& a, const TransferMatrix& b) {
  return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12),
                   std::abs(a.m21 - b.m21), std::abs(a.m22 - b.m22)});
}

TransferMatrix compose(const TransferMatrix& left_piece, const TransferMatrix& right_piece) {
  if (!same_wavenumber(left_piece.k, right_piece.k)) {
    std::ostringstream msg;
    msg << "compose: factors evaluated at different wavenumbers (" << left_piece.k.k
        << " vs " << right_piece.k.k << ")";
    throw ContractViolation(msg.str());
  }
  // Amplitudes cross the left piece first: total = right * left.
  return matrix_product(right_piece, left_piece);
}

namespace {

void require_regular_m22(const TransferMatrix& m, const char* op) {
  if (std::abs(m.m22) < kSingularM22Threshold) {
    std::ostringstream msg;
    msg << op << ": |m22| = " << std::abs(m.m22)
        << " below spectral-singularity threshold at k = " << m.k.k;
    throw SpectralSingularityError(msg.str(), m.k, std::abs(m.m22));
  }
}

}  // namespace

ScatterCoefficients coefficients_from_transfer(const TransferMatrix& m) {
  require_regular_m22(m, "coefficients_from_transfer");
  ScatterCoefficients c;
  c.t = 1.0 / m.m22;
  c.r_right = m.m12 / m.m22;
  c.r_left = -m.m21 / m.m22;
  return c;
}

TransferMatrix transfer_from_coefficients(const ScatterCoefficients& c, Wavenumber k) {
  if (c.t == Complex{0.0, 0.0}) {
    throw ContractViolation("transfer_from_coefficients: t = 0 has no transfer matrix");
  }
  TransferMatrix m;
  m.m11 = c.t - c.r_left * c.r_right / c.t;
  m.m12 = c.r_right / c.t;
  m.m21 = -c.r_left / c.t;
  m.m22 = 1.0 / c.t;
  m.k = k;
  return m;
}

ScatteringMatrix scattering_from_transfer(const TransferMatrix& m) {
  const ScatterCoefficients c = coefficients_from_transfer(m);
  return ScatteringMatrix{c.t, c.r_right, c.r_left, c.t};
}

std::pair<Complex, Complex> s_eigenvalues(const TransferMatrix& m) {
  require_regular_m22(m, "s_eigenvalues");
  const Complex radical = std::sqrt(Complex{1.0, 0.0} - m.m11 * m.m22);
  const Complex s_plus = (1.0 + radical) / m.m22;
  // s- via s+ s- = m11/m22; the direct (1 - radical)/m22 form cancels near a
  // spectral singularity.
  const Complex s_minus = m.m11 / (1.0 + radical);
  return {s_plus, s_minus};
}

double reciprocity_check(Complex t_left_incidence, Complex t_right_incidence) {
  return std::abs(t_left_incidence - t_right_incidence);
}

}  // namespace ptscatter
