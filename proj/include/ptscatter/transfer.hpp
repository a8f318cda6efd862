#ifndef PTSCATTER_TRANSFER_HPP
#define PTSCATTER_TRANSFER_HPP

#include <utility>

#include "ptscatter/types.hpp"

namespace ptscatter {

// Amplitude convention: a wave is written A+ e^{+ikx} + A- e^{-ikx} with the
// phases referenced to the global origin x = 0.  The transfer matrix maps the
// amplitude pair left of the scatterer to the pair on its right,
//
//   (B+, B-)^T = M (A+, A-)^T,
//
// so a zero-potential region contributes the identity and adjacent pieces
// compose by plain matrix multiplication with no extra propagation phases.
// Every physical M is unimodular: det M = 1.

/// 2x2 complex unimodular transfer matrix together with the wavenumber it was
/// evaluated at.
struct TransferMatrix {
  Complex m11{1.0, 0.0};
  Complex m12{0.0, 0.0};
  Complex m21{0.0, 0.0};
  Complex m22{1.0, 0.0};
  Wavenumber k{};

  static TransferMatrix identity(Wavenumber k_at) {
    TransferMatrix m;
    m.k = k_at;
    return m;
  }

  Complex det() const { return m11 * m22 - m12 * m21; }
  Complex trace() const { return m11 + m22; }

  /// Largest entry modulus; the natural scale for entrywise comparisons.
  double max_abs() const;

  TransferMatrix negated() const {
    return TransferMatrix{-m11, -m12, -m21, -m22, k};
  }
};

/// Raw matrix product b * a (no adjacency semantics; see compose()).
TransferMatrix matrix_product(const TransferMatrix& b, const TransferMatrix& a);

/// Max entrywise distance between two matrices.
double max_abs_diff(const TransferMatrix& a, const TransferMatrix& b);

/// Transmission and directional reflection amplitudes at one wavenumber.
/// The transmission is direction independent; the reflections are not.
struct ScatterCoefficients {
  Complex t{1.0, 0.0};
  Complex r_left{0.0, 0.0};
  Complex r_right{0.0, 0.0};

  double transmission_phase() const { return std::arg(t); }
  double reflection_phase_left() const { return std::arg(r_left); }
  double reflection_phase_right() const { return std::arg(r_right); }
};

/// Scattering matrix: maps incoming to outgoing amplitudes.  Its diagonal
/// holds the (direction-independent) transmission twice: s11 = s22 = t.
struct ScatteringMatrix {
  Complex s11, s12, s21, s22;
};

/// Threshold below which |m22| is treated as an exact zero of the Wronskian,
/// i.e. a spectral singularity; below double precision's resolution of the
/// root.
inline constexpr double kSingularM22Threshold = 1e-12;

/// Transfer matrix of two adjacent scatterers, left_piece spatially left of
/// right_piece.  In the B = M A convention the amplitudes cross the left piece
/// first, so the result is right_piece * left_piece.
/// Throws ContractViolation when the two factors carry different wavenumbers.
TransferMatrix compose(const TransferMatrix& left_piece, const TransferMatrix& right_piece);

/// Extracts t = 1/m22, r_right = m12/m22, r_left = -m21/m22.
/// Throws SpectralSingularityError when |m22| < kSingularM22Threshold.
ScatterCoefficients coefficients_from_transfer(const TransferMatrix& m);

/// Inverse of coefficients_from_transfer; the result has det = 1 by
/// construction.  Throws ContractViolation when t = 0.
TransferMatrix transfer_from_coefficients(const ScatterCoefficients& c, Wavenumber k);

/// Throws SpectralSingularityError when |m22| < kSingularM22Threshold.
ScatteringMatrix scattering_from_transfer(const TransferMatrix& m);

/// Eigenvalues s± = (1 ± sqrt(1 - m11 m22)) / m22, principal branch.
/// s- is evaluated through the product identity s+ s- = m11/m22, which is
/// stable as m22 -> 0 where the textbook form cancels catastrophically.
/// Throws SpectralSingularityError when |m22| < kSingularM22Threshold.
std::pair<Complex, Complex> s_eigenvalues(const TransferMatrix& m);

/// |t_left - t_right| for two transmissions obtained from independent
/// boundary-value solves of the same potential at the same wavenumber.
double reciprocity_check(Complex t_left_incidence, Complex t_right_incidence);

}  // namespace ptscatter

#endif
