#ifndef PTSCATTER_SPECTRAL_HPP
#define PTSCATTER_SPECTRAL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptscatter/potential.hpp"
#include "ptscatter/transfer.hpp"

namespace ptscatter {

/// One row of a wavenumber sweep.  At a spectral singularity the coefficients
/// diverge; the row is flagged by an empty optional instead of storing
/// infinities.
struct SpectrumSample {
  double k;
  TransferMatrix matrix;
  std::optional<ScatterCoefficients> coefficients;
  double m22_abs;
  bool singular() const { return !coefficients.has_value(); }
};

struct SpectrumScan {
  std::vector<SpectrumSample> rows;
};

enum class SingularityKind { SpectralSingularity, BoundState };

/// A polished zero of m22(k): on the positive real axis (spectral
/// singularity, diverging transmission) or in the upper half plane
/// (bound state).
struct SingularityReport {
  Complex k_star;
  double residual;  // |m22(k_star)|
  SingularityKind kind;
};

/// Rectangle in the complex k plane, used for bound-state searches.
struct SearchBox {
  double re_min, re_max;
  double im_min, im_max;
};

struct RootSearchOptions {
  std::size_t grid_n = 512;       // scan density for minima bracketing
  double residual_tol = 1e-8;     // acceptance threshold on |m22|
  double merge_tol = 1e-6;        // duplicate roots closer than this merge
  std::size_t max_newton_iter = 60;
  IntegrationOptions integration{};
};

/// Uniform sweep of n wavenumbers over [k_min, k_max] (inclusive), each row
/// internally consistent with the transfer-matrix coefficient extraction.
/// Rows are computed independently; `threads` > 1 distributes them over a
/// worker pool (the output order is ascending k regardless).
SpectrumScan scan_spectrum(const PotentialSpec& p, double k_min, double k_max, std::size_t n,
                           const IntegrationOptions& opts = {}, unsigned threads = 1);

/// Real zeros of m22 on [k_min, k_max]: local minima of |m22| on a scan grid,
/// polished by derivative-free Newton restricted to the real axis.  Only roots
/// with |m22| <= residual_tol are reported; near-duplicates merge.  Empty for
/// any real potential.
std::vector<SingularityReport> find_spectral_singularities(const PotentialSpec& p, double k_min,
                                                           double k_max,
                                                           const RootSearchOptions& opts = {});

/// Upper-half-plane zeros of m22 inside the box, counted by the argument
/// principle on the boundary and isolated by recursive subdivision, then
/// polished by Newton with a numerically differenced derivative.
/// Throws SearchFailure if the winding numbers never settle.
std::vector<SingularityReport> find_bound_states(const PotentialSpec& p, const SearchBox& box,
                                                 const RootSearchOptions& opts = {});

/// Transfer matrix of the conjugate-reflected system: (M^{-1})^*, which for
/// det M = 1 is entrywise (m22*, -m12*; -m21*, m11*).  Exact involution.
TransferMatrix pt_transform_matrix(const TransferMatrix& m);

/// Max-norm distance between M and its conjugate-reflected transform; zero
/// certifies M^{-1} = M^* at this wavenumber.
double pt_symmetry_residual(const TransferMatrix& m);

/// (|Re(r_left/t)|, |Re(r_right/t)|).  Both vanish exactly when the
/// reflections are collinear phasors perpendicular to the transmission,
/// i.e. arg r - arg t = +-pi/2; a vanishing reflection contributes zero.
std::pair<double, double> phasor_residuals(const ScatterCoefficients& c);

enum class InvisibilityLabel {
  LeftInvisible,
  RightInvisible,
  LeftReflectionless,
  RightReflectionless,
  NotInvisible,
};

std::string to_string(InvisibilityLabel label);

/// Residuals are (|m11-1|, |m22-1|, |m12|, |m21|).  A side is reflectionless
/// when its reflection entry is below tol_unit while the opposite off-diagonal
/// exceeds tol_nonzero; "invisible" additionally requires unit diagonal within
/// tol_unit.  Transparency from both sides is NotInvisible: unidirectionality
/// demands the other reflection survive.  One-sided verdicts mark the
/// scatterer defective (exceptional point: the scattering matrix has a single
/// eigenvector there, and so does M in the invisible case).
struct InvisibilityVerdict {
  InvisibilityLabel label;
  double residual_m11;
  double residual_m22;
  double abs_m12;
  double abs_m21;
  bool defective;
};

InvisibilityVerdict classify_invisibility(const TransferMatrix& m, double tol_unit = 1e-6,
                                          double tol_nonzero = 1e-3);

}  // namespace ptscatter

#endif
