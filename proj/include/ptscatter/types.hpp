#ifndef PTSCATTER_TYPES_HPP
#define PTSCATTER_TYPES_HPP

#include <cmath>
#include <complex>

namespace ptscatter {

using Complex = std::complex<double>;

inline constexpr Complex kImaginaryUnit{0.0, 1.0};

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Wavenumber k; the energy is k^2 and is never stored separately.
/// Scattering quantities live on the positive real axis, bound-state
/// searches in the upper half plane.
struct Wavenumber {
  Complex k{1.0, 0.0};

  constexpr Wavenumber() = default;
  constexpr explicit Wavenumber(double v) : k(v, 0.0) {}
  constexpr explicit Wavenumber(Complex v) : k(v) {}

  Complex energy() const { return k * k; }

  bool on_positive_real_axis(double tol = 1e-12) const {
    return k.real() > 0.0 && std::abs(k.imag()) <= tol * std::max(1.0, std::abs(k.real()));
  }
  bool in_upper_half_plane() const { return k.imag() > 0.0; }
};

inline bool same_wavenumber(const Wavenumber& a, const Wavenumber& b) {
  const double scale = std::max({1.0, std::abs(a.k), std::abs(b.k)});
  return std::abs(a.k - b.k) <= 1e-12 * scale;
}

/// Right-/left-moving plane-wave amplitudes on one side of a scatterer,
/// referenced to the global origin x = 0.
struct WaveAmplitudes {
  Complex plus{0.0, 0.0};
  Complex minus{0.0, 0.0};
};

}  // namespace ptscatter

#endif
