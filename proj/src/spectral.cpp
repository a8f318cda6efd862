#include "ptscatter/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "ptscatter/errors.hpp"

namespace ptscatter {

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

SpectrumScan scan_spectrum(const PotentialSpec& p, double k_min, double k_max, std::size_t n,
                           const IntegrationOptions& opts, unsigned threads) {
  if (!(k_min > 0.0) || !(k_max > k_min) || n < 2) {
    throw ContractViolation("scan_spectrum: requires 0 < k_min < k_max and n >= 2");
  }

  SpectrumScan scan;
  scan.rows.resize(n);
  const double dk = (k_max - k_min) / static_cast<double>(n - 1);

  auto compute_row = [&](std::size_t i) {
    const double k = k_min + dk * static_cast<double>(i);
    SpectrumSample row;
    row.k = k;
    row.matrix = transfer_of_potential(p, Wavenumber(k), opts);
    row.m22_abs = std::abs(row.matrix.m22);
    try {
      row.coefficients = coefficients_from_transfer(row.matrix);
    } catch (const SpectralSingularityError&) {
      row.coefficients.reset();  // flagged, not stored as infinities
    }
    scan.rows[i] = std::move(row);
  };

  const unsigned pool = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (pool == 1) {
    for (std::size_t i = 0; i < n; ++i) compute_row(i);
    return scan;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(pool);
  for (unsigned w = 0; w < pool; ++w) {
    workers.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += pool) compute_row(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return scan;
}

// ---------------------------------------------------------------------------
// Root finding on m22
// ---------------------------------------------------------------------------

namespace {

Complex m22_at(const PotentialSpec& p, Complex k, const IntegrationOptions& opts) {
  return transfer_of_potential(p, Wavenumber(k), opts).m22;
}

// Central-difference derivative along the real direction; valid for analytic
// functions whichever direction the step points.
Complex m22_derivative(const PotentialSpec& p, Complex k, const IntegrationOptions& opts) {
  const double h = 1e-7 * std::max(1.0, std::abs(k));
  return (m22_at(p, k + h, opts) - m22_at(p, k - h, opts)) / (2.0 * h);
}

struct PolishResult {
  Complex k;
  double residual;
  bool converged;
};

PolishResult polish_real_axis(const PotentialSpec& p, double k0, double step_cap,
                              const RootSearchOptions& opts) {
  double k = k0;
  Complex f = m22_at(p, k, opts.integration);
  double best = std::abs(f);
  double best_k = k;
  for (std::size_t it = 0; it < opts.max_newton_iter; ++it) {
    if (best < 1e-13) break;
    const Complex df = m22_derivative(p, Complex{k, 0.0}, opts.integration);
    if (!is_finite(df) || std::abs(df) == 0.0) break;
    double dk = (f / df).real();  // restricted to the real axis
    if (!std::isfinite(dk)) break;
    dk = std::clamp(dk, -step_cap, step_cap);
    k -= dk;
    if (!(k > 0.0)) break;
    f = m22_at(p, k, opts.integration);
    const double res = std::abs(f);
    if (res < best) {
      best = res;
      best_k = k;
    } else if (std::abs(dk) < 1e-15 * std::max(1.0, std::abs(k))) {
      break;
    }
  }
  return PolishResult{Complex{best_k, 0.0}, best, best <= opts.residual_tol};
}

PolishResult polish_complex(const PotentialSpec& p, Complex k0, double step_cap,
                            const RootSearchOptions& opts) {
  Complex k = k0;
  Complex f = m22_at(p, k, opts.integration);
  double best = std::abs(f);
  Complex best_k = k;
  for (std::size_t it = 0; it < opts.max_newton_iter; ++it) {
    if (best < 1e-14) break;
    const Complex df = m22_derivative(p, k, opts.integration);
    if (!is_finite(df) || std::abs(df) == 0.0) break;
    Complex dk = f / df;
    if (!is_finite(dk)) break;
    if (std::abs(dk) > step_cap) dk *= step_cap / std::abs(dk);
    k -= dk;
    f = m22_at(p, k, opts.integration);
    const double res = std::abs(f);
    if (res < best) {
      best = res;
      best_k = k;
    } else if (std::abs(dk) < 1e-15 * std::max(1.0, std::abs(k))) {
      break;
    }
  }
  return PolishResult{best_k, best, best <= opts.residual_tol};
}

void merge_report(std::vector<SingularityReport>& reports, const SingularityReport& candidate,
                  double merge_tol) {
  for (SingularityReport& r : reports) {
    if (std::abs(r.k_star - candidate.k_star) <= merge_tol) {
      if (candidate.residual < r.residual) r = candidate;
      return;
    }
  }
  reports.push_back(candidate);
}

}  // namespace

std::vector<SingularityReport> find_spectral_singularities(const PotentialSpec& p, double k_min,
                                                           double k_max,
                                                           const RootSearchOptions& opts) {
  if (!(k_min > 0.0) || !(k_max > k_min)) {
    throw ContractViolation("find_spectral_singularities: requires 0 < k_min < k_max");
  }

  const std::size_t n = std::max<std::size_t>(opts.grid_n, 8);
  const double dk = (k_max - k_min) / static_cast<double>(n - 1);
  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) {
    mag[i] = std::abs(m22_at(p, Complex{k_min + dk * static_cast<double>(i), 0.0},
                             opts.integration));
  }

  std::vector<SingularityReport> reports;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || mag[i] <= mag[i - 1];
    const bool right_ok = i + 1 == n || mag[i] <= mag[i + 1];
    if (!(left_ok && right_ok)) continue;
    const double k0 = k_min + dk * static_cast<double>(i);
    const PolishResult pol = polish_real_axis(p, k0, 2.0 * dk, opts);
    if (!pol.converged) continue;
    const double ks = pol.k.real();
    if (ks < k_min - dk || ks > k_max + dk || !(ks > 0.0)) continue;
    merge_report(reports,
                 SingularityReport{Complex{ks, 0.0}, pol.residual,
                                   SingularityKind::SpectralSingularity},
                 opts.merge_tol);
  }
  std::sort(reports.begin(), reports.end(),
            [](const SingularityReport& a, const SingularityReport& b) {
              return a.k_star.real() < b.k_star.real();
            });
  return reports;
}

// ---------------------------------------------------------------------------
// Argument-principle bound-state search
// ---------------------------------------------------------------------------

namespace {

struct WindingContext {
  const PotentialSpec& p;
  const RootSearchOptions& opts;
  std::size_t evals = 0;
  std::size_t budget = 200000;

  Complex eval(Complex k) {
    if (++evals > budget) {
      throw SearchFailure("find_bound_states: evaluation budget exhausted");
    }
    return m22_at(p, k, opts.integration);
  }
};

// Accumulated phase change along the segment [za, zb], refining wherever a
// single hop turns by more than pi/2 so the unwrapping stays unambiguous.
double phase_change(WindingContext& ctx, Complex za, Complex fa, Complex zb, Complex fb,
                    int depth) {
  const double d = std::arg(fb / fa);
  if (std::abs(d) <= 1.570796326794896) return d;
  if (depth >= 48) {
    throw SearchFailure("find_bound_states: phase unwrapping did not settle (zero on contour?)");
  }
  const Complex zm = 0.5 * (za + zb);
  const Complex fm = ctx.eval(zm);
  if (std::abs(fm) == 0.0) {
    throw SearchFailure("find_bound_states: exact zero on contour");
  }
  return phase_change(ctx, za, fa, zm, fm, depth + 1) +
         phase_change(ctx, zm, fm, zb, fb, depth + 1);
}

int winding_number(WindingContext& ctx, const SearchBox& box) {
  const Complex corners[5] = {
      {box.re_min, box.im_min}, {box.re_max, box.im_min}, {box.re_max, box.im_max},
      {box.re_min, box.im_max}, {box.re_min, box.im_min}};
  constexpr int kBaseSamples = 12;
  double total = 0.0;
  Complex z_prev = corners[0];
  Complex f_prev = ctx.eval(z_prev);
  for (int e = 0; e < 4; ++e) {
    for (int s = 1; s <= kBaseSamples; ++s) {
      const double w = static_cast<double>(s) / kBaseSamples;
      const Complex z = corners[e] + w * (corners[e + 1] - corners[e]);
      const Complex f = ctx.eval(z);
      total += phase_change(ctx, z_prev, f_prev, z, f, 0);
      z_prev = z;
      f_prev = f;
    }
  }
  const double turns = total / (2.0 * 3.14159265358979323846);
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > 0.2) {
    throw SearchFailure("find_bound_states: winding number off by more than 0.2");
  }
  return static_cast<int>(nearest);
}

// Winding with small deterministic box perturbations, in case the contour
// grazes a zero.
int robust_winding(WindingContext& ctx, SearchBox& box) {
  static constexpr double kNudges[] = {0.0, 0.013, -0.027};
  std::string last_error;
  for (double nudge : kNudges) {
    SearchBox trial = box;
    const double dre = (box.re_max - box.re_min) * nudge;
    const double dim = (box.im_max - box.im_min) * nudge;
    trial.re_min -= dre;
    trial.re_max += dre;
    trial.im_min = std::max(1e-12, trial.im_min - dim);
    trial.im_max += dim;
    try {
      const int w = winding_number(ctx, trial);
      box = trial;
      return w;
    } catch (const SearchFailure& err) {
      last_error = err.what();
    }
  }
  throw SearchFailure(last_error);
}

void search_box(WindingContext& ctx, SearchBox box, int depth,
                std::vector<SingularityReport>& found) {
  const int w = robust_winding(ctx, box);
  if (w == 0) return;
  const double wide = box.re_max - box.re_min;
  const double tall = box.im_max - box.im_min;

  if ((w == 1 && std::max(wide, tall) < 0.08) || depth >= 40) {
    if (depth >= 40 && !(w == 1 && std::max(wide, tall) < 0.25)) {
      throw SearchFailure("find_bound_states: could not isolate zeros after max subdivisions");
    }
    const Complex center{0.5 * (box.re_min + box.re_max), 0.5 * (box.im_min + box.im_max)};
    const PolishResult pol =
        polish_complex(ctx.p, center, 2.0 * std::max(wide, tall), ctx.opts);
    if (!pol.converged) {
      throw SearchFailure("find_bound_states: Newton polish failed inside an isolating box");
    }
    found.push_back(
        SingularityReport{pol.k, pol.residual, SingularityKind::BoundState});
    return;
  }

  SearchBox a = box, b = box;
  if (wide >= tall) {
    const double mid = 0.5 * (box.re_min + box.re_max);
    a.re_max = mid;
    b.re_min = mid;
  } else {
    const double mid = 0.5 * (box.im_min + box.im_max);
    a.im_max = mid;
    b.im_min = mid;
  }
  search_box(ctx, a, depth + 1, found);
  search_box(ctx, b, depth + 1, found);
}

}  // namespace

std::vector<SingularityReport> find_bound_states(const PotentialSpec& p, const SearchBox& box,
                                                 const RootSearchOptions& opts) {
  if (!(box.im_min > 0.0) || !(box.im_max > box.im_min) || !(box.re_max > box.re_min)) {
    throw ContractViolation("find_bound_states: box must lie strictly in the upper half plane");
  }

  WindingContext ctx{p, opts};
  std::vector<SingularityReport> raw;
  search_box(ctx, box, 0, raw);

  std::vector<SingularityReport> reports;
  for (const SingularityReport& r : raw) {
    if (r.k_star.imag() <= 0.0) continue;
    if (r.residual > opts.residual_tol) continue;
    merge_report(reports, r, opts.merge_tol);
  }
  std::sort(reports.begin(), reports.end(),
            [](const SingularityReport& a, const SingularityReport& b) {
              return a.k_star.imag() < b.k_star.imag();
            });
  return reports;
}

// ---------------------------------------------------------------------------
// PT symmetry and invisibility
// ---------------------------------------------------------------------------

TransferMatrix pt_transform_matrix(const TransferMatrix& m) {
  TransferMatrix r;
  r.m11 = std::conj(m.m22);
  r.m12 = -std::conj(m.m12);
  r.m21 = -std::conj(m.m21);
  r.m22 = std::conj(m.m11);
  r.k = m.k;
  return r;
}

double pt_symmetry_residual(const TransferMatrix& m) {
  return max_abs_diff(pt_transform_matrix(m), m);
}

std::pair<double, double> phasor_residuals(const ScatterCoefficients& c) {
  if (c.t == Complex{0.0, 0.0}) {
    throw ContractViolation("phasor_residuals: t must be nonzero");
  }
  return {std::abs((c.r_left / c.t).real()), std::abs((c.r_right / c.t).real())};
}

std::string to_string(InvisibilityLabel label) {
  switch (label) {
    case InvisibilityLabel::LeftInvisible: return "LeftInvisible";
    case InvisibilityLabel::RightInvisible: return "RightInvisible";
    case InvisibilityLabel::LeftReflectionless: return "LeftReflectionless";
    case InvisibilityLabel::RightReflectionless: return "RightReflectionless";
    case InvisibilityLabel::NotInvisible: return "NotInvisible";
  }
  return "NotInvisible";
}

InvisibilityVerdict classify_invisibility(const TransferMatrix& m, double tol_unit,
                                          double tol_nonzero) {
  InvisibilityVerdict v;
  v.residual_m11 = std::abs(m.m11 - 1.0);
  v.residual_m22 = std::abs(m.m22 - 1.0);
  v.abs_m12 = std::abs(m.m12);
  v.abs_m21 = std::abs(m.m21);

  const bool unit_diagonal = v.residual_m11 <= tol_unit && v.residual_m22 <= tol_unit;
  // r_left = -m21/m22 vanishes with m21; r_right = m12/m22 vanishes with m12.
  const bool left_zero = v.abs_m21 <= tol_unit && v.abs_m12 > tol_nonzero;
  const bool right_zero = v.abs_m12 <= tol_unit && v.abs_m21 > tol_nonzero;

  if (left_zero) {
    v.label = unit_diagonal ? InvisibilityLabel::LeftInvisible
                            : InvisibilityLabel::LeftReflectionless;
    v.defective = true;
  } else if (right_zero) {
    v.label = unit_diagonal ? InvisibilityLabel::RightInvisible
                            : InvisibilityLabel::RightReflectionless;
    v.defective = true;
  } else {
    v.label = InvisibilityLabel::NotInvisible;
    v.defective = false;
  }
  return v;
}

}  // namespace ptscatter
