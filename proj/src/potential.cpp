#include "ptscatter/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "ptscatter/errors.hpp"

namespace ptscatter {

namespace {

constexpr double kGeometryTol = 1e-9;

double family_support_min(const AnalyticFamily& f) {
  if (const auto* s = std::get_if<SlabFamily>(&f)) return s->x0;
  if (const auto* d = std::get_if<PTDimerFamily>(&f)) return -d->d;
  return -std::get<ExpGratingFamily>(f).length / 2.0;
}

double family_support_max(const AnalyticFamily& f) {
  if (const auto* s = std::get_if<SlabFamily>(&f)) return s->x0 + s->d;
  if (const auto* d = std::get_if<PTDimerFamily>(&f)) return d->d;
  return std::get<ExpGratingFamily>(f).length / 2.0;
}

void validate_family(const AnalyticFamily& f) {
  if (const auto* s = std::get_if<SlabFamily>(&f)) {
    if (!(s->d > 0.0) || !is_finite(s->u) || !is_finite(s->x0)) {
      throw ContractViolation("slab family: requires finite u, x0 and d > 0");
    }
  } else if (const auto* d = std::get_if<PTDimerFamily>(&f)) {
    if (!(d->d > 0.0) || !is_finite(d->a) || !is_finite(d->b)) {
      throw ContractViolation("pt_dimer family: requires finite a, b and d > 0");
    }
  } else {
    const auto& g = std::get<ExpGratingFamily>(f);
    if (!(g.length > 0.0) || !(g.beta > 0.0) || !is_finite(g.alpha)) {
      throw ContractViolation("exp_grating family: requires finite alpha, beta > 0, L > 0");
    }
  }
}

}  // namespace

PotentialSpec::PotentialSpec(Variant v) : variant_(std::move(v)) {
  if (const auto* pc = std::get_if<PiecewiseConstant>(&variant_)) {
    if (!pc->segments.empty()) {
      support_min_ = pc->segments.front().x0;
      support_max_ = pc->segments.back().x1;
    }
  } else if (const auto* sp = std::get_if<SampledProfile>(&variant_)) {
    support_min_ = sp->x.front();
    support_max_ = sp->x.back();
  } else {
    const auto& fam = std::get<AnalyticFamily>(variant_);
    support_min_ = family_support_min(fam);
    support_max_ = family_support_max(fam);
  }
}

PotentialSpec PotentialSpec::piecewise(std::vector<Segment> segments) {
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (!(s.x1 > s.x0) || !is_finite(s.x0) || !is_finite(s.x1) || !is_finite(s.u)) {
      throw ContractViolation("piecewise potential: segment widths must be finite and positive");
    }
    if (i > 0 && std::abs(segments[i - 1].x1 - s.x0) > kGeometryTol) {
      throw ContractViolation("piecewise potential: segments must be contiguous left to right");
    }
  }
  return PotentialSpec(Variant{PiecewiseConstant{std::move(segments)}});
}

PotentialSpec PotentialSpec::sampled(std::vector<double> x, std::vector<Complex> u) {
  if (x.size() != u.size() || x.size() < 2) {
    throw ContractViolation("sampled potential: needs matching x/u arrays with >= 2 points");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_finite(x[i]) || !is_finite(u[i])) {
      throw ContractViolation("sampled potential: non-finite entry");
    }
    if (i > 0 && !(x[i] > x[i - 1])) {
      throw ContractViolation("sampled potential: grid must be strictly increasing");
    }
  }
  return PotentialSpec(Variant{SampledProfile{std::move(x), std::move(u)}});
}

PotentialSpec PotentialSpec::analytic(AnalyticFamily family) {
  validate_family(family);
  return PotentialSpec(Variant{std::move(family)});
}

PotentialSpec PotentialSpec::slab(Complex u, double d, double x0) {
  return analytic(AnalyticFamily{SlabFamily{u, d, x0}});
}

Complex PotentialSpec::value_at(double x) const {
  if (x < support_min_ || x >= support_max_) {
    // Sampled profiles include their right endpoint.
    if (const auto* sp = std::get_if<SampledProfile>(&variant_)) {
      if (x == sp->x.back()) return sp->u.back();
    }
    return {0.0, 0.0};
  }
  if (const auto* pc = std::get_if<PiecewiseConstant>(&variant_)) {
    auto it = std::upper_bound(pc->segments.begin(), pc->segments.end(), x,
                               [](double v, const Segment& s) { return v < s.x1; });
    if (it != pc->segments.end() && x >= it->x0) return it->u;
    return {0.0, 0.0};
  }
  if (const auto* sp = std::get_if<SampledProfile>(&variant_)) {
    auto it = std::upper_bound(sp->x.begin(), sp->x.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - sp->x.begin());
    if (hi == 0) return sp->u.front();
    if (hi >= sp->x.size()) return sp->u.back();
    const std::size_t lo = hi - 1;
    const double w = (x - sp->x[lo]) / (sp->x[hi] - sp->x[lo]);
    return sp->u[lo] * (1.0 - w) + sp->u[hi] * w;
  }
  const auto& fam = std::get<AnalyticFamily>(variant_);
  if (const auto* s = std::get_if<SlabFamily>(&fam)) return s->u;
  if (const auto* d = std::get_if<PTDimerFamily>(&fam)) {
    return x < 0.0 ? Complex{d->a, d->b} : Complex{d->a, -d->b};
  }
  const auto& g = std::get<ExpGratingFamily>(fam);
  return g.alpha * std::exp(Complex{0.0, 2.0 * g.beta * x});
}

Complex PotentialSpec::value_on_interval(double x, double lo, double hi) const {
  const double mid = 0.5 * (lo + hi);
  if (mid < support_min_ || mid >= support_max_) return {0.0, 0.0};
  if (std::get_if<PiecewiseConstant>(&variant_)) {
    return value_at(mid);  // constant on the interval
  }
  if (const auto* sp = std::get_if<SampledProfile>(&variant_)) {
    auto it = std::upper_bound(sp->x.begin(), sp->x.end(), mid);
    const std::size_t hi_idx =
        std::min<std::size_t>(static_cast<std::size_t>(it - sp->x.begin()), sp->x.size() - 1);
    const std::size_t lo_idx = hi_idx == 0 ? 0 : hi_idx - 1;
    if (hi_idx == lo_idx) return sp->u[lo_idx];
    const double w = (x - sp->x[lo_idx]) / (sp->x[hi_idx] - sp->x[lo_idx]);
    return sp->u[lo_idx] * (1.0 - w) + sp->u[hi_idx] * w;
  }
  const auto& fam = std::get<AnalyticFamily>(variant_);
  if (const auto* s = std::get_if<SlabFamily>(&fam)) return s->u;
  if (const auto* d = std::get_if<PTDimerFamily>(&fam)) {
    return mid < 0.0 ? Complex{d->a, d->b} : Complex{d->a, -d->b};
  }
  const auto& g = std::get<ExpGratingFamily>(fam);
  return g.alpha * std::exp(Complex{0.0, 2.0 * g.beta * x});
}

std::vector<double> PotentialSpec::breakpoints() const {
  std::vector<double> pts;
  if (const auto* pc = std::get_if<PiecewiseConstant>(&variant_)) {
    for (const Segment& s : pc->segments) pts.push_back(s.x0);
    if (!pc->segments.empty()) pts.push_back(pc->segments.back().x1);
  } else if (const auto* sp = std::get_if<SampledProfile>(&variant_)) {
    pts = sp->x;
  } else {
    const auto& fam = std::get<AnalyticFamily>(variant_);
    pts.push_back(support_min_);
    if (std::holds_alternative<PTDimerFamily>(fam)) pts.push_back(0.0);
    pts.push_back(support_max_);
  }
  return pts;
}

PotentialSpec read_sampled_profile(std::istream& in) {
  std::vector<double> xs;
  std::vector<Complex> us;
  std::string line;
  std::size_t line_no = 0;
  bool first_data_candidate = true;
  while (std::getline(in, line)) {
    ++line_no;
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == ';') c = ' ';
    }
    std::istringstream row(line);
    std::string tok;
    if (!(row >> tok)) continue;  // blank
    if (tok[0] == '#') continue;
    row.clear();
    row.seekg(0);
    double x, re, im;
    if (!(row >> x >> re >> im)) {
      if (first_data_candidate) {
        first_data_candidate = false;  // header line
        continue;
      }
      throw ContractViolation("sampled profile: malformed row at line " + std::to_string(line_no));
    }
    first_data_candidate = false;
    xs.push_back(x);
    us.push_back(Complex{re, im});
  }
  return PotentialSpec::sampled(std::move(xs), std::move(us));
}

PotentialSpec read_sampled_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("sampled profile: cannot open '" + path + "'");
  return read_sampled_profile(in);
}

// ---------------------------------------------------------------------------
// Closed-form slab matrix
// ---------------------------------------------------------------------------

namespace {

// sin(z)/z, stable near z = 0.
Complex cplx_sinc(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

}  // namespace

TransferMatrix slab_transfer(Complex u, double d, Wavenumber kw, double x0) {
  if (!(d > 0.0)) throw ContractViolation("slab_transfer: width must be positive");
  const Complex k = kw.k;
  if (k == Complex{0.0, 0.0}) throw ContractViolation("slab_transfer: k must be nonzero");

  const Complex q2 = k * k - u;
  const Complex qd = std::sqrt(q2) * d;  // branch immaterial below
  const Complex cos_qd = std::cos(qd);
  const Complex sin_over_q = d * cplx_sinc(qd);  // = sin(qd)/q

  const Complex i{0.0, 1.0};
  const Complex sym = (k * k + q2) / (2.0 * k) * sin_over_q;
  const Complex anti = (q2 - k * k) / (2.0 * k) * sin_over_q;
  const Complex edge_phase = std::exp(i * k * (2.0 * x0 + d));

  TransferMatrix m;
  m.m11 = std::exp(-i * k * d) * (cos_qd + i * sym);
  m.m12 = i * anti / edge_phase;
  m.m21 = -i * anti * edge_phase;
  m.m22 = std::exp(i * k * d) * (cos_qd - i * sym);
  m.k = kw;
  return m;
}

// ---------------------------------------------------------------------------
// Adaptive Dormand-Prince 5(4) integration of psi'' = (U - k^2) psi
// ---------------------------------------------------------------------------

namespace {

template <std::size_t N>
using State = std::array<Complex, N>;

// One smooth interval; y advances from x0 to x1 (either direction).
// steps_used accumulates accepted + rejected steps against opts.max_steps.
template <std::size_t N, class Rhs>
void rk45_interval(const Rhs& f, double x0, double x1, State<N>& y,
                   const IntegrationOptions& opts, std::size_t& steps_used, Wavenumber k) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

  if (x1 == x0) return;
  const double dir = x1 > x0 ? 1.0 : -1.0;
  double x = x0;
  double h = x1 - x0;

  State<N> k1, k2, k3, k4, k5, k6, k7, yt, y5;
  f(x, y, k1);  // refreshed from the last stage on accepted steps (FSAL)

  while (dir * (x1 - x) > 0.0) {
    if (std::abs(h) > std::abs(x1 - x)) h = x1 - x;
    if (steps_used++ >= opts.max_steps) {
      throw IntegrationFailure("integrate_transfer: step budget exhausted", k, x, h, steps_used);
    }
    if (std::abs(h) < 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      throw IntegrationFailure("integrate_transfer: step size underflow", k, x, h, steps_used);
    }

    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a21 * k1[i]);
    f(x + c2 * h, yt, k2);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(x + c3 * h, yt, k3);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(x + c4 * h, yt, k4);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(x + c5 * h, yt, k5);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(x + h, yt, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(x + h, y5, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const Complex ei =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(ei) / scale);
    }

    if (err <= 1.0) {
      x += h;
      y = y5;
      k1 = k7;  // first-same-as-last
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h *= std::max(0.2, grow);
    } else {
      // rejected: x and y unchanged, k1 still valid
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
}

std::vector<double> ordered_breakpoints(const PotentialSpec& p, bool forward) {
  std::vector<double> pts = p.breakpoints();
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-14; }),
            pts.end());
  if (!forward) std::reverse(pts.begin(), pts.end());
  return pts;
}

// Integrates interval by interval so every stage sees the smooth branch of U
// active between the surrounding breakpoints.
template <std::size_t N>
void integrate_over_support(const PotentialSpec& p, Complex k2, bool forward, State<N>& y,
                            const IntegrationOptions& opts, Wavenumber k) {
  const std::vector<double> pts = ordered_breakpoints(p, forward);
  std::size_t steps_used = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = std::min(pts[i], pts[i + 1]);
    const double hi = std::max(pts[i], pts[i + 1]);
    auto rhs = [&p, k2, lo, hi](double x, const State<N>& s, State<N>& ds) {
      const Complex c = p.value_on_interval(x, lo, hi) - k2;
      ds[0] = s[1];
      ds[1] = c * s[0];
      if constexpr (N == 4) {
        ds[2] = s[3];
        ds[3] = c * s[2];
      }
    };
    rk45_interval<N>(rhs, pts[i], pts[i + 1], y, opts, steps_used, k);
  }
}

void require_admissible_k(Wavenumber kw, const char* op) {
  const Complex k = kw.k;
  if (k == Complex{0.0, 0.0}) throw ContractViolation(std::string(op) + ": k must be nonzero");
  if (k.imag() == 0.0 && k.real() <= 0.0) {
    throw ContractViolation(std::string(op) + ": real-axis k must satisfy Re k > 0");
  }
}

}  // namespace

TransferMatrix integrate_transfer(const PotentialSpec& p, Wavenumber kw,
                                  const IntegrationOptions& opts) {
  require_admissible_k(kw, "integrate_transfer");
  if (p.empty_support()) return TransferMatrix::identity(kw);

  const Complex k = kw.k;
  const double a = p.support_min();
  const double b = p.support_max();

  // Fundamental propagator: columns are the solutions with (psi, psi') equal
  // to (1,0) and (0,1) at the left edge.
  State<4> y{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}};
  integrate_over_support<4>(p, k * k, /*forward=*/true, y, opts, kw);
  const Complex f11 = y[0], f12 = y[2];
  const Complex f21 = y[1], f22 = y[3];

  // M = P^{-1}(b) * Phi * P(a) with P(x) the plane-wave matching matrix
  // [[e^{ikx}, e^{-ikx}], [ik e^{ikx}, -ik e^{-ikx}]].
  const Complex i{0.0, 1.0};
  const Complex ea_p = std::exp(i * k * a), ea_m = std::exp(-i * k * a);
  const Complex eb_p = std::exp(i * k * b), eb_m = std::exp(-i * k * b);
  const Complex two_ik = 2.0 * i * k;

  // Phi * P(a)
  const Complex g11 = f11 * ea_p + f12 * (i * k * ea_p);
  const Complex g12 = f11 * ea_m + f12 * (-i * k * ea_m);
  const Complex g21 = f21 * ea_p + f22 * (i * k * ea_p);
  const Complex g22 = f21 * ea_m + f22 * (-i * k * ea_m);

  TransferMatrix m;
  m.m11 = eb_m * (g11 / 2.0 + g21 / two_ik);
  m.m12 = eb_m * (g12 / 2.0 + g22 / two_ik);
  m.m21 = eb_p * (g11 / 2.0 - g21 / two_ik);
  m.m22 = eb_p * (g12 / 2.0 - g22 / two_ik);
  m.k = kw;
  return m;
}

TransferMatrix transfer_of_potential(const PotentialSpec& p, Wavenumber kw,
                                     const IntegrationOptions& opts) {
  require_admissible_k(kw, "transfer_of_potential");
  if (p.empty_support()) return TransferMatrix::identity(kw);
  if (const auto* pc = std::get_if<PiecewiseConstant>(&p.variant())) {
    TransferMatrix acc = TransferMatrix::identity(kw);
    for (const Segment& s : pc->segments) {
      acc = compose(acc, slab_transfer(s.u, s.x1 - s.x0, kw, s.x0));
    }
    return acc;
  }
  return integrate_transfer(p, kw, opts);
}

std::pair<Complex, Complex> direct_transmissions(const PotentialSpec& p, Wavenumber kw,
                                                 const IntegrationOptions& opts) {
  require_admissible_k(kw, "direct_transmissions");
  if (p.empty_support()) return {Complex{1.0}, Complex{1.0}};

  const Complex k = kw.k;
  const Complex i{0.0, 1.0};
  const double a = p.support_min();
  const double b = p.support_max();

  // Left incidence: pure transmitted wave e^{+ikx} on the right, integrated
  // backwards; the incident amplitude at the left edge normalizes t.
  Complex t_left;
  {
    State<2> y{std::exp(i * k * b), i * k * std::exp(i * k * b)};
    integrate_over_support<2>(p, k * k, /*forward=*/false, y, opts, kw);
    const Complex incident = std::exp(-i * k * a) * (y[0] / 2.0 + y[1] / (2.0 * i * k));
    t_left = 1.0 / incident;
  }

  // Right incidence: pure transmitted wave e^{-ikx} on the left, integrated
  // forwards.
  Complex t_right;
  {
    State<2> y{std::exp(-i * k * a), -i * k * std::exp(-i * k * a)};
    integrate_over_support<2>(p, k * k, /*forward=*/true, y, opts, kw);
    const Complex incident = std::exp(i * k * b) * (y[0] / 2.0 - y[1] / (2.0 * i * k));
    t_right = 1.0 / incident;
  }

  return {t_left, t_right};
}

// ---------------------------------------------------------------------------
// PT reflection
// ---------------------------------------------------------------------------

PotentialSpec pt_reflect_potential(const PotentialSpec& p) {
  if (const auto* pc = std::get_if<PiecewiseConstant>(&p.variant())) {
    std::vector<Segment> out;
    out.reserve(pc->segments.size());
    for (auto it = pc->segments.rbegin(); it != pc->segments.rend(); ++it) {
      out.push_back(Segment{-it->x1, -it->x0, std::conj(it->u)});
    }
    return PotentialSpec::piecewise(std::move(out));
  }
  if (const auto* sp = std::get_if<SampledProfile>(&p.variant())) {
    const std::size_t n = sp->x.size();
    std::vector<double> xs(n);
    std::vector<Complex> us(n);
    for (std::size_t j = 0; j < n; ++j) {
      xs[j] = -sp->x[n - 1 - j];
      us[j] = std::conj(sp->u[n - 1 - j]);
    }
    return PotentialSpec::sampled(std::move(xs), std::move(us));
  }
  const auto& fam = std::get<AnalyticFamily>(p.variant());
  if (const auto* s = std::get_if<SlabFamily>(&fam)) {
    return PotentialSpec::slab(std::conj(s->u), s->d, -s->x0 - s->d);
  }
  if (const auto* d = std::get_if<PTDimerFamily>(&fam)) {
    return PotentialSpec::analytic(AnalyticFamily{*d});  // conjugate-even already
  }
  const auto& g = std::get<ExpGratingFamily>(fam);
  return PotentialSpec::analytic(
      AnalyticFamily{ExpGratingFamily{std::conj(g.alpha), g.beta, g.length}});
}

bool is_pt_symmetric_potential(const PotentialSpec& p, double tol) {
  const PotentialSpec q = pt_reflect_potential(p);

  std::vector<double> knots = p.breakpoints();
  for (double x : q.breakpoints()) knots.push_back(x);
  if (knots.empty()) return true;
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-14; }),
              knots.end());

  double worst = 0.0;
  constexpr int kSamplesPerInterval = 256;
  for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
    const double lo = knots[j], hi = knots[j + 1];
    for (int s = 0; s < kSamplesPerInterval; ++s) {
      const double x = lo + (hi - lo) * (s + 0.5) / kSamplesPerInterval;
      worst = std::max(worst, std::abs(p.value_at(x) - q.value_at(x)));
      if (worst > tol) return false;
    }
  }
  return worst <= tol;
}

}  // namespace ptscatter
