#include "ptscatter/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ptscatter/errors.hpp"
#include "ptscatter/lorentz.hpp"
#include "ptscatter/moebius.hpp"

namespace ptscatter::cli {

namespace {


using ordered_json = nlohmann::ordered_json;

constexpr const char* kDivergent = "divergent";

ordered_json json_double(double v) {
  if (!std::isfinite(v)) return ordered_json(kDivergent);
  return ordered_json(v);
}

ordered_json json_complex(Complex z) {
  if (!is_finite(z)) return ordered_json(kDivergent);
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json json_point(const RiemannPoint& p) {
  if (p.infinite) return ordered_json("inf");
  return json_complex(p.w);
}

struct CsvWriter {
  std::ostringstream out;

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(fields[i]);
    }
    out << '\n';
  }
  std::string str() const { return out.str(); }
};

std::string fmt_complex_csv(Complex z, std::vector<std::string>& fields) {
  // two columns, re then im
  if (!is_finite(z)) {
    fields.push_back(kDivergent);
    fields.push_back(kDivergent);
    return {};
  }
  fields.push_back(format_double(z.real()));
  fields.push_back(format_double(z.imag()));
  return {};
}

const KRange& require_k_range(const RunConfig& cfg, const char* cmd) {
  if (!cfg.k_range) {
    throw ConfigError(std::string("config.k_range: required by the ") + cmd + " command");
  }
  return *cfg.k_range;
}

std::vector<double> k_grid(const KRange& r) {
  std::vector<double> ks(r.n);
  if (r.n == 1) {
    ks[0] = r.min;
    return ks;
  }
  const double dk = (r.max - r.min) / static_cast<double>(r.n - 1);
  for (std::size_t i = 0; i < r.n; ++i) ks[i] = r.min + dk * static_cast<double>(i);
  return ks;
}

IntegrationOptions integration_options(const RunConfig& cfg) {
  IntegrationOptions opts;
  opts.rel_tol = cfg.tolerances.integration;
  opts.abs_tol = std::min(1e-12, cfg.tolerances.integration);
  return opts;
}

RootSearchOptions root_options(const RunConfig& cfg) {
  RootSearchOptions opts;
  opts.residual_tol = cfg.tolerances.root_residual;
  opts.integration = integration_options(cfg);
  return opts;
}

OutputFormat effective_format(const RunConfig& cfg, Command cmd) {
  if (cfg.format) return *cfg.format;
  return cmd == Command::Geometry ? OutputFormat::Json : OutputFormat::Csv;
}

std::string dump_json(const ordered_json& doc) { return doc.dump(2) + "\n"; }

// --- spectrum ---------------------------------------------------------------

std::string cmd_spectrum(const RunConfig& cfg) {
  const KRange& kr = require_k_range(cfg, "spectrum");
  if (kr.n < 2) throw ConfigError("config.k_range.n: spectrum needs n >= 2");
  const SpectrumScan scan = scan_spectrum(cfg.potential, kr.min, kr.max, kr.n,
                                          integration_options(cfg), spectrum_pool_width());

  if (effective_format(cfg, Command::Spectrum) == OutputFormat::Csv) {
    CsvWriter w;
    w.row({"k", "t_re", "t_im", "r_left_re", "r_left_im", "r_right_re", "r_right_im",
           "abs_m22", "pt_residual", "invisibility"});
    for (const SpectrumSample& s : scan.rows) {
      std::vector<std::string> f;
      f.push_back(format_double(s.k));
      if (s.coefficients) {
        fmt_complex_csv(s.coefficients->t, f);
        fmt_complex_csv(s.coefficients->r_left, f);
        fmt_complex_csv(s.coefficients->r_right, f);
      } else {
        for (int i = 0; i < 6; ++i) f.push_back(kDivergent);
      }
      f.push_back(format_double(s.m22_abs));
      f.push_back(format_double(pt_symmetry_residual(s.matrix)));
      f.push_back(to_string(
          classify_invisibility(s.matrix, cfg.tolerances.tol_unit, cfg.tolerances.tol_nonzero)
              .label));
      w.row(f);
    }
    return w.str();
  }

  ordered_json rows = ordered_json::array();
  for (const SpectrumSample& s : scan.rows) {
    ordered_json r;
    r["k"] = s.k;
    r["t"] = s.coefficients ? json_complex(s.coefficients->t) : ordered_json(kDivergent);
    r["r_left"] = s.coefficients ? json_complex(s.coefficients->r_left) : ordered_json(kDivergent);
    r["r_right"] = s.coefficients ? json_complex(s.coefficients->r_right) : ordered_json(kDivergent);
    r["abs_m22"] = json_double(s.m22_abs);
    r["pt_residual"] = json_double(pt_symmetry_residual(s.matrix));
    r["invisibility"] = to_string(
        classify_invisibility(s.matrix, cfg.tolerances.tol_unit, cfg.tolerances.tol_nonzero)
            .label);
    rows.push_back(std::move(r));
  }
  ordered_json doc;
  doc["command"] = "spectrum";
  doc["rows"] = std::move(rows);
  return dump_json(doc);
}

// --- singularities / boundstates ---------------------------------------------

std::string kind_name(SingularityKind k) {
  return k == SingularityKind::SpectralSingularity ? "SpectralSingularity" : "BoundState";
}

std::string report_roots(const std::vector<SingularityReport>& roots, const RunConfig& cfg,
                         Command cmd, const char* command_name) {
  if (effective_format(cfg, cmd) == OutputFormat::Csv) {
    CsvWriter w;
    w.row({"kind", "k_re", "k_im", "residual"});
    for (const SingularityReport& r : roots) {
      w.row({kind_name(r.kind), format_double(r.k_star.real()),
             format_double(r.k_star.imag()), format_double(r.residual)});
    }
    return w.str();
  }
  ordered_json rows = ordered_json::array();
  for (const SingularityReport& r : roots) {
    ordered_json row;
    row["kind"] = kind_name(r.kind);
    row["k"] = json_complex(r.k_star);
    row["residual"] = json_double(r.residual);
    rows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["command"] = command_name;
  doc["rows"] = std::move(rows);
  return dump_json(doc);
}

std::string cmd_singularities(const RunConfig& cfg) {
  const KRange& kr = require_k_range(cfg, "singularities");
  if (!(kr.max > kr.min)) throw ConfigError("config.k_range: singularities needs max > min");
  const auto roots =
      find_spectral_singularities(cfg.potential, kr.min, kr.max, root_options(cfg));
  return report_roots(roots, cfg, Command::Singularities, "singularities");
}

std::string cmd_boundstates(const RunConfig& cfg) {
  if (!cfg.bound_box) {
    throw ConfigError("config.bound_box: required by the boundstates command");
  }
  const auto roots = find_bound_states(cfg.potential, *cfg.bound_box, root_options(cfg));
  return report_roots(roots, cfg, Command::BoundStates, "boundstates");
}

// --- invisibility -------------------------------------------------------------

std::string cmd_invisibility(const RunConfig& cfg) {
  const KRange& kr = require_k_range(cfg, "invisibility");
  const IntegrationOptions opts = integration_options(cfg);

  struct Row {
    double k;
    InvisibilityVerdict v;
  };
  std::vector<Row> rows;
  for (double k : k_grid(kr)) {
    const TransferMatrix m = transfer_of_potential(cfg.potential, Wavenumber(k), opts);
    rows.push_back(
        Row{k, classify_invisibility(m, cfg.tolerances.tol_unit, cfg.tolerances.tol_nonzero)});
  }

  if (effective_format(cfg, Command::Invisibility) == OutputFormat::Csv) {
    CsvWriter w;
    w.row({"k", "res_m11", "res_m22", "abs_m12", "abs_m21", "label", "defective"});
    for (const Row& r : rows) {
      w.row({format_double(r.k), format_double(r.v.residual_m11),
             format_double(r.v.residual_m22), format_double(r.v.abs_m12),
             format_double(r.v.abs_m21), to_string(r.v.label),
             r.v.defective ? "true" : "false"});
    }
    return w.str();
  }
  ordered_json jrows = ordered_json::array();
  for (const Row& r : rows) {
    ordered_json row;
    row["k"] = r.k;
    row["residuals"] = ordered_json::array({json_double(r.v.residual_m11),
                                            json_double(r.v.residual_m22),
                                            json_double(r.v.abs_m12),
                                            json_double(r.v.abs_m21)});
    row["label"] = to_string(r.v.label);
    row["defective"] = r.v.defective;
    jrows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["command"] = "invisibility";
  doc["rows"] = std::move(jrows);
  return dump_json(doc);
}

// --- symmetry -------------------------------------------------------------------

std::string cmd_symmetry(const RunConfig& cfg) {
  const KRange& kr = require_k_range(cfg, "symmetry");
  const IntegrationOptions opts = integration_options(cfg);

  struct Row {
    double k;
    double pt_residual;
    double phasor_left;
    double phasor_right;
    bool singular;
  };
  std::vector<Row> rows;
  for (double k : k_grid(kr)) {
    const TransferMatrix m = transfer_of_potential(cfg.potential, Wavenumber(k), opts);
    Row row{k, pt_symmetry_residual(m), 0.0, 0.0, false};
    try {
      const auto [pl, pr] = phasor_residuals(coefficients_from_transfer(m));
      row.phasor_left = pl;
      row.phasor_right = pr;
    } catch (const SpectralSingularityError&) {
      row.singular = true;
    }
    rows.push_back(row);
  }

  if (effective_format(cfg, Command::Symmetry) == OutputFormat::Csv) {
    CsvWriter w;
    w.row({"k", "pt_residual", "phasor_left", "phasor_right"});
    for (const Row& r : rows) {
      w.row({format_double(r.k), format_double(r.pt_residual),
             r.singular ? kDivergent : format_double(r.phasor_left),
             r.singular ? kDivergent : format_double(r.phasor_right)});
    }
    return w.str();
  }
  ordered_json jrows = ordered_json::array();
  for (const Row& r : rows) {
    ordered_json row;
    row["k"] = r.k;
    row["pt_residual"] = json_double(r.pt_residual);
    row["phasor_left"] = r.singular ? ordered_json(kDivergent) : json_double(r.phasor_left);
    row["phasor_right"] = r.singular ? ordered_json(kDivergent) : json_double(r.phasor_right);
    jrows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["command"] = "symmetry";
  doc["rows"] = std::move(jrows);
  return dump_json(doc);
}

// --- geometry ---------------------------------------------------------------------

std::string cmd_geometry(const RunConfig& cfg) {
  const KRange& kr = require_k_range(cfg, "geometry");
  const IntegrationOptions opts = integration_options(cfg);

  struct Row {
    double k;
    TransferMatrix m;
    LorentzMatrix lambda;
    MoebiusClassification moebius;
  };
  std::vector<Row> rows;
  for (double k : k_grid(kr)) {
    Row r;
    r.k = k;
    r.m = transfer_of_potential(cfg.potential, Wavenumber(k), opts);
    r.lambda = lorentz_from_transfer(r.m);
    r.moebius = classify_mobius(r.m);
    rows.push_back(std::move(r));
  }

  if (effective_format(cfg, Command::Geometry) == OutputFormat::Csv) {
    CsvWriter w;
    std::vector<std::string> header{"k", "label", "trace_sq_re", "trace_sq_im",
                                    "canonical_re", "canonical_im"};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        header.push_back("lambda" + std::to_string(i) + std::to_string(j));
    w.row(header);
    for (const Row& r : rows) {
      std::vector<std::string> f{format_double(r.k), to_string(r.moebius.type)};
      fmt_complex_csv(r.moebius.trace_sq, f);
      fmt_complex_csv(r.moebius.canonical_parameter, f);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) f.push_back(format_double(r.lambda.a[i][j]));
      w.row(f);
    }
    return w.str();
  }

  ordered_json jrows = ordered_json::array();
  for (const Row& r : rows) {
    ordered_json row;
    row["k"] = r.k;
    row["transfer"] = ordered_json{{"m11", json_complex(r.m.m11)},
                                   {"m12", json_complex(r.m.m12)},
                                   {"m21", json_complex(r.m.m21)},
                                   {"m22", json_complex(r.m.m22)}};
    row["det"] = json_complex(r.m.det());
    ordered_json lam = ordered_json::array();
    for (int i = 0; i < 4; ++i) {
      ordered_json lrow = ordered_json::array();
      for (int j = 0; j < 4; ++j) lrow.push_back(json_double(r.lambda.a[i][j]));
      lam.push_back(std::move(lrow));
    }
    row["lorentz"] = std::move(lam);
    row["lorentz_defect"] = json_double(lorentz_defect(r.lambda));
    ordered_json fixed = ordered_json::array();
    fixed.push_back(json_point(r.moebius.fixed_first));
    if (r.moebius.fixed_second) fixed.push_back(json_point(*r.moebius.fixed_second));
    row["moebius"] = ordered_json{{"label", to_string(r.moebius.type)},
                                  {"trace_sq", json_complex(r.moebius.trace_sq)},
                                  {"fixed_points", std::move(fixed)},
                                  {"canonical_parameter",
                                   json_complex(r.moebius.canonical_parameter)}};
    jrows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["command"] = "geometry";
  doc["rows"] = std::move(jrows);
  return dump_json(doc);
}

// --- compose ---------------------------------------------------------------------

std::string cmd_compose(const RunConfig& cfg) {
  const auto* pc = std::get_if<PiecewiseConstant>(&cfg.potential.variant());
  if (!pc || pc->segments.empty()) {
    throw ConfigError(
        "config.potential: the compose command needs an inline segments stack");
  }
  const KRange& kr = require_k_range(cfg, "compose");

  struct Row {
    double k;
    TransferMatrix m;
    std::optional<ScatterCoefficients> coefficients;
  };
  std::vector<Row> rows;
  for (double k : k_grid(kr)) {
    Row r;
    r.k = k;
    r.m = TransferMatrix::identity(Wavenumber(k));
    for (const Segment& s : pc->segments) {
      r.m = compose(r.m, slab_transfer(s.u, s.x1 - s.x0, Wavenumber(k), s.x0));
    }
    try {
      r.coefficients = coefficients_from_transfer(r.m);
    } catch (const SpectralSingularityError&) {
      r.coefficients.reset();
    }
    rows.push_back(std::move(r));
  }

  if (effective_format(cfg, Command::Compose) == OutputFormat::Csv) {
    CsvWriter w;
    w.row({"k", "m11_re", "m11_im", "m12_re", "m12_im", "m21_re", "m21_im", "m22_re",
           "m22_im", "det_re", "det_im", "t_re", "t_im", "r_left_re", "r_left_im",
           "r_right_re", "r_right_im"});
    for (const Row& r : rows) {
      std::vector<std::string> f{format_double(r.k)};
      fmt_complex_csv(r.m.m11, f);
      fmt_complex_csv(r.m.m12, f);
      fmt_complex_csv(r.m.m21, f);
      fmt_complex_csv(r.m.m22, f);
      fmt_complex_csv(r.m.det(), f);
      if (r.coefficients) {
        fmt_complex_csv(r.coefficients->t, f);
        fmt_complex_csv(r.coefficients->r_left, f);
        fmt_complex_csv(r.coefficients->r_right, f);
      } else {
        for (int i = 0; i < 6; ++i) f.push_back(kDivergent);
      }
      w.row(f);
    }
    return w.str();
  }

  ordered_json jrows = ordered_json::array();
  for (const Row& r : rows) {
    ordered_json row;
    row["k"] = r.k;
    row["transfer"] = ordered_json{{"m11", json_complex(r.m.m11)},
                                   {"m12", json_complex(r.m.m12)},
                                   {"m21", json_complex(r.m.m21)},
                                   {"m22", json_complex(r.m.m22)}};
    row["det"] = json_complex(r.m.det());
    row["t"] = r.coefficients ? json_complex(r.coefficients->t) : ordered_json(kDivergent);
    row["r_left"] = r.coefficients ? json_complex(r.coefficients->r_left) : ordered_json(kDivergent);
    row["r_right"] =
        r.coefficients ? json_complex(r.coefficients->r_right) : ordered_json(kDivergent);
    jrows.push_back(std::move(row));
  }
  ordered_json doc;
  doc["command"] = "compose";
  doc["rows"] = std::move(jrows);
  return dump_json(doc);
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return kDivergent;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

unsigned spectrum_pool_width() {
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 8u);
}

std::string run_command(Command cmd, const RunConfig& cfg) {
  switch (cmd) {
    case Command::Spectrum: return cmd_spectrum(cfg);
    case Command::Singularities: return cmd_singularities(cfg);
    case Command::BoundStates: return cmd_boundstates(cfg);
    case Command::Invisibility: return cmd_invisibility(cfg);
    case Command::Symmetry: return cmd_symmetry(cfg);
    case Command::Geometry: return cmd_geometry(cfg);
    case Command::Compose: return cmd_compose(cfg);
  }
  throw ConfigError("run_command: unknown command");
}

}  // namespace ptscatter::cli
