#include "ptscatter/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ptscatter/errors.hpp"

namespace ptscatter::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config." + where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      fail(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
    }
  }
}

double require_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

double require_positive(const json& v, const std::string& where) {
  const double x = require_number(v, where);
  if (!(x > 0.0)) fail(where, "must be positive");
  return x;
}

/// A complex config value: plain number or [re, im].
Complex require_complex(const json& v, const std::string& where) {
  if (v.is_number()) return Complex{v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex{v[0].get<double>(), v[1].get<double>()};
  }
  fail(where, "expected a number or [re, im] pair");
}

PotentialSpec parse_family(const json& fam) {
  if (!fam.is_object()) fail("potential.family", "expected an object");
  if (!fam.contains("name") || !fam["name"].is_string()) {
    fail("potential.family.name", "required string");
  }
  const std::string name = fam["name"].get<std::string>();
  try {
    if (name == "slab") {
      reject_unknown_keys(fam, "potential.family", {"name", "u", "d", "x0"});
      if (!fam.contains("u") || !fam.contains("d")) {
        fail("potential.family", "slab requires u and d");
      }
      const Complex u = require_complex(fam["u"], "potential.family.u");
      const double d = require_positive(fam["d"], "potential.family.d");
      const double x0 =
          fam.contains("x0") ? require_number(fam["x0"], "potential.family.x0") : 0.0;
      return PotentialSpec::slab(u, d, x0);
    }
    if (name == "pt_dimer") {
      reject_unknown_keys(fam, "potential.family", {"name", "a", "b", "d"});
      if (!fam.contains("a") || !fam.contains("b") || !fam.contains("d")) {
        fail("potential.family", "pt_dimer requires a, b and d");
      }
      return PotentialSpec::analytic(AnalyticFamily{
          PTDimerFamily{require_number(fam["a"], "potential.family.a"),
                        require_number(fam["b"], "potential.family.b"),
                        require_positive(fam["d"], "potential.family.d")}});
    }
    if (name == "exp_grating") {
      reject_unknown_keys(fam, "potential.family", {"name", "alpha", "beta", "length"});
      if (!fam.contains("alpha") || !fam.contains("beta") || !fam.contains("length")) {
        fail("potential.family", "exp_grating requires alpha, beta and length");
      }
      return PotentialSpec::analytic(AnalyticFamily{
          ExpGratingFamily{require_complex(fam["alpha"], "potential.family.alpha"),
                           require_positive(fam["beta"], "potential.family.beta"),
                           require_positive(fam["length"], "potential.family.length")}});
    }
  } catch (const ContractViolation& err) {
    fail("potential.family", err.what());
  }
  fail("potential.family.name", "unknown family '" + name +
                                    "' (expected slab, pt_dimer or exp_grating)");
}

PotentialSpec parse_potential(const json& pot) {
  if (!pot.is_object()) fail("potential", "expected an object");
  reject_unknown_keys(pot, "potential", {"segments", "family", "sample_file"});
  const int sources = static_cast<int>(pot.contains("segments")) +
                      static_cast<int>(pot.contains("family")) +
                      static_cast<int>(pot.contains("sample_file"));
  if (sources != 1) {
    fail("potential", "exactly one of segments, family, sample_file required (got " +
                          std::to_string(sources) + ")");
  }
  if (pot.contains("segments")) {
    const json& arr = pot["segments"];
    if (!arr.is_array() || arr.empty()) fail("potential.segments", "expected a non-empty array");
    std::vector<Segment> segments;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "potential.segments[" + std::to_string(i) + "]";
      const json& s = arr[i];
      if (!s.is_object()) fail(where, "expected an object");
      reject_unknown_keys(s, where, {"x0", "x1", "u"});
      if (!s.contains("x0") || !s.contains("x1") || !s.contains("u")) {
        fail(where, "requires x0, x1 and u");
      }
      segments.push_back(Segment{require_number(s["x0"], where + ".x0"),
                                 require_number(s["x1"], where + ".x1"),
                                 require_complex(s["u"], where + ".u")});
    }
    try {
      return PotentialSpec::piecewise(std::move(segments));
    } catch (const ContractViolation& err) {
      fail("potential.segments", err.what());
    }
  }
  if (pot.contains("family")) return parse_family(pot["family"]);
  if (!pot["sample_file"].is_string()) fail("potential.sample_file", "expected a path string");
  try {
    return read_sampled_profile_file(pot["sample_file"].get<std::string>());
  } catch (const ContractViolation& err) {
    fail("potential.sample_file", err.what());
  }
}

KRange parse_k_range(const json& kr) {
  if (!kr.is_object()) fail("k_range", "expected an object");
  reject_unknown_keys(kr, "k_range", {"min", "max", "n"});
  if (!kr.contains("min") || !kr.contains("n")) fail("k_range", "requires min and n");
  KRange out;
  out.min = require_positive(kr["min"], "k_range.min");
  out.max = kr.contains("max") ? require_positive(kr["max"], "k_range.max") : out.min;
  if (!kr["n"].is_number_unsigned() && !kr["n"].is_number_integer()) {
    fail("k_range.n", "expected a positive integer");
  }
  const long long n = kr["n"].get<long long>();
  if (n < 1) fail("k_range.n", "must be >= 1");
  out.n = static_cast<std::size_t>(n);
  if (out.max < out.min) fail("k_range", "max must be >= min");
  if (out.n >= 2 && !(out.max > out.min)) fail("k_range", "n >= 2 requires max > min");
  return out;
}

SearchBox parse_bound_box(const json& bb) {
  if (!bb.is_object()) fail("bound_box", "expected an object");
  reject_unknown_keys(bb, "bound_box", {"re", "im"});
  auto pair_of = [&](const char* key) {
    if (!bb.contains(key) || !bb[key].is_array() || bb[key].size() != 2) {
      fail(std::string("bound_box.") + key, "expected [lo, hi]");
    }
    const double lo = require_number(bb[key][0], std::string("bound_box.") + key + "[0]");
    const double hi = require_number(bb[key][1], std::string("bound_box.") + key + "[1]");
    if (!(hi > lo)) fail(std::string("bound_box.") + key, "requires hi > lo");
    return std::pair<double, double>{lo, hi};
  };
  const auto [re_lo, re_hi] = pair_of("re");
  const auto [im_lo, im_hi] = pair_of("im");
  if (!(im_lo > 0.0)) fail("bound_box.im", "box must lie strictly in Im k > 0");
  return SearchBox{re_lo, re_hi, im_lo, im_hi};
}

Tolerances parse_tolerances(const json& tol) {
  if (!tol.is_object()) fail("tolerances", "expected an object");
  reject_unknown_keys(tol, "tolerances",
                      {"integration", "tol_unit", "tol_nonzero", "root_residual"});
  Tolerances out;
  if (tol.contains("integration"))
    out.integration = require_positive(tol["integration"], "tolerances.integration");
  if (tol.contains("tol_unit"))
    out.tol_unit = require_positive(tol["tol_unit"], "tolerances.tol_unit");
  if (tol.contains("tol_nonzero"))
    out.tol_nonzero = require_positive(tol["tol_nonzero"], "tolerances.tol_nonzero");
  if (tol.contains("root_residual"))
    out.root_residual = require_positive(tol["root_residual"], "tolerances.root_residual");
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config: malformed JSON: ") + err.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown_keys(doc, "",
                      {"potential", "k_range", "bound_box", "tolerances", "output"});
  if (!doc.contains("potential")) throw ConfigError("config.potential: required");

  RunConfig cfg;
  cfg.potential = parse_potential(doc["potential"]);
  if (doc.contains("k_range")) cfg.k_range = parse_k_range(doc["k_range"]);
  if (doc.contains("bound_box")) cfg.bound_box = parse_bound_box(doc["bound_box"]);
  if (doc.contains("tolerances")) cfg.tolerances = parse_tolerances(doc["tolerances"]);
  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) fail("output", "expected an object");
    reject_unknown_keys(out, "output", {"format", "path"});
    if (out.contains("format")) {
      const std::string f = out["format"].is_string() ? out["format"].get<std::string>() : "";
      if (f == "csv") {
        cfg.format = OutputFormat::Csv;
      } else if (f == "json") {
        cfg.format = OutputFormat::Json;
      } else {
        fail("output.format", "expected \"csv\" or \"json\"");
      }
    }
    if (out.contains("path")) {
      if (!out["path"].is_string()) fail("output.path", "expected a string");
      cfg.output_path = out["path"].get<std::string>();
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::optional<Command> parse_command(const std::string& name) {
  if (name == "spectrum") return Command::Spectrum;
  if (name == "singularities") return Command::Singularities;
  if (name == "boundstates") return Command::BoundStates;
  if (name == "invisibility") return Command::Invisibility;
  if (name == "symmetry") return Command::Symmetry;
  if (name == "geometry") return Command::Geometry;
  if (name == "compose") return Command::Compose;
  return std::nullopt;
}

std::string command_list() {
  return "spectrum, singularities, boundstates, invisibility, symmetry, geometry, compose";
}

}  // namespace ptscatter::cli
