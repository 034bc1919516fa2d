#include "harmext_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "harmext/analysis.hpp"
#include "harmext/errors.hpp"
#include "harmext/extension.hpp"
#include "harmext/lift.hpp"
#include "harmext/parallel.hpp"

namespace harmext::cli {

using nlohmann::json;

void validate(const RunConfig& cfg) {
  if (cfg.grid.radii < 1 || cfg.grid.angles < 1) throw InputError("grid counts must be at least 1");
  if (!(cfg.grid.r_max > 0.0 && cfg.grid.r_max < 1.0)) throw InputError("--rmax must lie in (0, 1)");
  if (cfg.samples < 1) throw InputError("--samples must be at least 1");
  if (!(cfg.tol_scale > 0.0)) throw InputError("--tol-scale must be positive");
  if (!std::isfinite(cfg.t)) throw InputError("--t must be finite");
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw InputError("grid must look like NRxNA, got '" + text + "'");
  try {
    std::size_t used = 0;
    const int nr = std::stoi(text.substr(0, x), &used);
    if (used != x) throw InputError("bad grid '" + text + "'");
    const std::string rest = text.substr(x + 1);
    const int na = std::stoi(rest, &used);
    if (used != rest.size()) throw InputError("bad grid '" + text + "'");
    if (nr < 1 || na < 1) throw InputError("grid counts must be at least 1");
    return {nr, na};
  } catch (const std::logic_error&) {
    throw InputError("bad grid '" + text + "'");
  }
}

namespace {

Complex complex_of(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InputError("coefficient must be a number or [re, im]");
}

builtin::Params params_of(const json& v) {
  builtin::Params p;
  if (v.is_null()) return p;
  if (!v.is_object()) throw InputError("params must be an object");
  for (const auto& [k, val] : v.items()) {
    if (!val.is_number()) throw InputError("param '" + k + "' must be a number");
    p[k] = val.get<double>();
  }
  return p;
}

MapSpec builtin_spec(const std::string& name, const builtin::Params& params) {
  try {
    return builtin::by_name(name, params);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Function function_of(const json& v, bool is_q) {
  if (!v.is_object() || !v.contains("type")) throw InputError("function entry needs a \"type\"");
  const std::string type = v.at("type").get<std::string>();
  if (type == "series") {
    if (!v.contains("coeffs") || !v.at("coeffs").is_array()) throw InputError("series needs a \"coeffs\" array");
    std::vector<Complex> c;
    for (const auto& x : v.at("coeffs")) c.push_back(complex_of(x));
    if (c.empty()) c.push_back(0.0);
    return make_series(std::move(c));
  }
  if (type == "builtin") {
    if (!v.contains("name")) throw InputError("builtin entry needs a \"name\"");
    const MapSpec s = builtin_spec(v.at("name").get<std::string>(), params_of(v.value("params", json())));
    return is_q ? s.q_ptr() : s.h_prime_ptr();
  }
  throw InputError("unknown function type '" + type + "'");
}

builtin::Params parse_inline_params(const std::string& text) {
  builtin::Params p;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("builtin parameter must be key=value, got '" + item + "'");
    try {
      std::size_t used = 0;
      const std::string val = item.substr(eq + 1);
      p[item.substr(0, eq)] = std::stod(val, &used);
      if (used != val.size()) throw InputError("bad number in '" + item + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad number in '" + item + "'");
    }
  }
  return p;
}

json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json grid_json(const GridSpec& g) { return {{"radii", g.radii}, {"angles", g.angles}, {"r_max", g.r_max}}; }

void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  body(f);
  if (!f) throw InputError("failed writing '" + path + "'");
}

std::ostream& precise(std::ostream& os) { return os << std::setprecision(17); }

}  // namespace

MapSpec map_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("map spec must be a JSON object");
  if (!doc.contains("h_prime")) throw InputError("map spec needs \"h_prime\"");
  const Function hp = function_of(doc.at("h_prime"), false);
  const Function q = doc.contains("q") ? function_of(doc.at("q"), true) : make_constant(0.0);
  return MapSpec(hp, q, doc.value("label", std::string("custom")));
}

MapSpec load_map(const std::string& source) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (source.ends_with(".json") || fs::is_regular_file(source, ec)) {
    std::ifstream f(source);
    if (!f) throw InputError("cannot read map spec '" + source + "'");
    json doc;
    try {
      f >> doc;
    } catch (const json::exception& e) {
      throw InputError("malformed map spec '" + source + "': " + e.what());
    }
    try {
      return map_from_json(doc);
    } catch (const json::exception& e) {
      throw InputError("malformed map spec '" + source + "': " + e.what());
    }
  }
  const auto colon = source.find(':');
  const std::string name = source.substr(0, colon);
  const builtin::Params p = colon == std::string::npos ? builtin::Params{} : parse_inline_params(source.substr(colon + 1));
  return builtin_spec(name, p);
}

json analyze_report(const MapSpec& spec, const RunConfig& cfg) {
  const auto samples = condition_sweep(spec, cfg.grid);
  double rho = 0.0, kmin = std::numeric_limits<double>::infinity(), kmax = -kmin, sup_q = 0.0;
  Complex worst{};
  for (const auto& s : samples) {
    if (s.n_value > rho) {
      rho = s.n_value;
      worst = s.z;
    }
    const double k = curvature(spec, s.z);
    kmin = std::min(kmin, k);
    kmax = std::max(kmax, k);
    sup_q = std::max(sup_q, std::abs(spec.q().value(s.z)));
  }
  const ConditionSample origin = condition_value(spec, 0.0);
  json r{{"schema_version", kSchemaVersion},
         {"command", "analyze"},
         {"map", spec.label()},
         {"grid", grid_json(cfg.grid)},
         {"rho_estimate", num(rho)},
         {"condition_violated", !within_hypothesis(rho)},
         {"worst", {{"z", {worst.real(), worst.imag()}}, {"n_value", num(rho)}}},
         {"origin", {{"n_value", num(origin.n_value)}, {"abs_schwarzian", num(std::abs(origin.schwarzian))}}},
         {"curvature", {{"min", num(kmin + 0.0)}, {"max", num(kmax + 0.0)}}},
         {"sup_abs_q", num(sup_q)}};
  if (within_hypothesis(rho)) {
    const double sr = std::sqrt(rho);
    r["omega_threshold"] = (1.0 - sr) / (1.0 + sr);
  }
  return r;
}

json verification_json(const VerificationReport& rep, bool timing) {
  json checks = json::array();
  int passed = 0, failed = 0, ng = 0;
  for (const auto& c : rep.checks) {
    json row{{"name", c.name}, {"anchor", c.anchor}, {"margin", num(c.margin)}, {"status", to_string(c.status)},
             {"detail", c.detail}};
    if (timing) row["seconds"] = c.seconds;
    checks.push_back(std::move(row));
    switch (c.status) {
      case CheckStatus::pass: ++passed; break;
      case CheckStatus::fail: ++failed; break;
      case CheckStatus::not_guaranteed: ++ng; break;
    }
  }
  return {{"schema_version", kSchemaVersion},
          {"command", "verify"},
          {"map", rep.label},
          {"grid", grid_json(rep.grid)},
          {"seed", rep.seed},
          {"rho_estimate", num(rep.rho_estimate)},
          {"in_hypothesis", rep.in_hypothesis},
          {"checks", std::move(checks)},
          {"summary", {{"pass", passed}, {"fail", failed}, {"not_guaranteed", ng}}}};
}

Mesh surface_mesh(const MapSpec& spec, const std::string& surface, double t, const GridSpec& grid) {
  std::function<Extended<Point3>(Complex)> f;
  if (surface == "sigma") {
    f = [&](Complex z) { return Extended<Point3>(lift_point(spec, z)); };
  } else if (surface == "sigma-star") {
    f = [&](Complex z) { return reflect(spec, z); };
  } else if (surface == "shell") {
    f = [&](Complex z) { return Extended<Point3>(fiber_point(z, t)); };
  } else if (surface == "sphere-image") {
    f = [&](Complex z) { return extend(spec, fiber_point(z, t)); };
  } else {
    throw InputError("unknown surface '" + surface + "'");
  }
  const auto pts = polar_grid(grid);
  std::vector<Extended<Point3>> img(pts.size(), Extended<Point3>::infinity());
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      img[i] = f(pts[i]);
    } catch (const InfinitePointError&) {
      img[i] = Extended<Point3>::infinity();
    }
  });
  Mesh m;
  m.name = surface;
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(pts.size(), none);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (img[i].is_infinite() || !img[i]->finite()) {
      ++m.dropped;
      continue;
    }
    index[i] = m.vertices.size();
    m.vertices.push_back(*img[i]);
  }
  const auto at = [&](int ring, int j) -> std::size_t {
    if (ring == 0) return 0;
    return 1 + static_cast<std::size_t>(ring - 1) * grid.angles + static_cast<std::size_t>(j % grid.angles);
  };
  const auto tri = [&](std::size_t a, std::size_t b, std::size_t c) {
    if (index[a] == none || index[b] == none || index[c] == none) return;
    m.faces.push_back({index[a], index[b], index[c]});
  };
  if (grid.angles >= 3) {
    for (int j = 0; j < grid.angles; ++j) tri(0, at(1, j), at(1, j + 1));
    for (int i = 1; i < grid.radii; ++i)
      for (int j = 0; j < grid.angles; ++j) {
        tri(at(i, j), at(i + 1, j), at(i + 1, j + 1));
        tri(at(i, j), at(i + 1, j + 1), at(i, j + 1));
      }
  }
  return m;
}

void write_obj(std::ostream& os, const Mesh& mesh) {
  precise(os);
  os << "o " << mesh.name << '\n';
  for (const auto& v : mesh.vertices) os << "v " << v.x1 << ' ' << v.x2 << ' ' << v.x3 << '\n';
  for (const auto& f : mesh.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

std::vector<PlanarSample> planar_samples(const MapSpec& spec, const GridSpec& grid) {
  std::vector<Complex> zs;
  for (int i = 0; i < grid.radii; ++i) {
    const double r = 0.5 * std::pow(4.0, (i + 0.5) / grid.radii);
    if (std::abs(r - 1.0) < 1e-9) continue;
    for (int j = 0; j < grid.angles; ++j) zs.push_back(std::polar(r, 2.0 * std::numbers::pi * j / grid.angles));
  }
  const auto embed = [&](Complex w) -> Extended<Point3> {
    const auto v = planar_extend(spec, w);
    if (v.is_infinite()) return Extended<Point3>::infinity();
    return Point3::from_plane(*v);
  };
  std::vector<PlanarSample> out(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    PlanarSample& s = out[i];
    s.z = zs[i];
    const auto v = planar_extend(spec, s.z);
    if (v.is_infinite()) {
      s.flagged = true;
      return;
    }
    s.value = *v;
    const double step = std::min(1e-4 * std::max(1.0, std::abs(s.z)), 0.05 * std::abs(std::abs(s.z) - 1.0));
    const DilatationSample d = measured_surface_dilatation(embed, s.z, step);
    s.dilatation = d.ratio;
    s.flagged = d.flagged;
  });
  return out;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const MapSpec spec = load_map(cfg.map);
  const json r = analyze_report(spec, cfg);
  with_output(cfg.out, out, [&](std::ostream& os) { os << r.dump(2) << '\n'; });
  if (!cfg.csv.empty()) {
    const auto samples = condition_sweep(spec, cfg.grid);
    with_output(cfg.csv, out, [&](std::ostream& os) {
      precise(os) << "z_re,z_im,abs_schwarzian,curvature_term,n_value,margin\n";
      for (const auto& s : samples)
        os << s.z.real() << ',' << s.z.imag() << ',' << std::abs(s.schwarzian) << ',' << s.curvature_term << ','
           << s.n_value << ',' << 1.0 - s.n_value << '\n';
    });
  }
  if (r["condition_violated"].get<bool>()) log << "warning: condition violated (rho_estimate " << r["rho_estimate"] << ")\n";
  return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const MapSpec spec = load_map(cfg.map);
  VerifyOptions opts;
  opts.grid = cfg.grid;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  opts.tol_scale = cfg.tol_scale;
  const VerificationReport rep = run_verification(spec, opts);
  const json r = verification_json(rep, cfg.timing);
  with_output(cfg.out, out, [&](std::ostream& os) { os << r.dump(2) << '\n'; });
  for (const auto& c : rep.checks)
    if (c.status == CheckStatus::fail) log << "FAIL " << c.name << ": " << c.detail << '\n';
  if (!rep.in_hypothesis)
    log << "warning: rho_estimate " << rep.rho_estimate << " is outside the hypothesis, checks not guaranteed\n";
  return rep.any_guaranteed_failure() ? exit_check_failed : exit_ok;
}

int cmd_extend(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const MapSpec spec = load_map(cfg.map);
  if (cfg.surface == "sigma-star" && !within_hypothesis(estimate_rho(spec, cfg.grid)))
    log << "warning: map is outside the hypothesis, the reflected surface may not be embedded\n";
  const Mesh mesh = surface_mesh(spec, cfg.surface, cfg.t, cfg.grid);
  with_output(cfg.out, out, [&](std::ostream& os) { write_obj(os, mesh); });
  if (mesh.dropped) log << "dropped " << mesh.dropped << " points at infinity\n";
  return exit_ok;
}

int cmd_dilatation(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const MapSpec spec = load_map(cfg.map);
  const double rho = estimate_rho(spec, cfg.grid);
  std::mt19937_64 rng(cfg.seed);
  const auto pts = sample_space_points(rng, cfg.samples);
  const DilatationSweep sw = dilatation_sweep(spec, pts);
  with_output(cfg.out, out, [&](std::ostream& os) {
    precise(os) << "p1,p2,p3,ratio,flagged\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << pts[i].x1 << ',' << pts[i].x2 << ',' << pts[i].x3 << ',' << num(sw.samples[i].ratio).dump() << ','
         << (sw.samples[i].flagged ? 1 : 0) << '\n';
  });
  json summary{{"schema_version", kSchemaVersion}, {"command", "dilatation"}, {"map", spec.label()},
               {"samples", cfg.samples}, {"max", num(sw.max)}, {"mean", num(sw.mean)}, {"flagged", sw.flagged},
               {"rho_estimate", num(rho)}};
  int status = exit_ok;
  if (within_hypothesis(rho)) {
    const double k = dilatation_bound(spec, rho);
    summary["bound"] = k;
    if (sw.max > k + 0.05) status = exit_check_failed;
  } else {
    log << "warning: rho_estimate " << rho << " is outside the hypothesis, no bound applies\n";
  }
  log << summary.dump() << '\n';
  return status;
}

int cmd_planar(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const MapSpec spec = load_map(cfg.map);
  const double rho = estimate_rho(spec, cfg.grid);
  if (!within_hypothesis(rho)) {
    log << "warning: rho_estimate " << rho << " is outside the hypothesis\n";
  } else if (!omega_bound_check(spec, rho, cfg.grid).passed) {
    log << "warning: sup|q| exceeds (1-sqrt(rho))/(1+sqrt(rho))\n";
  }
  const auto samples = planar_samples(spec, cfg.grid);
  std::size_t dropped = 0, flagged = 0, counted = 0;
  double dmax = 1.0, dsum = 0.0, aw = 0.0;
  for (const auto& s : samples) {
    if (!s.value) {
      ++dropped;
      continue;
    }
    if (spec.is_analytic() && std::abs(s.z) > 1.0) {
      const auto c = classical_aw(spec, s.z);
      aw = c.is_infinite() ? std::numeric_limits<double>::infinity()
                           : std::max(aw, std::abs(*c - *s.value) / std::max(1.0, std::abs(*s.value)));
    }
    if (s.flagged) {
      ++flagged;
      continue;
    }
    dmax = std::max(dmax, s.dilatation);
    dsum += s.dilatation;
    ++counted;
  }
  with_output(cfg.out, out, [&](std::ostream& os) {
    precise(os) << "z_re,z_im,F_re,F_im,dilatation,flagged\n";
    for (const auto& s : samples) {
      if (!s.value) continue;
      os << s.z.real() << ',' << s.z.imag() << ',' << s.value->real() << ',' << s.value->imag() << ','
         << num(s.dilatation).dump() << ',' << (s.flagged ? 1 : 0) << '\n';
    }
  });
  const double jump = planar_boundary_jump(spec, cfg.grid.angles);
  json summary{{"schema_version", kSchemaVersion}, {"command", "planar"}, {"map", spec.label()},
               {"rho_estimate", num(rho)}, {"dilatation_max", num(dmax)},
               {"dilatation_mean", num(counted ? dsum / counted : 1.0)}, {"dropped", dropped}, {"flagged", flagged},
               {"boundary_jump", num(jump)}};
  if (spec.is_analytic()) summary["aw_difference"] = num(aw);
  log << summary.dump() << '\n';
  const bool bad = within_hypothesis(rho) && (jump > 0.01 || (spec.is_analytic() && aw > 1e-12 * cfg.tol_scale));
  return bad ? exit_check_failed : exit_ok;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extensions of harmonic maps and their minimal-surface lifts"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid_text;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--map", cfg.map, "map-spec JSON file or builtin name[:key=value,...]");
    sub->add_option("--grid", grid_text, "polar grid as NRxNA");
    sub->add_option("--rmax", cfg.grid.r_max, "outer grid radius in (0, 1)");
    sub->add_option("--samples", cfg.samples, "random sample count");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol-scale", cfg.tol_scale, "multiplier on check tolerances");
    sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "condition values, rho estimate and curvature extremes");
  common(analyze);
  analyze->add_option("--csv", cfg.csv, "write the condition grid as CSV");
  CLI::App* verify = app.add_subcommand("verify", "run every registered check");
  common(verify);
  verify->add_flag("--timing", cfg.timing, "include per-check seconds in the report");
  CLI::App* extend_cmd = app.add_subcommand("extend", "OBJ mesh of sigma, sigma-star, shell or sphere-image");
  common(extend_cmd);
  extend_cmd->add_option("--surface", cfg.surface, "sigma | sigma-star | shell | sphere-image")
      ->check(CLI::IsMember({"sigma", "sigma-star", "shell", "sphere-image"}));
  extend_cmd->add_option("--t", cfg.t, "flow parameter for shell and sphere-image");
  CLI::App* dil = app.add_subcommand("dilatation", "sampled dilatation of the spatial extension");
  common(dil);
  CLI::App* planar = app.add_subcommand("planar", "planar extension on an annulus around the unit circle");
  common(planar);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_input_error;
  }
  try {
    if (!grid_text.empty()) std::tie(cfg.grid.radii, cfg.grid.angles) = parse_grid(grid_text);
    validate(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (extend_cmd->parsed()) return cmd_extend(cfg, out, err);
    if (dil->parsed()) return cmd_dilatation(cfg, out, err);
    return cmd_planar(cfg, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
}

}  // namespace harmext::cli
