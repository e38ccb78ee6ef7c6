// pdm-cli: configuration-driven front end to the pdm library.
//
//   pdm-cli <subcommand> [-c config.yaml] [--set key=value]... [-o out] [--format json|csv]
//
// Exit codes: 0 success, 2 invalid configuration or domain, 3 numerical
// failure or a verification that missed its tolerance.

#include <yaml-cpp/yaml.h>

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdm/io.hpp"
#include "pdm/pdm.hpp"

namespace {

using pdm::io::Json;

// ---- config access -------------------------------------------------------

class Config {
 public:
  explicit Config(YAML::Node root) : root_(std::move(root)) {}

  YAML::Node node(std::string const& path) const {
    YAML::Node cur = YAML::Clone(root_);
    for (auto const& part : split(path)) {
      if (!cur.IsMap() || !cur[part]) return YAML::Node();
      cur.reset(cur[part]);
    }
    return cur;
  }

  bool has(std::string const& path) const { return node(path).IsDefined() && !node(path).IsNull(); }

  double num(std::string const& path, double def) const {
    auto n = node(path);
    if (!n.IsDefined() || n.IsNull()) return record(path, def);
    double v;
    try {
      v = n.as<double>();
    } catch (YAML::Exception const&) {
      throw pdm::ValidationError("config key '" + path + "' must be a number");
    }
    if (!std::isfinite(v)) throw pdm::ValidationError("config key '" + path + "' must be finite");
    return record(path, v);
  }

  long integer(std::string const& path, long def) const {
    const double v = num(path, static_cast<double>(def));
    if (v != std::floor(v)) throw pdm::ValidationError("config key '" + path + "' must be an integer");
    return static_cast<long>(v);
  }

  bool flag(std::string const& path, bool def) const {
    auto n = node(path);
    bool v = def;
    if (n.IsDefined() && !n.IsNull()) {
      try {
        v = n.as<bool>();
      } catch (YAML::Exception const&) {
        throw pdm::ValidationError("config key '" + path + "' must be true or false");
      }
    }
    resolved_[path] = v;
    return v;
  }

  std::string str(std::string const& path, std::string const& def) const {
    auto n = node(path);
    std::string v = def;
    if (n.IsDefined() && !n.IsNull()) v = n.as<std::string>();
    resolved_[path] = v;
    return v;
  }

  pdm::ParamMap params(std::string const& path) const {
    pdm::ParamMap out;
    auto n = node(path);
    if (!n.IsDefined() || n.IsNull()) return out;
    if (!n.IsMap()) throw pdm::ValidationError("config key '" + path + "' must be a mapping of numbers");
    for (auto it = n.begin(); it != n.end(); ++it) {
      const auto key = it->first.as<std::string>();
      out[key] = num(path + "." + key, 0.0);
    }
    return out;
  }

  /// Values actually read, in key order; the config echo.
  Json const& resolved() const { return resolved_; }

  static void set(YAML::Node& root, std::string const& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw pdm::ValidationError("--set expects key=value, got '" + assignment + "'");
    const auto parts = split(assignment.substr(0, eq));
    YAML::Node cur = root;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      if (!cur[parts[i]] || !cur[parts[i]].IsMap()) cur[parts[i]] = YAML::Node(YAML::NodeType::Map);
      cur.reset(cur[parts[i]]);
    }
    cur[parts.back()] = YAML::Load(assignment.substr(eq + 1));
  }

 private:
  static std::vector<std::string> split(std::string const& path) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      out.push_back(path.substr(start, dot - start));
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    return out;
  }

  double record(std::string const& path, double v) const {
    resolved_[path] = v;
    return v;
  }

  YAML::Node root_;
  mutable Json resolved_ = Json::object();
};

// ---- shared builders -----------------------------------------------------

struct GridSpec {
  double lo, hi;
  std::size_t n;
};

GridSpec read_grid(Config const& c, double lo, double hi, long n) {
  GridSpec g{c.num("grid.min", lo), c.num("grid.max", hi), 0};
  const long np = c.integer("grid.n", n);
  if (np < 16) throw pdm::ValidationError(pdm::detail::concat("grid.n must be at least 16, got ", np));
  if (!(g.hi > g.lo)) throw pdm::ValidationError("grid.max must exceed grid.min");
  g.n = static_cast<std::size_t>(np);
  return g;
}

pdm::MassProfile read_mass(Config const& c, std::string const& def_tag = "lorentzian-squared") {
  const int N = static_cast<int>(c.integer("mass.N", 3));
  if (c.has("mass.csv")) {
    auto [x, y] = pdm::read_two_column_csv(c.str("mass.csv", ""));
    return pdm::tabulated_mass(std::move(x), std::move(y), c.flag("mass.radial", false));
  }
  return pdm::mass_by_name(c.str("mass.tag", def_tag), c.params("mass.params"), N);
}

pdm::PotentialSpec read_potential(Config const& c) {
  const auto tag = c.str("potential.tag", "harmonic");
  if (tag == "harmonic") return pdm::PotentialSpec::harmonic(c.num("potential.omega", 1.0), c.num("potential.center", 0.0));
  if (tag == "box") return pdm::PotentialSpec::box();
  if (tag == "none") return pdm::PotentialSpec::none();
  throw pdm::ValidationError("unknown potential tag '" + tag + "'; valid: harmonic, box, none");
}

std::size_t read_k(Config const& c, long def) {
  const long k = c.integer("solver.k", def);
  if (k < 0) throw pdm::ValidationError("solver.k must be non-negative");
  return static_cast<std::size_t>(k);
}

double read_tol(Config const& c, double def) {
  const double t = c.num("solver.tol", def);
  if (!(t > 0)) throw pdm::ValidationError("solver.tol must be positive");
  return t;
}

pdm::SpectralOptions read_spectral(Config const& c, GridSpec const& g) {
  pdm::SpectralOptions o;
  o.richardson = c.flag("solver.richardson", false);
  const double centre = g.lo < 0 && g.hi > 0 ? 0.0 : g.lo;
  o.anchor = c.num("solver.anchor", centre);
  if (c.has("solver.wall_tolerance")) o.wall_tolerance = c.num("solver.wall_tolerance", 1e-6);
  return o;
}

Json vec3(pdm::Vec3 const& v) { return Json::array({v[0], v[1], v[2]}); }

struct Outcome {
  Json json;
  std::optional<std::string> csv;
  Json tolerances = Json::object();
  bool passed = true;
};

// ---- subcommands ---------------------------------------------------------

Outcome run_pairs(Config const& c) {
  const int N = static_cast<int>(c.integer("mass.N", 3));
  const auto g = read_grid(c, 0.1, 10.0, 2001);
  const double tol = read_tol(c, 1e-8);
  const double rt_tol = c.num("solver.roundtrip_tol", 1e-6);
  const auto grid = pdm::uniform_grid(g.lo, g.hi, g.n);
  std::vector<pdm::PairCatalogEntry> entries;
  if (c.has("mass.tag")) entries.push_back(pdm::catalog::by_name(c.str("mass.tag", ""), c.params("mass.params"), N));
  else entries = pdm::catalog::all(N);

  Outcome out;
  Json rows = Json::array();
  pdm::io::CsvTable table({"tag", "N", "max_residual", "worst_radius", "roundtrip_error", "passed"});
  for (auto const& e : entries) {
    const auto rep = pdm::verify_pair(e, grid, tol);
    // scalar_from_mass then mass_from_scalar, constants matched at the first radius.
    const auto S = pdm::scalar_from_mass(e.mass, e.N, grid, e.c0_for(grid.front()), pdm::IntegralOrigin::first_radius);
    const auto m_back = pdm::mass_from_scalar(S, e.N, grid.front(), e.mass(grid.front()), grid);
    double rt = 0;
    for (double r : grid) rt = std::max(rt, std::abs(m_back(r) - e.mass(r)) / e.mass(r));
    const bool ok = rep.passed && rt <= rt_tol;
    out.passed = out.passed && ok;
    Json params = Json::object();
    for (auto const& [k, v] : e.params) params[k] = v;
    rows.push_back(Json{{"tag", rep.tag},
                        {"N", e.N},
                        {"params", params},
                        {"max_residual", rep.max_residual},
                        {"worst_radius", rep.worst_radius},
                        {"skipped", rep.skipped},
                        {"roundtrip_error", rt},
                        {"passed", ok}});
    table.row({rep.tag, std::to_string(e.N), pdm::io::format_double(rep.max_residual), pdm::io::format_double(rep.worst_radius),
               pdm::io::format_double(rt), ok ? "true" : "false"});
  }
  out.json = Json{{"entries", rows}, {"passed", out.passed}};
  out.csv = table.str();
  out.tolerances = Json{{"residual", tol}, {"roundtrip", rt_tol}};
  return out;
}

Outcome run_transform(Config const& c) {
  const auto m = read_mass(c);
  const auto g = read_grid(c, -10, 10, 2001);
  std::optional<double> anchor;
  if (c.has("solver.anchor")) anchor = c.num("solver.anchor", 0.0);
  const auto map = pdm::build_map(m, pdm::uniform_grid(g.lo, g.hi, g.n), anchor);
  Outcome out;
  out.json = Json{{"mass", m.tag}, {"upsilon", pdm::TransformMap::upsilon}, {"x", map.x_grid}, {"q", map.q_of_x}, {"jac", map.jac}};
  out.csv = pdm::io::map_csv(map);
  return out;
}

Outcome run_spectrum(Config const& c) {
  const auto m = read_mass(c);
  const auto V = read_potential(c);
  const auto g = read_grid(c, -10, 10, 4001);
  const auto k = read_k(c, 5);
  const auto ord_name = c.str("solver.ordering", "mm");
  const auto ord = pdm::ordering_by_name(ord_name);
  if (!ord) throw pdm::ValidationError("unknown ordering '" + ord_name + "'; valid: mm, bendaniel-duke, gora-williams, zhu-kroemer");
  const auto grid = pdm::uniform_grid(g.lo, g.hi, g.n);
  const auto opt = read_spectral(c, g);
  const auto map = pdm::build_map(m, pdm::uniform_grid(g.lo, g.hi, std::max<std::size_t>(g.n, 4001)), opt.anchor);
  const auto op = pdm::symmetrize(pdm::build_von_roos(m, pdm::compose_with_map(V, map), *ord, grid));
  auto s = pdm::solve_symmetric(op, k, false);
  if (opt.richardson) {
    const auto fine = pdm::solve_symmetric(
        pdm::symmetrize(pdm::build_von_roos(m, pdm::compose_with_map(V, map), *ord, pdm::uniform_grid(g.lo, g.hi, pdm::refined_points(g.n)))),
        k, false);
    s.eigenvalues = pdm::richardson(s.eigenvalues, fine.eigenvalues);
  }
  Outcome out;
  out.json = Json{{"mass", m.tag}, {"potential", V.tag}, {"ordering", ord_name}, {"spectrum", pdm::io::to_json(s)}};
  pdm::io::CsvTable t({"n", "eigenvalue", "residual"});
  for (std::size_t i = 0; i < s.size(); ++i)
    t.row({std::to_string(i), pdm::io::format_double(s.eigenvalues[i]), pdm::io::format_double(s.residuals[i])});
  out.csv = t.str();
  out.tolerances = Json{{"residual_bound_relative", 1e-10}};
  return out;
}

Outcome run_isospectral(Config const& c) {
  const auto m = read_mass(c);
  const auto V = read_potential(c);
  const auto g = read_grid(c, -10, 10, 4001);
  const auto k = read_k(c, 5);
  const double tol = read_tol(c, 1e-3);
  const auto rep = pdm::isospectrality_check(m, V, g.lo, g.hi, g.n, k, read_spectral(c, g));
  Outcome out;
  out.passed = rep.max_rel_diff <= tol;
  out.json = Json{{"mass", m.tag},          {"potential", V.tag},       {"q_domain", Json::array({rep.q_lo, rep.q_hi})},
                  {"n_points", rep.n_points}, {"richardson", rep.richardson}, {"E_q", rep.E_q},
                  {"E_x", rep.E_x},           {"max_rel_diff", rep.max_rel_diff}, {"passed", out.passed}};
  pdm::io::CsvTable t({"n", "E_q", "E_x"});
  for (std::size_t i = 0; i < rep.E_q.size(); ++i) {
    const double row[3] = {static_cast<double>(i), rep.E_q[i], rep.E_x[i]};
    t.row(row);
  }
  out.csv = t.str();
  out.tolerances = Json{{"max_rel_diff", tol}};
  return out;
}

Outcome run_ordering_sweep(Config const& c) {
  const auto m = read_mass(c);
  const auto V = read_potential(c);
  const auto g = read_grid(c, -10, 10, 4001);
  const auto k = read_k(c, 3);
  const auto rep = pdm::ordering_sweep(m, V, g.lo, g.hi, g.n, pdm::standard_orderings(), k, read_spectral(c, g));
  Outcome out;
  Json rows = Json::array();
  pdm::io::CsvTable t({"ordering", "alpha", "beta", "gamma", "n", "eigenvalue", "reference", "abs_deviation"});
  for (auto const& r : rep.rows) {
    rows.push_back(Json{{"ordering", r.name},
                        {"alpha", r.params.alpha()},
                        {"beta", r.params.beta()},
                        {"gamma", r.params.gamma()},
                        {"eigenvalues", r.eigenvalues},
                        {"residuals", r.residuals},
                        {"abs_deviation", r.abs_deviation},
                        {"max_rel_deviation", r.max_rel_deviation}});
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
      t.row({r.name, pdm::io::format_double(r.params.alpha()), pdm::io::format_double(r.params.beta()),
             pdm::io::format_double(r.params.gamma()), std::to_string(i), pdm::io::format_double(r.eigenvalues[i]),
             pdm::io::format_double(rep.reference[i]), pdm::io::format_double(r.abs_deviation[i])});
  }
  out.json = Json{{"mass", m.tag}, {"potential", V.tag}, {"n_points", rep.n_points}, {"reference", rep.reference}, {"orderings", rows}};
  out.csv = t.str();
  return out;
}

pdm::PairCatalogEntry read_pair(Config const& c) {
  const int N = static_cast<int>(c.integer("mass.N", 3));
  return pdm::catalog::by_name(c.str("em.pair", "S-unity"), c.params("em.pair_params"), N);
}

Json gauge_json(pdm::VectorPotentialSpec const& spec, std::size_t samples, double r_lo, double r_hi, std::uint64_t seed,
                double tol) {
  const auto pts = pdm::sample_shell(samples, r_lo, r_hi, seed);
  const auto rep = pdm::gauge_divergence_residual(spec, pts);
  const auto el = pdm::eligibility(spec, pts, tol);
  double curl_err = 0;
  for (auto const& p : pts) {
    const auto curl = pdm::curl_fd([&spec](pdm::Vec3 const& x) { return spec.tilde(x); }, p);
    curl_err = std::max({curl_err, std::abs(curl[0]), std::abs(curl[1]), std::abs(curl[2] - spec.B0)});
  }
  return Json{{"family", to_string(spec.family)},
              {"pair", spec.S.tag},
              {"B0", spec.B0},
              {"eligible", el.eligible},
              {"reason", el.reason},
              {"max_residual", rep.max_residual},
              {"worst_point", vec3(rep.worst_point)},
              {"samples", rep.evaluated},
              {"skipped", rep.skipped.size()},
              {"curl_error", curl_err}};
}

Outcome run_gauge_check(Config const& c) {
  const auto pair = read_pair(c);
  const auto family = pdm::gauge_family_from_string(c.str("em.family", "symmetric"));
  const double tol = read_tol(c, 1e-10);
  const auto samples = static_cast<std::size_t>(c.integer("em.samples", 100));
  const auto spec = pdm::make_vector_potential(family, c.num("em.B0", 1.0), pair);
  Outcome out;
  out.json = gauge_json(spec, samples, c.num("em.r_min", 0.5), c.num("em.r_max", 5.0), static_cast<std::uint64_t>(c.integer("em.seed", 20240611)), tol);
  out.tolerances = Json{{"eligibility_residual", tol}};
  return out;
}

Outcome run_landau(Config const& c) {
  const double B0 = c.num("em.B0", 1.0), e = c.num("em.e", 1.0), E0 = c.num("em.E0_field", 0.0);
  const double k1 = c.num("em.k1", 0.0), k3 = c.num("em.k3", 0.0);
  const auto k = read_k(c, 6);
  const double tol = read_tol(c, 1e-6);
  pdm::LandauNumericOptions opt;
  const long n = c.integer("grid.n", 4001);
  if (n < 16) throw pdm::ValidationError(pdm::detail::concat("grid.n must be at least 16, got ", n));
  opt.n_points = static_cast<std::size_t>(n);
  opt.half_width = c.num("grid.half_width", 12.0);
  opt.richardson = c.flag("solver.richardson", true);
  if (c.has("grid.min") || c.has("grid.max")) opt.q2_domain = std::pair{c.num("grid.min", -12.0), c.num("grid.max", 12.0)};
  const auto res = pdm::solve_example_numeric(B0, e, E0, k1, k3, k, opt);
  Outcome out;
  out.passed = res.max_rel_error <= tol;
  const auto pair = read_pair(c);
  const auto spec = pdm::make_vector_potential(pdm::GaugeFamily::symmetric, B0, pair);
  out.json = Json{{"config", Json{{"B0", B0}, {"e", e}, {"E0_field", E0}, {"k1", k1}, {"k3", k3}, {"n_points", opt.n_points}}},
                  {"q2_domain", Json::array({res.q2_lo, res.q2_hi})},
                  {"analytic_spectrum", res.analytic},
                  {"numeric_spectrum", res.spectrum.eigenvalues},
                  {"rel_errors", res.rel_errors},
                  {"overlaps", res.overlaps},
                  {"max_rel_error", res.max_rel_error},
                  {"passed", out.passed},
                  {"gauge_report", gauge_json(spec, 100, 0.5, 5.0, 20240611, 1e-10)}};
  pdm::io::CsvTable t({"n", "analytic", "numeric", "rel_error", "overlap"});
  for (std::size_t i = 0; i < res.analytic.size(); ++i) {
    const double row[5] = {static_cast<double>(i), res.analytic[i], res.spectrum.eigenvalues[i], res.rel_errors[i], res.overlaps[i]};
    t.row(row);
  }
  out.csv = t.str();
  out.tolerances = Json{{"energy_relative", tol}};
  return out;
}

Outcome run_classical(Config const& c) {
  const auto mode = c.str("classical.mode", "trajectory");
  const auto m = read_mass(c);
  const auto V = read_potential(c);
  const double x0 = c.num("classical.x0", 0.5), v0 = c.num("classical.v0", 0.0);
  const double dt = c.num("classical.dt", 1e-3);
  const long steps = c.integer("classical.steps", 10000);
  if (!(dt > 0) || steps < 1) throw pdm::ValidationError("classical.dt must be positive and classical.steps >= 1");
  const double m0 = c.num("classical.m0", 0.5);
  Outcome out;
  if (mode == "trajectory") {
    auto f = pdm::fields_1d(m, V);
    f.m0 = m0;
    const auto scheme = pdm::scheme_from_string(c.str("classical.scheme", "rk4"));
    const auto every = static_cast<std::size_t>(c.integer("classical.sample_every", 100));
    const pdm::ClassicalState s0{{x0}, {m0 * m(x0) * v0}, 0};
    const auto tr = pdm::integrate(s0, f, dt, static_cast<std::size_t>(steps), scheme, every);
    const double tol = read_tol(c, 1e-8);
    out.passed = !tr.truncated && tr.drift <= tol;
    out.json = Json{{"mode", mode}, {"mass", m.tag}, {"potential", V.tag}, {"gradient_check", pdm::gradient_check(s0, f)},
                    {"trajectory", pdm::io::to_json(tr)}, {"passed", out.passed}};
    out.csv = pdm::io::trajectory_csv(tr);
    out.tolerances = Json{{"energy_drift", tol}};
    return out;
  }
  if (mode == "equivalence") {
    pdm::EquivalenceOptions opt;
    opt.m0 = m0;
    opt.x_lo = c.num("grid.min", -10.0);
    opt.x_hi = c.num("grid.max", 10.0);
    opt.map_spacing = c.num("classical.map_spacing", 1e-3);
    opt.anchor = c.num("solver.anchor", 0.0);
    const double tol = read_tol(c, 1e-6);
    const auto rep = pdm::transform_equivalence_check(m, V, x0, v0, dt, static_cast<std::size_t>(steps), opt);
    out.passed = rep.max_discrepancy <= tol;
    out.json = Json{{"mode", mode},           {"mass", m.tag},
                    {"potential", V.tag},     {"steps", rep.steps},
                    {"max_discrepancy", rep.max_discrepancy}, {"worst_time", rep.worst_time},
                    {"drift_direct", rep.drift_direct}, {"drift_mapped", rep.drift_mapped},
                    {"passed", out.passed}};
    out.tolerances = Json{{"discrepancy", tol}};
    return out;
  }
  throw pdm::ValidationError("classical.mode must be trajectory or equivalence, got '" + mode + "'");
}

std::string compiler_id() {
#if defined(__clang__)
  return "clang " __clang_version__;
#elif defined(__GNUC__)
  return "gcc " __VERSION__;
#else
  return "unknown";
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Position-dependent-mass experiments: point transformation, orderings, Landau spectra"};
  app.require_subcommand(1, 1);
  std::string config_path, output_path, format;
  std::vector<std::string> overrides;
  const std::map<std::string, Outcome (*)(Config const&)> commands{
      {"pairs", run_pairs},           {"transform", run_transform},     {"spectrum", run_spectrum},
      {"isospectral", run_isospectral}, {"ordering-sweep", run_ordering_sweep}, {"gauge-check", run_gauge_check},
      {"landau", run_landau},         {"classical", run_classical}};
  const std::map<std::string, std::string> help{
      {"pairs", "check the generating relation for catalog (m, S) pairs"},
      {"transform", "tabulate q(x) for a mass profile"},
      {"spectrum", "lowest eigenvalues of the PDM Hamiltonian"},
      {"isospectral", "compare q-space and x-space spectra"},
      {"ordering-sweep", "spectra for several von Roos orderings"},
      {"gauge-check", "Coulomb-gauge eligibility of a vector potential family"},
      {"landau", "analytic and numeric Landau levels"},
      {"classical", "classical trajectories and transform equivalence"}};
  for (auto const& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("-c,--config", config_path, "YAML configuration file")->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "override a config value, e.g. grid.n=2001")->take_all();
    sub->add_option("-o,--output", output_path, "output file (default <subcommand>.<format>)");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  }
  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    YAML::Node root = config_path.empty() ? YAML::Node(YAML::NodeType::Map) : YAML::LoadFile(config_path);
    if (!root.IsMap()) throw pdm::ValidationError("config root must be a mapping");
    for (auto const& o : overrides) Config::set(root, o);
    Config cfg(root);
    const auto scenario = cfg.str("scenario", name);
    if (scenario != name) throw pdm::ValidationError("config scenario '" + scenario + "' does not match subcommand '" + name + "'");
    if (format.empty()) format = cfg.str("output.format", "json");
    if (format != "json" && format != "csv") throw pdm::ValidationError("output.format must be json or csv");
    if (output_path.empty()) output_path = cfg.str("output.path", name + "." + format);

    Outcome out = commands.at(name)(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    Json result{{"scenario", name}, {"config", cfg.resolved()}, {"result", out.json}};
    const std::string config_text = pdm::io::to_string(cfg.resolved());
    if (format == "csv") {
      if (!out.csv) throw pdm::ValidationError("subcommand '" + name + "' has no CSV output; use --format json");
      pdm::io::write_text(output_path, *out.csv);
    } else {
      pdm::io::write_text(output_path, pdm::io::to_string(result));
    }
    Json manifest{{"scenario", name},
                  {"output", output_path},
                  {"format", format},
                  {"config", cfg.resolved()},
                  {"config_hash", pdm::io::hex64(pdm::io::fnv1a(config_text))},
                  {"tolerances", out.tolerances},
                  {"passed", out.passed},
                  {"versions", Json{{"pdm", PDM_VERSION},
                                    {"compiler", compiler_id()},
                                    {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                                  std::to_string(EIGEN_MINOR_VERSION)},
                                    {"cli11", CLI11_VERSION}}},
                  {"timings", Json{{"wall_seconds", seconds}}}};
    pdm::io::write_text(output_path + ".manifest.json", pdm::io::to_string(manifest));
    std::cout << name << ": wrote " << output_path << (out.passed ? "" : " (tolerance not met)") << "\n";
    return out.passed ? 0 : 3;
  } catch (pdm::ValidationError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (pdm::DomainError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (YAML::Exception const& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (pdm::NumericalError const& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
