// chordmeans: command-line front end.
//
// Every run prints one JSON document (or CSV table) to standard output with
// the resolved configuration echoed next to the result. Exit status: 0 on
// success, 2 on domain errors and malformed input, 1 on internal failures.

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chordmeans/chordmeans.hpp"

namespace {

using chordmeans::json;
constexpr double kPi = std::numbers::pi;

struct Options {
  std::string command;
  std::string curve = "circle";
  std::optional<double> p;
  std::optional<double> u;
  double alpha = 1.0;
  double kappa = 1.0;
  std::optional<double> tol;
  int n = 0;
  std::string sweep;
  std::string format = "json";
  unsigned seed = 1;
  double h = 0.0;
  int K = 8;
  int restarts = 20;
  std::vector<int> m_list;
  double q = 1.0;
  double u_min = 0.0;
  std::string family = "radial";
};

struct Sweep {
  std::string param;
  std::vector<double> values;
};

Sweep parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) {
    throw chordmeans::DomainError("--sweep expects param:lo:hi:steps");
  }
  static const std::vector<std::string> allowed = {"p", "u", "a", "m", "kappa", "alpha"};
  if (std::find(allowed.begin(), allowed.end(), parts[0]) == allowed.end()) {
    throw chordmeans::DomainError("--sweep: unknown parameter \"" + parts[0] + "\"");
  }
  Sweep s;
  s.param = parts[0];
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
  try {
    lo = std::stod(parts[1]);
    hi = std::stod(parts[2]);
    steps = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw chordmeans::DomainError("--sweep: bad number in \"" + text + "\"");
  }
  if (steps < 1) throw chordmeans::DomainError("--sweep: steps must be positive");
  for (int i = 0; i < steps; ++i) {
    s.values.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  }
  return s;
}

chordmeans::ArcLengthCurve resolve_curve(const Options& o) {
  return chordmeans::parse_curve_spec(o.curve);
}

double resolve_u(const Options& o, double length) { return o.u.value_or(0.5 * length); }

json run_single(const Options& o) {
  using namespace chordmeans;
  const double p = o.p.value_or(2.0);
  const std::string& c = o.command;

  if (c == "chord-mean") {
    const ArcLengthCurve curve = resolve_curve(o);
    const double u = resolve_u(o, curve.length());
    const QuadratureResult q =
        chord_pmean(curve, p, u, o.n > 0 ? o.n : kDefaultQuadratureNodes);
    return {{"p", p}, {"u", u}, {"length", curve.length()}, {"value", q.value},
            {"quad_error", q.error}};
  }
  if (c == "check-inequality") {
    const ArcLengthCurve curve = resolve_curve(o);
    const double u = resolve_u(o, curve.length());
    return to_json(check_inequality(curve, p, u, o.n > 0 ? o.n : kDefaultQuadratureNodes,
                                    o.tol.value_or(1e-12)));
  }
  if (c == "electro-energy") {
    const ArcLengthCurve curve = resolve_curve(o);
    EnergyOptions eo;
    eo.u_min = o.u_min;
    eo.n_quad = o.n;
    EnergyResult r = renormalized_energy(curve, eo);
    const double q2 = o.q * o.q;
    r.delta *= q2;
    r.quadrature_error *= q2;
    r.cutoff_remainder_bound *= q2;
    json j = to_json(r);
    j["q"] = o.q;
    j["n_quad"] = r.n_quad;
    return j;
  }
  if (c == "ground-state") {
    const ArcLengthCurve curve = resolve_curve(o);
    GroundStateOptions go;
    go.tol = o.tol.value_or(go.tol);
    if (o.n > 0) go.n_max = o.n;
    go.n_initial = std::min(go.n_initial, go.n_max);
    const GroundState g = ground_state(curve, o.alpha, go);
    json j = to_json(g);
    j["alpha"] = o.alpha;
    j["converged"] = g.converged;
    j["kappa_change"] = g.kappa_change;
    return j;
  }
  if (c == "green-check") {
    const ArcLengthCurve curve = resolve_curve(o);
    const GreenCheck g = green_inequality_check(curve, o.kappa, o.n > 0 ? o.n : 256);
    return {{"kappa", g.kappa}, {"lhs", g.lhs}, {"rhs", g.rhs}, {"F_kappa", g.f_kappa},
            {"F_kappa_error", g.f_kappa_error}, {"identity_residual", g.identity_residual}};
  }
  if (c == "stadium-derivs") {
    const StadiumDerivatives d =
        stadium_derivatives(p, o.h > 0.0 ? o.h : 1e-2, o.n > 0 ? o.n : 512);
    return {{"p", d.p},
            {"h", d.h},
            {"first", d.first},
            {"second", d.second},
            {"closed_form_second", d.closed_form_second},
            {"noise_estimate", d.noise_estimate},
            {"noise_exceeds_budget", d.noise_exceeds_budget},
            {"threshold_p", stadium_threshold_p()}};
  }
  if (c == "polygon-fit") {
    const PolygonFit f = polygon_expansion_check(
        p, o.m_list.empty() ? default_polygon_m_list() : o.m_list, o.n > 0 ? o.n : 32);
    return {{"p", f.p},
            {"m_list", f.m_list},
            {"residuals", f.residuals},
            {"c4_fitted", f.c4_fitted},
            {"c6_fitted", f.c6_fitted},
            {"fit_rms", f.fit_rms},
            {"c4_reference", f.c4_reference},
            {"c2_full", f.c2_full},
            {"c4_full", f.c4_full},
            {"c2_series", f.c2_series},
            {"c4_series", f.c4_series}};
  }
  if (c == "crossover") {
    return {{"p_star", segment_crossover_p()}};
  }
  if (c == "local-stability") {
    PerturbationFamily fam;
    if (o.family == "radial") fam = radial_family();
    else if (o.family == "modes") fam = mixed_mode_family();
    else throw DomainError("--family must be radial or modes");
    const LocalStability s = local_stability_derivative(
        fam, p, o.u.value_or(kPi), o.h > 0.0 ? o.h : 1e-3, o.n > 0 ? o.n : 512);
    return {{"p", s.p},       {"u", s.u},
            {"h", s.h},       {"fd", s.fd},
            {"closed_form", s.closed_form},
            {"family", fam.name},
            {"orthogonality_defect", s.orthogonality_defect}};
  }
  if (c == "search") {
    SearchConfig cfg;
    cfg.seed = o.seed;
    cfg.restarts = o.restarts;
    if (o.n > 0) cfg.n_samples = o.n;
    const SearchResult r = maximize_pmean(o.p.value_or(4.0), o.u.value_or(kPi), o.K, cfg);
    json j = to_json(r.best, r.p, r.u, r.value);
    j["circle_value"] = r.circle_value;
    j["best_start"] = r.best_start;
    j["label"] = "evidence: best value found by local search, a lower bound only";
    json trace = json::array();
    for (const auto& t : r.trace) {
      trace.push_back({{"start", t.start}, {"iterations", t.iterations}, {"value", t.value},
                       {"closure_defect", t.closure_defect}});
    }
    j["restarts"] = trace;
    return j;
  }
  throw DomainError("unknown command \"" + c + "\"");
}

Options with_sweep_value(Options o, const std::string& param, double v) {
  if (param == "p") o.p = v;
  else if (param == "u") o.u = v;
  else if (param == "alpha") o.alpha = v;
  else if (param == "kappa") o.kappa = v;
  else if (param == "a") {
    std::ostringstream s;
    s.precision(17);
    s << "stadium:" << v;
    o.curve = s.str();
  } else if (param == "m") {
    const long m = std::lround(v);
    o.curve = "polygon:" + std::to_string(2 * m);
  }
  return o;
}

json config_echo(const Options& o) {
  json j = {{"command", o.command}, {"curve", o.curve},   {"alpha", o.alpha},
            {"kappa", o.kappa},     {"n", o.n},           {"format", o.format},
            {"seed", o.seed},       {"step", o.h},           {"K", o.K},
            {"restarts", o.restarts}, {"q", o.q},         {"u_min", o.u_min},
            {"family", o.family}};
  j["p"] = o.p ? json(*o.p) : json(nullptr);
  j["u"] = o.u ? json(*o.u) : json(nullptr);
  j["tol"] = o.tol ? json(*o.tol) : json(nullptr);
  j["sweep"] = o.sweep.empty() ? json(nullptr) : json(o.sweep);
  j["m_list"] = o.m_list;
  return j;
}

std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + csv_cell(v[i]);
    return out;
  }
  return v.dump();
}

void write_csv(std::ostream& os, const std::string& param, const std::vector<json>& rows) {
  std::vector<std::string> columns;
  if (!param.empty()) columns.push_back(param);
  for (const auto& [key, value] : rows.front()["result"].items()) {
    if (key == param) continue;
    if (!value.is_object() && !(value.is_array() && !value.empty() && value[0].is_object())) {
      columns.push_back(key);
    }
  }
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const json& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const json& v = (!param.empty() && i == 0) ? row["value"] : row["result"][columns[i]];
      os << (i ? "," : "") << csv_cell(v);
    }
    os << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{
      "chordmeans " CHORDMEANS_VERSION
      ": chord p-means of closed curves, renormalized loop energy, leaky-wire ground "
      "states.\n\n"
      "Commands: chord-mean, check-inequality, electro-energy, ground-state, "
      "green-check, stadium-derivs, polygon-fit, crossover, local-stability, search.\n\n"
      "Curves: circle, stadium:<a>, polygon:<sides>, doubled_segment, ellipse:<ratio> "
      "(all of length 2 pi) or a JSON object {kind, params, dimension, length}.\n\n"
      "CSV output: one row per sweep value. The first column is the swept parameter, "
      "the remaining columns are the scalar fields of the command's JSON result in "
      "alphabetical order; list fields are joined with ';'."};
  app.add_option("command", o.command, "Operation to run")
      ->required()
      ->check(CLI::IsMember({"chord-mean", "check-inequality", "electro-energy",
                             "ground-state", "green-check", "stadium-derivs", "polygon-fit",
                             "crossover", "local-stability", "search"}));
  app.add_option("--curve", o.curve, "Curve name[:param] or JSON object")->capture_default_str();
  app.add_option("--p", o.p, "Exponent p (default 2; 4 for search)");
  app.add_option("--u", o.u, "Arc length u (default L/2)");
  app.add_option("--alpha", o.alpha, "Coupling alpha > 0")->capture_default_str();
  app.add_option("--kappa", o.kappa, "Decay rate kappa > 0")->capture_default_str();
  app.add_option("--tol", o.tol, "Tolerance (ground-state: kappa change; check-inequality: margin)");
  app.add_option("--n", o.n, "Grid size / quadrature nodes (0 = command default)")
      ->capture_default_str();
  app.add_option("--sweep", o.sweep, "Sweep param:lo:hi:steps over p, u, a, m, kappa or alpha");
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed (search)")->capture_default_str();
  app.add_option("--step", o.h, "Finite-difference step (0 = command default)")->capture_default_str();
  app.add_option("--K", o.K, "Tangent-angle modes (search)")->capture_default_str();
  app.add_option("--restarts", o.restarts, "Number of starts (search)")->capture_default_str();
  app.add_option("--m-list", o.m_list, "Polygon half side counts (polygon-fit)");
  app.add_option("--q", o.q, "Charge density; scales the energy by q^2")->capture_default_str();
  app.add_option("--u-min", o.u_min, "Energy cutoff (0 = L * 1e-4)")->capture_default_str();
  app.add_option("--family", o.family, "Perturbation family: radial or modes")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::vector<json> rows;
    std::string param;
    if (o.sweep.empty()) {
      rows.push_back({{"result", run_single(o)}});
    } else {
      const Sweep s = parse_sweep(o.sweep);
      param = s.param;
      for (double v : s.values) {
        rows.push_back({{"value", v}, {"result", run_single(with_sweep_value(o, s.param, v))}});
      }
    }
    if (o.format == "csv") {
      write_csv(std::cout, param, rows);
    } else {
      json out = {{"version", CHORDMEANS_VERSION}, {"config", config_echo(o)}};
      if (o.sweep.empty()) {
        out["result"] = rows.front()["result"];
      } else {
        out["sweep"] = {{"param", param}, {"rows", rows}};
      }
      std::cout << out.dump(2) << "\n";
    }
  } catch (const chordmeans::DomainError& e) {
    std::cerr << json{{"error", "domain"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
