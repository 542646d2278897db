#include "fstube/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "fstube/distance.hpp"
#include "fstube/focal.hpp"
#include "fstube/monte_carlo.hpp"
#include "fstube/polynomial_io.hpp"
#include "fstube/report.hpp"
#include "fstube/riccati.hpp"
#include "fstube/tube_volume.hpp"
#include "fstube/verify.hpp"

namespace fstube::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RunConfig {
  std::string command;
  std::string model, input;
  int n = -1, d = -1, k = -1;
  std::vector<double> r;
  std::string r_grid;
  int points = 50, normals = 10;
  long samples = 100000;
  std::uint64_t seed = 7;
  int workers = 1;
  std::string variant = "auto";
  std::string method = "closed-form";
  std::string out, csv;
  std::string suite = "all";
  bool timing = false;
  std::vector<std::string> tol;
  // riccati
  int kappa = 1;
  double lambda0 = kNaN, theta = kNaN, r_max = 1.6, step = 1e-3;
  int every = 100;
};

// ---------------------------------------------------------------------------
// Input resolution

Tolerances parse_tolerances(const std::vector<std::string>& overrides) {
  Tolerances t = kDefaultTolerances;
  const std::map<std::string, double*> doubles = {
      {"on_variety", &t.on_variety},
      {"sample_residual", &t.sample_residual},
      {"smooth_gradient", &t.smooth_gradient},
      {"complex_invariance", &t.complex_invariance},
      {"first_order_residual", &t.first_order_residual},
      {"riccati_switch", &t.riccati_switch},
      {"riccati_blowup", &t.riccati_blowup},
      {"bisection_radius", &t.bisection_radius},
      {"fd_step", &t.fd_step},
  };
  const std::map<std::string, int*> ints = {{"max_resample", &t.max_resample}, {"multistart", &t.multistart}};
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw InputError("--tol expects name=value, got '" + o + "'");
    const std::string key = o.substr(0, eq), value = o.substr(eq + 1);
    try {
      std::size_t used = 0;
      if (auto it = doubles.find(key); it != doubles.end()) {
        *it->second = std::stod(value, &used);
        if (!(*it->second > 0.0)) throw InputError("--tol " + key + " must be positive");
      } else if (auto jt = ints.find(key); jt != ints.end()) {
        *jt->second = std::stoi(value, &used);
        if (*jt->second < 1) throw InputError("--tol " + key + " must be >= 1");
      } else {
        throw InputError("--tol: unknown tolerance '" + key + "'");
      }
      if (used != value.size()) throw InputError("--tol: malformed value '" + value + "'");
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const InputError*>(&e)) throw;
      throw InputError("--tol: malformed value '" + value + "'");
    }
  }
  return t;
}

int require(int value, const char* flag, const std::string& model) {
  if (value < 0) throw InputError("model '" + model + "' needs " + flag);
  return value;
}

// "fermat-3" -> ("fermat", 3); "quadric" -> ("quadric", -1).
std::pair<std::string, int> split_tag(const std::string& tag) {
  const auto dash = tag.rfind('-');
  if (dash != std::string::npos && dash + 1 < tag.size() &&
      std::all_of(tag.begin() + dash + 1, tag.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return {tag.substr(0, dash), std::stoi(tag.substr(dash + 1))};
  return {tag, -1};
}

int merge(int from_tag, int from_flag, const char* flag, const std::string& model) {
  if (from_tag >= 0 && from_flag >= 0 && from_tag != from_flag)
    throw InputError("model '" + model + "' conflicts with " + flag + " " + std::to_string(from_flag));
  return from_tag >= 0 ? from_tag : from_flag;
}

Submanifold resolve_model(const RunConfig& c) {
  if (!c.input.empty()) {
    if (!c.model.empty()) throw InputError("--model and --input are mutually exclusive");
    return load_submanifold(c.input);
  }
  if (c.model.empty()) throw InputError("one of --model or --input is required");
  const auto [tag, num] = split_tag(c.model);
  if (tag == "linear") {
    const int n = require(c.n, "--n", c.model);
    return make_linear(n, c.k >= 0 ? c.k : n - 1);
  }
  if (tag == "quadric") return make_quadric(require(c.n, "--n", c.model));
  if (tag == "fermat" || tag == "hypersurface") {
    const int n = require(c.n, "--n", c.model);
    const int d = require(merge(num, c.d, "--d", c.model), "--d", c.model);
    if (d < 1) throw InputError("--d must be >= 1");
    return make_fermat(n, d);
  }
  if (tag == "segre") return make_segre(require(merge(num, c.k, "--k", c.model), "--k", c.model));
  if (tag == "rational-normal") {
    const int d = require(merge(num, c.d, "--d", c.model), "--d", c.model);
    const int n = c.n >= 0 ? c.n : d;
    return make_rational_curve(rational_normal_curve(d, n),
                               "rational normal curve of degree " + std::to_string(d) + " in P^" + std::to_string(n));
  }
  if (tag == "ruling") {
    if (c.n >= 0 && c.n != 3) throw InputError("model 'ruling' lives in P^3");
    return make_rational_curve(quadric_ruling(), "ruling of Q^2");
  }
  throw InputError("unknown model '" + c.model +
                   "' (expected linear, quadric, fermat-d, hypersurface, segre-k, rational-normal-d, ruling)");
}

std::vector<double> resolve_radii(const RunConfig& c, bool required) {
  std::vector<double> radii = c.r;
  if (!c.r_grid.empty()) {
    const std::string& g = c.r_grid;
    try {
      if (std::count(g.begin(), g.end(), ':') == 2) {
        const auto a = g.find(':'), b = g.find(':', a + 1);
        const double lo = std::stod(g.substr(0, a)), hi = std::stod(g.substr(a + 1, b - a - 1));
        const int m = std::stoi(g.substr(b + 1));
        if (m < 1) throw InputError("--r-grid count must be >= 1");
        for (int i = 0; i < m; ++i) radii.push_back(m == 1 ? lo : lo + (hi - lo) * i / (m - 1));
      } else {
        std::stringstream ss(g);
        for (std::string item; std::getline(ss, item, ',');) radii.push_back(std::stod(item));
      }
    } catch (const InputError&) {
      throw;
    } catch (const std::logic_error&) {
      throw InputError("--r-grid: expected 'start:stop:count' or a comma list, got '" + g + "'");
    }
  }
  if (required && radii.empty()) throw InputError("--r or --r-grid is required");
  for (double r : radii)
    if (!(r >= 0.0 && r <= kDiameter)) throw InputError("radius " + std::to_string(r) + " outside [0, pi/2]");
  return radii;
}

HypersurfaceVariant resolve_variant(const std::string& v, int n, int d) {
  if (v == "as-printed") return HypersurfaceVariant::as_printed;
  if (v == "corrected") return HypersurfaceVariant::corrected;
  return canonical_variant(n, d);
}

FocalMethod resolve_method(const std::string& m) {
  return m == "numeric" ? FocalMethod::numeric : FocalMethod::closed_form;
}

Json model_json(const Submanifold& x) {
  return {{"model", x.name()}, {"n", x.ambient_dim()}, {"k", x.complex_dim()}, {"degree", x.degree()}};
}

// ---------------------------------------------------------------------------
// Output

void emit(const Json& j, const RunConfig& c, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + c.out + "'");
  f << text;
}

std::string csv_number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

void write_csv(const RunConfig& c, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  if (c.csv.empty()) return;
  std::ofstream f(c.csv, std::ios::binary);
  if (!f) throw InputError("cannot write '" + c.csv + "'");
  for (std::size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
  f << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << csv_number(row[i]);
    f << "\n";
  }
}

ExperimentReport make_report(const std::string& claim, const RunConfig& c, Json inputs) {
  ExperimentReport rep;
  rep.claim = claim;
  rep.inputs = std::move(inputs);
  rep.seed = c.seed;
  rep.pass = true;
  rep.outcome = "pass";
  return rep;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_focal(const RunConfig& c, std::ostream& out) {
  const Submanifold x = resolve_model(c);
  const Tolerances tol = parse_tolerances(c.tol);
  Json inputs = model_json(x);
  inputs["points"] = c.points;
  inputs["normals"] = c.normals;
  inputs["method"] = c.method;
  ExperimentReport rep = make_report("focal", c, inputs);
  const FocalEstimate est = min_focal_distance_estimate(x, c.points, c.normals, c.seed, resolve_method(c.method), tol);
  Json point = Json::array(), normal = Json::array();
  for (Eigen::Index i = 0; i < est.argmin_point.size(); ++i)
    point.push_back({json_number(est.argmin_point(i).real()), json_number(est.argmin_point(i).imag())});
  for (Eigen::Index i = 0; i < est.argmin_normal.size(); ++i)
    normal.push_back({json_number(est.argmin_normal(i).real()), json_number(est.argmin_normal(i).imag())});
  rep.values = {{"estimate", json_number(est.estimate)},
                {"mean", json_number(est.mean)},
                {"variance", json_number(est.variance)},
                {"samples", est.samples},
                {"resampled", est.failures},
                {"multiplicity", est.multiplicity},
                {"argmin_point", point},
                {"argmin_normal", normal}};
  if (const auto* h = std::get_if<Hypersurface>(&x.kind())) {
    const HypersurfaceVariant v = resolve_variant(c.variant, h->poly.ambient_dim(), h->poly.degree());
    rep.variant = to_string(v);
    rep.values["gray_bound"] = json_number(gray_bound(h->poly.degree(), v));
  }
  emit(report_json(rep), c, out);
  return kOk;
}

int cmd_tube_volume(const RunConfig& c, std::ostream& out) {
  const Submanifold x = resolve_model(c);
  const std::vector<double> radii = resolve_radii(c, true);
  const int n = x.ambient_dim();
  Json inputs = model_json(x);
  inputs["r"] = radii;
  ExperimentReport rep = make_report("tube-volume", c, inputs);
  const ChernIntegrals ci = chern_integrals_for(x);
  const auto* hyper = std::get_if<Hypersurface>(&x.kind());
  const auto* curve = std::get_if<RationalCurve>(&x.kind());
  std::optional<HypersurfaceVariant> variant;
  if (hyper) variant = resolve_variant(c.variant, n, hyper->poly.degree());
  std::optional<CurveVolume> cv;
  if (curve) cv = curve_volume(*curve);
  Json rows = Json::array();
  std::vector<std::vector<double>> table;
  for (double r : radii) {
    VolumeReport v;
    const double general = gray_tube_volume_general(ci, n, r);
    Json row = {{"r", json_number(r)}};
    if (hyper) {
      const int d = hyper->poly.degree();
      v.value = tube_volume_hypersurface(n, d, r, *variant);
      v.method = "closed-form-hypersurface";
      v.variant = to_string(*variant);
      const double ap = tube_volume_hypersurface(n, d, r, HypersurfaceVariant::as_printed);
      const double co = tube_volume_hypersurface(n, d, r, HypersurfaceVariant::corrected);
      row["as_printed"] = json_number(ap);
      row["corrected"] = json_number(co);
      table.push_back({r, ap, co, general});
    } else if (curve) {
      v.value = tube_volume_curve(n, cv->volume, r);
      v.method = "closed-form-curve";
      table.push_back({r, v.value, general});
    } else {
      v.value = general;
      v.method = "closed-form-g1";
      table.push_back({r, general});
    }
    row["volume"] = volume_json(v);
    row["general_formula"] = json_number(general);
    rows.push_back(row);
  }
  rep.values = {{"rows", rows}, {"ambient_volume", json_number(projective_volume(n))}};
  if (cv) rep.values["curve_volume"] = json_number(cv->volume);
  if (variant) rep.variant = to_string(*variant);
  if (hyper) write_csv(c, {"r", "as_printed", "corrected", "general"}, table);
  else if (curve) write_csv(c, {"r", "curve_formula", "general"}, table);
  else write_csv(c, {"r", "general"}, table);
  emit(report_json(rep), c, out);
  return kOk;
}

int cmd_mc_volume(const RunConfig& c, std::ostream& out) {
  const Submanifold x = resolve_model(c);
  const std::vector<double> radii = resolve_radii(c, true);
  const Tolerances tol = parse_tolerances(c.tol);
  const int n = x.ambient_dim();
  Json inputs = model_json(x);
  inputs["r"] = radii;
  inputs["samples"] = c.samples;
  inputs["workers"] = c.workers;
  ExperimentReport rep = make_report("mc-volume", c, inputs);
  const std::vector<VolumeReport> mc = mc_tube_volume(x, radii, c.samples, c.seed, c.workers, tol);
  const ChernIntegrals ci = chern_integrals_for(x);
  const auto* hyper = std::get_if<Hypersurface>(&x.kind());
  Json rows = Json::array();
  std::vector<std::vector<double>> table;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double r = radii[j];
    const double general = gray_tube_volume_general(ci, n, r);
    const double se = *mc[j].stderr_value;
    Json row = {{"r", json_number(r)}, {"monte_carlo", volume_json(mc[j])}, {"general_formula", json_number(general)}};
    row["z_general"] = json_number((mc[j].value - general) / se);
    double ap = kNaN, co = kNaN;
    if (hyper) {
      const int d = hyper->poly.degree();
      ap = tube_volume_hypersurface(n, d, r, HypersurfaceVariant::as_printed);
      co = tube_volume_hypersurface(n, d, r, HypersurfaceVariant::corrected);
      row["as_printed"] = json_number(ap);
      row["corrected"] = json_number(co);
      row["z_as_printed"] = json_number((mc[j].value - ap) / se);
      row["z_corrected"] = json_number((mc[j].value - co) / se);
    }
    rows.push_back(row);
    table.push_back({r, ap, co, general, mc[j].value, se});
  }
  rep.values = {{"rows", rows}, {"failures", *mc.front().failures}};
  if (hyper) rep.variant = to_string(resolve_variant(c.variant, n, hyper->poly.degree()));
  write_csv(c, {"r", "as_printed", "corrected", "general", "monte_carlo", "stderr"}, table);
  emit(report_json(rep), c, out);
  return kOk;
}

int cmd_riccati(const RunConfig& c, std::ostream& out) {
  if (c.kappa != 1 && c.kappa != 2) throw InputError("--kappa must be 1 or 2");
  if (std::isnan(c.lambda0) == std::isnan(c.theta)) throw InputError("exactly one of --lambda0 or --theta is required");
  if (!(c.r_max > 0.0) || !(c.step > 0.0)) throw InputError("--r-max and --step must be positive");
  if (c.every < 1) throw InputError("--every must be >= 1");
  const Tolerances tol = parse_tolerances(c.tol);
  RiccatiBranch b;
  try {
    b = std::isnan(c.theta) ? RiccatiBranch::from_initial_value(c.kappa, c.lambda0) : RiccatiBranch(c.kappa, c.theta);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  Json inputs = {{"kappa", c.kappa}, {"r_max", json_number(c.r_max)}, {"step", json_number(c.step)}};
  if (std::isnan(c.theta)) inputs["lambda0"] = json_number(c.lambda0);
  else inputs["theta"] = json_number(c.theta);
  ExperimentReport rep = make_report("riccati", c, inputs);
  const RiccatiTrajectory t = riccati_integrate_numeric(b, c.r_max, c.step, tol);
  Json rows = Json::array();
  std::vector<std::vector<double>> table;
  double worst = 0.0;
  for (std::size_t j = 0; j < t.r.size(); ++j) {
    const double closed = riccati_closed_form(b, t.r[j]);
    if (std::abs(closed) < tol.riccati_switch)
      worst = std::max(worst, std::abs(closed - t.lambda[j]) / std::max(1.0, std::abs(closed)));
    if (j % c.every != 0 && j + 1 != t.r.size()) continue;
    rows.push_back({{"r", json_number(t.r[j])}, {"closed_form", json_number(closed)}, {"numeric", json_number(t.lambda[j])}});
    table.push_back({t.r[j], closed, t.lambda[j]});
  }
  rep.values = {{"theta", json_number(b.theta)},
                {"closed_form_blowup", json_number(b.blowup_radius())},
                {"numeric_blowup", json_number(t.blowup_radius)},
                {"steps", t.steps},
                {"rows", rows}};
  rep.margins = {{"max_relative_error", json_number(worst)}};
  write_csv(c, {"r", "closed_form", "numeric"}, table);
  emit(report_json(rep), c, out);
  return kOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const Submanifold x = resolve_model(c);
  const bool symmetric_model = std::holds_alternative<LinearSubspace>(x.kind()) ||
                              std::holds_alternative<SegreEmbedding>(x.kind()) ||
                              (c.model.rfind("quadric", 0) == 0);
  ExperimentReport rep = constant_spectrum_scan(x, c.points, c.normals, c.seed, symmetric_model);
  emit(report_json(rep, c.timing), c, out);
  return rep.pass ? kOk : kVerificationFailed;
}

int cmd_curve_volume(const RunConfig& c, std::ostream& out) {
  const Submanifold x = resolve_model(c);
  const auto* curve = std::get_if<RationalCurve>(&x.kind());
  if (!curve) throw InputError("curve-volume needs a rational curve model or input");
  ExperimentReport rep = make_report("curve-volume", c, model_json(x));
  const CurveVolume v = curve_volume(*curve);
  rep.values = {{"volume", json_number(v.volume)},
                {"volume_over_pi", json_number(v.ratio_to_line)},
                {"volume_over_2pi", json_number(v.ratio_to_2pi)},
                {"error_estimate", json_number(v.error_estimate)}};
  emit(report_json(rep), c, out);
  return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  std::vector<ExperimentReport> reports;
  if (!c.model.empty() || !c.input.empty()) {
    // A single experiment on a user-supplied model.
    const Submanifold x = resolve_model(c);
    if (c.suite == "gray-bound") {
      const auto* h = std::get_if<Hypersurface>(&x.kind());
      if (!h) throw InputError("gray-bound needs a hypersurface");
      reports.push_back(check_gray_degree_bound(x, c.points, c.normals, c.seed,
                                                resolve_variant(c.variant, h->poly.ambient_dim(), h->poly.degree())));
    } else if (c.suite == "constant-spectrum") {
      reports.push_back(constant_spectrum_scan(x, c.points, c.normals, c.seed, false));
    } else if (c.suite == "leaf-distance") {
      reports.push_back(leaf_distance_pattern(x, c.seed));
    } else if (c.suite == "curve-bound") {
      reports.push_back(quadric_curve_bound(x, c.points, c.normals, c.seed));
    } else if (c.suite == "jacobi") {
      reports.push_back(jacobi_consistency(x, 20, c.seed));
    } else {
      throw InputError("--suite " + c.suite +
                       " does not take a model (use gray-bound, constant-spectrum, leaf-distance, curve-bound or jacobi)");
    }
  } else {
    SuiteOptions opt;
    opt.suite = c.suite;
    opt.seed = c.seed;
    opt.samples = c.samples;
    opt.workers = c.workers;
    reports = run_suite(opt);
  }
  emit(suite_json(reports, c.seed, c.workers, c.samples, c.suite, c.timing), c, out);
  const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return all ? kOk : kVerificationFailed;
}

// ---------------------------------------------------------------------------
// Flags

void add_model_flags(CLI::App* app, RunConfig& c) {
  auto* model = app->add_option("--model", c.model, "built-in model tag");
  auto* input = app->add_option("--input", c.input, "polynomial or curve file (JSON)");
  model->excludes(input);
  app->add_option("--n", c.n, "ambient dimension")->check(CLI::Range(1, 64));
  app->add_option("--d", c.d, "degree")->check(CLI::Range(1, 64));
  app->add_option("--k", c.k, "subspace / Segre dimension")->check(CLI::Range(0, 64));
  app->add_option("--variant", c.variant, "hypersurface normalization")
      ->check(CLI::IsMember({"as-printed", "corrected", "auto"}));
}

void add_seed_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--seed", c.seed, "root seed");
  app->add_option("--out", c.out, "write JSON here instead of stdout");
}

void add_sampling_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--points", c.points, "sampled points")->check(CLI::Range(1, 1000000));
  app->add_option("--normals", c.normals, "normals per point")->check(CLI::Range(1, 1000000));
}

void add_radius_flags(CLI::App* app, RunConfig& c) {
  app->add_option("--r", c.r, "radius (repeatable)");
  app->add_option("--r-grid", c.r_grid, "start:stop:count or r1,r2,...");
  app->add_option("--csv", c.csv, "also write a CSV table");
}

void add_tol_flag(CLI::App* app, RunConfig& c) {
  app->add_option("--tol", c.tol, "tolerance override name=value (repeatable)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fubini-Study tube geometry in complex projective space", "fstube"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig c;

  auto* focal = app.add_subcommand("focal", "minimum focal distance over sampled (point, normal) pairs");
  add_model_flags(focal, c);
  add_sampling_flags(focal, c);
  add_seed_flags(focal, c);
  add_tol_flag(focal, c);
  focal->add_option("--method", c.method, "branch focal radii")->check(CLI::IsMember({"closed-form", "numeric"}));

  auto* tube = app.add_subcommand("tube-volume", "closed-form tube volumes");
  add_model_flags(tube, c);
  add_radius_flags(tube, c);
  add_seed_flags(tube, c);

  auto* mc = app.add_subcommand("mc-volume", "Monte Carlo tube volumes");
  add_model_flags(mc, c);
  add_radius_flags(mc, c);
  add_seed_flags(mc, c);
  add_tol_flag(mc, c);
  mc->add_option("--samples", c.samples, "uniform samples")->check(CLI::Range(1000L, 1000000000L));
  mc->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 256));

  auto* ric = app.add_subcommand("riccati", "closed-form and numeric Riccati branch");
  ric->add_option("--kappa", c.kappa, "1 or 2");
  ric->add_option("--lambda0", c.lambda0, "initial value");
  ric->add_option("--theta", c.theta, "phase, 0 for lambda(0) = -inf");
  ric->add_option("--r-max", c.r_max, "integration length");
  ric->add_option("--step", c.step, "RK4 step");
  ric->add_option("--every", c.every, "report every n-th grid point");
  ric->add_option("--csv", c.csv, "also write a CSV table");
  add_seed_flags(ric, c);
  add_tol_flag(ric, c);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "shape-operator spectra over samples");
  add_model_flags(spectrum_cmd, c);
  add_sampling_flags(spectrum_cmd, c);
  add_seed_flags(spectrum_cmd, c);
  spectrum_cmd->add_flag("--timing", c.timing, "include wall-clock seconds");

  auto* ver = app.add_subcommand("verify", "run verification experiments");
  add_model_flags(ver, c);
  add_sampling_flags(ver, c);
  add_seed_flags(ver, c);
  std::vector<std::string> suites = suite_names();
  suites.insert(suites.begin(), "all");
  ver->add_option("--suite", c.suite, "experiment group")->check(CLI::IsMember(suites));
  ver->add_option("--samples", c.samples, "Monte Carlo samples per tube-volume case")
      ->check(CLI::Range(1000L, 1000000000L));
  ver->add_option("--workers", c.workers, "worker threads")->check(CLI::Range(1, 256));
  ver->add_flag("--timing", c.timing, "include wall-clock seconds (breaks byte-identity)");

  auto* cvol = app.add_subcommand("curve-volume", "area of a rational curve");
  add_model_flags(cvol, c);
  add_seed_flags(cvol, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (sub->count("--help")) return kOk;
    if (name == "focal") return cmd_focal(c, out);
    if (name == "tube-volume") return cmd_tube_volume(c, out);
    if (name == "mc-volume") return cmd_mc_volume(c, out);
    if (name == "riccati") return cmd_riccati(c, out);
    if (name == "spectrum") return cmd_spectrum(c, out);
    if (name == "verify") return cmd_verify(c, out);
    if (name == "curve-volume") return cmd_curve_volume(c, out);
    err << "error: unknown command " << name << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    // InputError, PolynomialError, GeometryError and argument checks.
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace fstube::cli
