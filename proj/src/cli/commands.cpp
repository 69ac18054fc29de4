#include "bhlab/catalog.hpp"
#include "bhlab/cli.hpp"
#include "bhlab/frenet.hpp"

#include "io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace bhlab::cli {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("'" + s + "' is not a number");
  }
  if (used != s.size()) throw UsageError("'" + s + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_number(part));
  return out;
}

SpaceKind parse_space(const std::string& s) {
  for (SpaceKind k : {SpaceKind::Sphere, SpaceKind::ComplexProjective,
                      SpaceKind::QuaternionProjective, SpaceKind::EuclideanType}) {
    if (to_string(k) == s) return k;
  }
  throw UsageError("unknown space '" + s + "' (sphere, cpn, hpn, euclidean)");
}

Window parse_window(const std::string& s, std::optional<int>* samples = nullptr) {
  const auto parts = split(s, ':');
  if (parts.size() != 2 && parts.size() != 3) throw UsageError("window must be t0:t1[:n]");
  Window w;
  w.t0 = parse_number(parts[0]);
  w.t1 = parse_number(parts[1]);
  if (parts.size() == 3) {
    w.samples = static_cast<int>(parse_number(parts[2]));
    if (samples) *samples = w.samples;
  }
  return w;
}

GridSpec parse_grid(const std::string& s) {
  const auto axes = split(s, ',');
  if (axes.size() != 2) throw UsageError("grid must be x0:x1:nx,y0:y1:ny");
  GridSpec g;
  const auto x = split(axes[0], ':');
  const auto y = split(axes[1], ':');
  if (x.size() != 3 || y.size() != 3) throw UsageError("grid must be x0:x1:nx,y0:y1:ny");
  g.x0 = parse_number(x[0]);
  g.x1 = parse_number(x[1]);
  g.nx = static_cast<int>(parse_number(x[2]));
  g.y0 = parse_number(y[0]);
  g.y1 = parse_number(y[1]);
  g.ny = static_cast<int>(parse_number(y[2]));
  return g;
}

Json stats_json(const ResidualStats& s) {
  return Json{{"max", s.max}, {"mean", s.mean}, {"count", s.count}};
}

Json tolerances_json(const Tolerances& t) {
  return Json{{"harmonic", t.harmonic},
              {"biharmonic", t.biharmonic},
              {"integrability", t.integrability},
              {"closed_form", t.closed_form}};
}

Json spec_json(const FamilySpec& spec) {
  Json j{{"id", spec.id}, {"space", to_string(spec.space)}, {"n", spec.n}};
  if (is_planar(spec)) {
    j["coefficients"] = spec.planar;
  } else {
    j["params"] = spec.params;
    if (spec.id == "sphere/axis" || spec.id == "euclidean/poly") j["index"] = spec.index;
  }
  return j;
}

// Options shared by verify and scan to select a catalog family.
struct FamilyOptions {
  std::string id;
  std::string space;
  int n = 0;
  std::string params;
  int index = 0;

  void add(CLI::App* app) {
    app->add_option("--case", id, "catalog family id, e.g. sphere/axis")->required();
    app->add_option("--space", space, "target space for planar/separable");
    app->add_option("--n", n, "dimension n of the target space");
    app->add_option("--params", params, "a,b,c (planar: a,b,c or a1,b1,c1,a2,b2,c2)");
    app->add_option("--index", index, "direction index 1..n");
  }

  FamilySpec resolve() const {
    std::optional<SpaceKind> kind;
    if (!space.empty()) kind = parse_space(space);
    FamilySpec spec = default_spec(id, kind);
    if (kind && *kind != spec.space) {
      throw UsageError("--space " + space + " does not match " + id);
    }
    if (n > 0) spec.n = n;
    if (index > 0) spec.index = index;
    if (!params.empty()) {
      const auto v = parse_list(params);
      if (is_planar(spec)) {
        if (v.size() == 3) {
          spec.planar = {v[0], v[1], v[2], v[0], v[1], v[2]};
        } else if (v.size() == 6) {
          std::copy(v.begin(), v.end(), spec.planar.begin());
        } else {
          throw UsageError("planar --params takes 3 or 6 values");
        }
      } else {
        if (v.empty() || v.size() > 3) throw UsageError("--params takes up to 3 values");
        spec.params = {0.0, 0.0, 0.0};
        std::copy(v.begin(), v.end(), spec.params.begin());
      }
    }
    spec.validate();
    return spec;
  }
};

Json report_json(const ResidualReport& r, const VerifyOptions& opt) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "verify";
  j["family"] = spec_json(r.spec);
  j["space"] = r.space_name;
  if (r.planar) {
    j["grid"] = Json{{"x0", opt.grid.x0}, {"x1", opt.grid.x1}, {"nx", opt.grid.nx},
                     {"y0", opt.grid.y0}, {"y1", opt.grid.y1}, {"ny", opt.grid.ny}};
  } else {
    j["window"] = Json{{"t0", opt.window.t0}, {"t1", opt.window.t1}, {"samples", opt.window.samples}};
  }
  j["verdict"] = to_string(r.verdict);
  j["expected"] = to_string(r.expected);
  j["matches"] = r.matches;
  Json res{{"harmonic", stats_json(r.harmonic)}, {"biharmonic", stats_json(r.biharmonic)}};
  if (r.planar) {
    res["integrability"] = stats_json(r.integrability);
    res["cross_terms"] = stats_json(r.cross_terms);
  }
  j["residuals"] = res;
  j["closed_form_distance"] =
      r.closed_form_distance ? Json(*r.closed_form_distance) : Json(nullptr);
  j["tolerances"] = tolerances_json(r.tolerances);
  return j;
}

void write_manifest(const std::filesystem::path& out, const std::string& command,
                    Json parameters, Json tolerances, int exit_status, Json extra = {}) {
  Json m;
  m["schema_version"] = kSchemaVersion;
  m["command"] = command;
  m["parameters"] = std::move(parameters);
  m["tolerances"] = std::move(tolerances);
  m["outputs"] = Json::array({out.string()});
  m["exit_status"] = exit_status;
  if (!extra.is_null()) {
    for (auto& [k, v] : extra.items()) m[k] = v;
  }
  m["timestamp"] = utc_timestamp();
  write_atomic(manifest_path(out), m.dump(2) + "\n");
}

// Emits `contents` to --out (plus manifest) or to stdout.
void emit(const std::string& out_path, const std::string& contents, std::ostream& out) {
  if (out_path.empty()) {
    out << contents;
  } else {
    write_atomic(out_path, contents);
  }
}

// ---------------------------------------------------------------------------- verify

struct VerifyArgs {
  FamilyOptions family;
  std::string window = "-2:2:401";
  std::string grid = "-1:1:21,-1:1:21";
  std::optional<double> tol;
  std::string out;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const FamilySpec spec = a.family.resolve();
  VerifyOptions opt;
  opt.window = parse_window(a.window);
  opt.grid = parse_grid(a.grid);
  if (a.tol) opt.tolerances = Tolerances::uniform(*a.tol);
  const ResidualReport r = verify_family(spec, opt);
  const int status = r.matches ? kOk : kMismatch;
  const Json j = report_json(r, opt);
  emit(a.out, j.dump(2) + "\n", out);
  if (!a.out.empty()) {
    write_manifest(a.out, "verify", spec_json(spec), tolerances_json(opt.tolerances), status);
  }
  std::ostringstream summary;
  summary << spec.id << " on " << r.space_name << ": verdict " << to_string(r.verdict)
          << ", expected " << to_string(r.expected) << "; max harmonic "
          << format_double(r.harmonic.max) << ", max biharmonic "
          << format_double(r.biharmonic.max);
  if (r.planar) summary << ", max integrability " << format_double(r.integrability.max);
  if (r.closed_form_distance) {
    summary << ", closed-form distance " << format_double(*r.closed_form_distance);
  }
  (r.matches ? out : err) << (r.matches ? "" : "mismatch: ") << summary.str() << "\n";
  return status;
}

// ---------------------------------------------------------------------------- integrate

struct IntegrateArgs {
  std::string id;
  std::string coeffs;
  std::string space;
  int n = 0;
  std::string params;
  int index = 0;
  std::string window = "0:1";
  std::string method = "rk-mk4";
  int steps = 1000;
  std::optional<double> tol;
  bool repair = false;
  std::string out;
  std::string tangent_out;
};

Complex json_complex(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw UsageError("coefficient entries must be numbers or [re, im] pairs");
}

// {"space": "...", "n": N, "coords": [[c0, c1, ...], ...]} with c_j the t^j coefficient.
std::pair<CurveFamily, Json> family_from_file(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw UsageError("coefficient file: " + std::string(e.what()));
  }
  if (!j.contains("space") || !j.contains("n") || !j.contains("coords")) {
    throw UsageError("coefficient file needs space, n and coords");
  }
  const SpaceKind kind = parse_space(j["space"].get<std::string>());
  FamilySpec probe;
  probe.space = kind;
  probe.n = j["n"].get<int>();
  const SymmetricSpace space = spec_space(probe);
  std::vector<std::vector<Complex>> coeffs;
  for (const auto& coord : j["coords"]) {
    std::vector<Complex> c;
    for (const auto& v : coord) c.push_back(json_complex(v));
    coeffs.push_back(std::move(c));
  }
  Json params{{"coefficient_file", path}, {"space", to_string(kind)}, {"n", probe.n}};
  return {polynomial_family(space, coeffs), params};
}

int cmd_integrate(const IntegrateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.id.empty() == a.coeffs.empty()) throw UsageError("give exactly one of --case, --coeffs");
  std::optional<CurveFamily> fam;
  Json params;
  GroupElement x0;
  if (!a.id.empty()) {
    FamilyOptions fo{a.id, a.space, a.n, a.params, a.index};
    const FamilySpec spec = fo.resolve();
    if (is_planar(spec)) throw UsageError("integrate takes curve families only");
    fam = make_family(spec);
    params = spec_json(spec);
    x0 = spec_base(spec);
  } else {
    auto [f, p] = family_from_file(a.coeffs);
    fam = std::move(f);
    params = std::move(p);
    x0 = identity_element(fam->space().dim(), fam->space().group_kind());
  }
  const SymmetricSpace& space = fam->space();

  std::optional<int> rows;
  const Window w = parse_window(a.window, &rows);
  IntegratorConfig cfg;
  const auto method = parse_lie_method(a.method);
  if (!method) throw UsageError("unknown method '" + a.method + "'");
  cfg.method = *method;
  cfg.steps = a.steps;
  cfg.polar_repair = a.repair;
  if (a.tol) cfg.drift_tolerance = *a.tol;
  cfg.validate();
  int stride = 1;
  if (rows) {
    if (*rows < 2 || a.steps % (*rows - 1) != 0) {
      throw UsageError("window sample count n requires n - 1 to divide --steps");
    }
    stride = a.steps / (*rows - 1);
  }
  params["window"] = Json{{"t0", w.t0}, {"t1", w.t1}};
  params["method"] = a.method;
  params["steps"] = a.steps;
  params["polar_repair"] = a.repair;
  const Json tolerances{{"drift", cfg.drift_tolerance}};

  LiftTrajectory traj;
  std::optional<DriftExceeded> failure;
  try {
    traj = solve_lift(*fam, x0, w.t0, w.t1, cfg);
  } catch (const DriftExceeded& e) {
    failure.emplace(e);
    traj = e.partial();
  }

  CsvTable table;
  table.header = {"t"};
  for (auto& name : point_column_names(space.kind(), space.n())) table.header.push_back(name);
  table.header.push_back("drift");
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    if (i % stride != 0 && i + 1 != traj.times.size()) continue;
    std::vector<double> row{traj.times[i]};
    for (double v : point_columns(traj.points[i])) row.push_back(v);
    row.push_back(traj.drift[i]);
    table.rows.push_back(std::move(row));
  }
  const int status = failure ? kFailure : kOk;
  emit(a.out, table.to_string(), out);
  if (!a.out.empty()) {
    Json extra{{"partial", failure.has_value()}};
    if (failure) {
      extra["failed_step"] = failure->step();
      extra["failed_drift"] = failure->drift();
    }
    write_manifest(a.out, "integrate", params, tolerances, status, extra);
  }

  if (!a.tangent_out.empty()) {
    if (!space.real_chart()) throw UsageError("--tangent-out needs a real chart (sphere, euclidean)");
    CsvTable tangent;
    tangent.header = {"s"};
    for (Eigen::Index k = 0; k < space.chart_size(); ++k) {
      tangent.header.push_back("u" + std::to_string(k + 1));
    }
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      if (i % stride != 0 && i + 1 != traj.times.size()) continue;
      const ComplexVector u = space.m_coords(space.proj_m(fam->value(traj.times[i])));
      std::vector<double> row{traj.times[i]};
      for (Eigen::Index k = 0; k < u.size(); ++k) row.push_back(u(k).real());
      tangent.rows.push_back(std::move(row));
    }
    write_atomic(a.tangent_out, tangent.to_string());
  }
  if (failure) err << "integrate: " << failure->what() << " (partial trajectory written)\n";
  return status;
}

// ---------------------------------------------------------------------------- scan

struct ScanArgs {
  FamilyOptions family;
  std::vector<std::string> scans;
  std::string residual = "biharmonic";
  std::string window = "-2:2:401";
  std::string grid = "-1:1:21,-1:1:21";
  std::string out;
};

int scan_threads() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("BIHARMONIC_LAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<int>(n, static_cast<int>(cap));
  }
  return n;
}

int cmd_scan(const ScanArgs& a, std::ostream& out, std::ostream&) {
  const FamilySpec base = a.family.resolve();
  const bool planar = is_planar(base);
  const std::vector<std::string> names =
      planar ? std::vector<std::string>{"a1", "b1", "c1", "a2", "b2", "c2"}
             : std::vector<std::string>{"a", "b", "c"};
  if (a.residual != "harmonic" && a.residual != "biharmonic" && a.residual != "integrability") {
    throw UsageError("--residual must be harmonic, biharmonic or integrability");
  }
  if (a.residual == "integrability" && !planar) {
    throw UsageError("integrability residuals apply to planar families only");
  }

  // Scanned parameters in canonical order, each with ascending values.
  std::map<std::string, std::vector<double>> grid;
  for (const auto& s : a.scans) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--scan takes name=v1,v2,...");
    const std::string name = s.substr(0, eq);
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw UsageError("cannot scan '" + name + "' for " + base.id);
    }
    auto values = parse_list(s.substr(eq + 1));
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    grid[name] = std::move(values);
  }
  std::vector<std::string> cols;
  for (const auto& name : names) {
    if (grid.count(name)) cols.push_back(name);
  }

  std::vector<std::vector<double>> points;
  bool empty = false;
  for (const auto& c : cols) empty = empty || grid[c].empty();
  if (!empty) {
    std::vector<std::size_t> idx(cols.size(), 0);
    while (true) {
      std::vector<double> p;
      for (std::size_t k = 0; k < cols.size(); ++k) p.push_back(grid[cols[k]][idx[k]]);
      points.push_back(std::move(p));
      int k = static_cast<int>(cols.size()) - 1;
      while (k >= 0 && ++idx[k] == grid[cols[k]].size()) idx[k--] = 0;
      if (k < 0) break;
    }
  }

  VerifyOptions opt;
  opt.window = parse_window(a.window);
  opt.grid = parse_grid(a.grid);
  opt.closed_form_step = 0.0;
  std::vector<std::array<double, 2>> results(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < points.size();) {
      try {
        FamilySpec spec = base;
        for (std::size_t k = 0; k < cols.size(); ++k) {
          const auto pos = std::find(names.begin(), names.end(), cols[k]) - names.begin();
          if (planar) {
            spec.planar[pos] = points[i][k];
          } else {
            spec.params[pos] = points[i][k];
          }
        }
        const ResidualReport r = verify_family(spec, opt);
        const ResidualStats& s = a.residual == "harmonic"     ? r.harmonic
                                 : a.residual == "biharmonic" ? r.biharmonic
                                                              : r.integrability;
        results[i] = {s.max, s.mean};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int nthreads = std::min<int>(scan_threads(), std::max<std::size_t>(1, points.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  CsvTable table;
  table.header = cols;
  table.header.push_back("max_" + a.residual);
  table.header.push_back("mean_" + a.residual);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<double> row = points[i];
    row.push_back(results[i][0]);
    row.push_back(results[i][1]);
    table.rows.push_back(std::move(row));
  }
  emit(a.out, table.to_string(), out);
  if (!a.out.empty()) {
    Json params = spec_json(base);
    Json scanned = Json::object();
    for (const auto& c : cols) scanned[c] = grid[c];
    params["scan"] = scanned;
    params["residual"] = a.residual;
    write_manifest(a.out, "scan", params, Json::object(), kOk);
  }
  return kOk;
}

// ---------------------------------------------------------------------------- frenet

struct FrenetArgs {
  std::string input;
  int dim = 0;
  std::optional<double> tol;
  std::string out;
};

int cmd_frenet(const FrenetArgs& a, std::ostream& out, std::ostream& err) {
  CsvTable table;
  try {
    table = parse_csv(read_file(a.input));
  } catch (const std::runtime_error& e) {
    err << "frenet: " << e.what() << "\n";
    return kFailure;
  }
  const int dim = a.dim > 0 ? a.dim : static_cast<int>(table.header.size()) - 1;
  if (dim != 2 && dim != 3) throw UsageError("frenet: ambient dimension must be 2 or 3");
  if (static_cast<int>(table.header.size()) < dim + 1) {
    throw UsageError("frenet: input needs an arc-length column and " + std::to_string(dim) +
                     " coordinate columns");
  }
  std::vector<double> s;
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(table.rows.size()), dim);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    s.push_back(table.rows[i][0]);
    for (int k = 0; k < dim; ++k) pts(static_cast<Eigen::Index>(i), k) = table.rows[i][k + 1];
  }

  FrenetData data;
  try {
    data = frenet_from_samples(s, pts);
  } catch (const NotUnitSpeed& e) {
    err << "frenet: " << e.what() << "\n";
    return kFailure;
  } catch (const std::invalid_argument& e) {
    err << "frenet: " << e.what() << "\n";
    return kFailure;
  }
  const TangentClassification c = classify_biharmonic_tangent(data, dim, a.tol);

  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "frenet";
  j["input"] = a.input;
  j["ambient"] = dim;
  j["samples"] = data.s.size();
  j["speed"] = Json{{"min", data.min_speed}, {"max", data.max_speed}};
  j["kappa"] = Json{{"mean", c.kappa_mean}, {"spread", c.kappa_spread}, {"values", data.kappa}};
  if (dim == 3) {
    j["tau"] = data.tau.empty()
                   ? Json(nullptr)
                   : Json{{"mean", c.tau_mean}, {"spread", c.tau_spread}, {"values", data.tau}};
  }
  j["tolerance"] = c.tolerance;
  j["verdict"] = to_string(c.verdict);
  j["diagnostic"] = c.diagnostic;
  emit(a.out, j.dump(2) + "\n", out);
  if (!a.out.empty()) {
    write_manifest(a.out, "frenet", Json{{"input", a.input}, {"ambient", dim}},
                   Json{{"constancy", c.tolerance}}, kOk);
    out << "frenet: verdict " << to_string(c.verdict) << ", kappa " << format_double(c.kappa_mean)
        << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------- cases

int cmd_cases(std::ostream& out) {
  for (const auto& id : catalog_ids()) out << id << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic and biharmonic maps into symmetric spaces", "bhlab"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a catalog family against its expected verdict");
  va.family.add(verify);
  verify->add_option("--window", va.window, "t0:t1:n sample window (curves)");
  verify->add_option("--grid", va.grid, "x0:x1:nx,y0:y1:ny sample grid (planar)");
  verify->add_option("--tol", va.tol, "override every tolerance");
  verify->add_option("--out", va.out, "write the JSON report here");

  IntegrateArgs ia;
  auto* integrate = app.add_subcommand("integrate", "integrate the lift of a curve family");
  integrate->add_option("--case", ia.id, "catalog family id");
  integrate->add_option("--coeffs", ia.coeffs, "JSON file of polynomial chart coefficients");
  integrate->add_option("--space", ia.space, "target space");
  integrate->add_option("--n", ia.n, "dimension n");
  integrate->add_option("--params", ia.params, "a,b,c");
  integrate->add_option("--index", ia.index, "direction index 1..n");
  integrate->add_option("--window", ia.window, "t0:t1[:n] (n output rows)");
  integrate->add_option("--method", ia.method, "lie-euler, lie-midpoint or rk-mk4");
  integrate->add_option("--steps", ia.steps, "number of steps");
  integrate->add_option("--tol", ia.tol, "drift tolerance");
  integrate->add_flag("--polar-repair", ia.repair, "project back onto the group after each step");
  integrate->add_option("--out", ia.out, "CSV trajectory path");
  integrate->add_option("--tangent-out", ia.tangent_out, "CSV of the m-chart coordinates of F");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "maximum residual over a parameter grid");
  sa.family.add(scan);
  scan->add_option("--scan", sa.scans, "name=v1,v2,... (repeatable)");
  scan->add_option("--residual", sa.residual, "harmonic, biharmonic or integrability");
  scan->add_option("--window", sa.window, "t0:t1:n sample window (curves)");
  scan->add_option("--grid", sa.grid, "x0:x1:nx,y0:y1:ny sample grid (planar)");
  scan->add_option("--out", sa.out, "CSV path");

  FrenetArgs fa;
  auto* frenet = app.add_subcommand("frenet", "Frenet analysis of a sampled unit-speed curve");
  frenet->add_option("--input", fa.input, "CSV: arc length then 2 or 3 coordinates")->required();
  frenet->add_option("--dim", fa.dim, "ambient dimension (2 or 3)");
  frenet->add_option("--tol", fa.tol, "constancy tolerance");
  frenet->add_option("--out", fa.out, "JSON path");

  auto* cases = app.add_subcommand("cases", "list catalog family ids");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(va, out, err);
    if (integrate->parsed()) return cmd_integrate(ia, out, err);
    if (scan->parsed()) return cmd_scan(sa, out, err);
    if (frenet->parsed()) return cmd_frenet(fa, out, err);
    if (cases->parsed()) return cmd_cases(out);
  } catch (const UnknownFamily& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace bhlab::cli
