#include "mixlab/dirichlet_variational.hpp"
#include "mixlab/kernel_constants.hpp"
#include "mixlab/pointwise_operator.hpp"
#include "mixlab/serialization.hpp"
#include "mixlab/spectral_forms.hpp"
#include "mixlab/verification.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace mixlab;

namespace {

enum Exit { exit_ok = 0, exit_checks_failed = 1, exit_usage = 2, exit_refused = 3, exit_numerical = 4, exit_io = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 42;
  std::string out;
  std::optional<double> tol;
  bool force = false;

  bool to_dir() const { return !out.empty(); }
};

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Destination path in the output directory; refuses to clobber without --force.
fs::path target(const Global& g, const std::string& name) {
  fs::create_directories(g.out);
  const fs::path p = fs::path(g.out) / name;
  if (fs::exists(p) && !g.force) throw IoError("refusing to overwrite '" + p.string() + "' (pass --force)");
  return p;
}

void write_text(const Global& g, const std::string& name, const std::string& text) {
  const fs::path p = target(g, name);
  std::ofstream os(p, std::ios::binary);
  if (!os) throw IoError("cannot write '" + p.string() + "'");
  os << text;
}

// Report file when --out is set, stdout otherwise.
void emit(const Global& g, const std::string& name, const std::string& text) {
  if (g.to_dir()) write_text(g, name, text);
  else std::cout << text;
}

Json envelope(const std::string& command, const Json& config, const Global& g) {
  Json full = config;
  full["command"] = command;
  full["seed"] = g.seed;
  if (g.tol) full["tol"] = *g.tol;
  return {{"command", command},
          {"config", full},
          {"config_hash", hex(config_hash(full))},
          {"seed", g.seed},
          {"timestamp", timestamp()}};
}

Json grid_json(const GridSpec& g) { return {{"N", g.N}, {"nodes", g.nodes}, {"L", g.L}, {"dx", g.dx()}}; }

Json check_json(const std::string& name, double value, double threshold, bool pass) {
  return {{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", pass}};
}

bool all_pass(const Json& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c.at("pass").get<bool>(); });
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string table_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_number(row[i]);
    os << "\n";
  }
  return os.str();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ContractViolation("cannot parse number '" + tok + "' in '" + text + "'");
    }
  }
  return v;
}

// Evaluation points from a CSV with columns x (N = 1) or x,y (N = 2); a header line is skipped.
std::vector<Point> read_points(const std::string& path, int N) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open points file '" + path + "'");
  std::vector<Point> pts;
  for (std::string line; std::getline(is, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> v;
    try {
      v = parse_list(line);
    } catch (const ContractViolation&) {
      if (pts.empty()) continue;  // header
      throw;
    }
    if (static_cast<int>(v.size()) < N) throw ContractViolation("points file row '" + line + "' has fewer than N columns");
    pts.push_back({v[0], N == 2 ? v[1] : 0.0});
  }
  if (pts.empty()) throw ContractViolation("points file '" + path + "' has no rows");
  return pts;
}

MeasureFamily family_or_uniform(const std::string& text, int N) {
  return text.empty() ? MeasureFamily::constant(SphericalMeasure::uniform(N)) : parse_family(text);
}

// ---- measure ----

struct MeasureArgs {
  std::string sigma = "uniform:1";
  double s = 0.5;
  std::string mu;
  std::optional<double> s_star;
};

int run_measure(const MeasureArgs& a, const Global& g) {
  const SphericalMeasure sigma = parse_spherical_measure(a.sigma);
  Json config{{"sigma", to_json(sigma)}, {"s", a.s}};
  if (!a.mu.empty()) config["mu"] = to_json(parse_order_measure(a.mu));
  Json rep = envelope("measure", config, g);
  const Maximizer mx = maximizing_direction(sigma, a.s);
  Json result{{"dimension", sigma.dimension()},
              {"maximizer", {{"e", {mx.e[0], mx.e[1]}}, {"angle", mx.angle}, {"M_at_es", mx.value}}},
              {"min_moment", minimal_moment(sigma, 2.0 * a.s)}};
  Json checks = Json::array();
  checks.push_back(check_json("M_{s,sigma}(e_s) > 0", mx.value, 0.0, mx.value > 0.0));
  if (!a.mu.empty()) {
    const OrderMeasure mu = parse_order_measure(a.mu);
    const double s_star = a.s_star.value_or(default_s_star(mu));
    const AssumptionReport ar = validate(mu, s_star, sigma.dimension(), 4.0);
    result["assumptions"] = {{"s_star", ar.s_star},
                             {"gamma", ar.gamma},
                             {"s_sharp", ar.s_sharp},
                             {"two_star", ar.two_star},
                             {"critical_from_fallback", ar.critical_from_fallback},
                             {"warnings", ar.warnings}};
    const double inf = std::numeric_limits<double>::infinity();
    checks.push_back(check_json("mu+([s*,inf)) > 0", mass(mu.plus, s_star, inf), 0.0, ar.positive_mass_above));
    checks.push_back(check_json("mu-([s*,inf)) = 0", mass(mu.minus, s_star, inf), 0.0, ar.negative_below));
    checks.push_back(check_json("gamma < 1", ar.gamma, 1.0, ar.gamma_small));
  }
  rep["result"] = result;
  rep["checks"] = checks;
  rep["pass"] = all_pass(checks);
  emit(g, "measure.json", rep.dump(2) + "\n");
  return rep["pass"].get<bool>() ? exit_ok : exit_checks_failed;
}

// ---- constant ----

struct ConstantArgs {
  int m = 1;
  double s = 0.5;
  std::string sigma;
  std::string route = "quadrature";
};

Json bundle_json(const ConstantBundle& b) {
  return {{"route", to_string(b.route)},
          {"m", b.m},
          {"s", b.s},
          {"M_at_es", b.M_at_es},
          {"cosine_integral", b.cosine_integral},
          {"c", b.c_ms}};
}

int run_constant(const ConstantArgs& a, const Global& g) {
  const SphericalMeasure sigma = a.sigma.empty() ? SphericalMeasure::uniform(1) : parse_spherical_measure(a.sigma);
  Json rep = envelope("constant", {{"m", a.m}, {"s", a.s}, {"sigma", to_json(sigma)}, {"route", a.route}}, g);
  Json checks = Json::array();
  if (a.route != "all") {
    const ConstantBundle b = normalization_constant(a.m, a.s, sigma, parse_route(a.route));
    rep["result"] = bundle_json(b);
    checks.push_back(check_json("c_{m,s} finite and positive", b.c_ms, 0.0, std::isfinite(b.c_ms) && b.c_ms > 0.0));
  } else {
    Json routes = Json::array();
    std::vector<double> values;
    for (ConstantRoute r : {ConstantRoute::closed_form, ConstantRoute::recursion, ConstantRoute::quadrature}) {
      try {
        const ConstantBundle b = normalization_constant(a.m, a.s, sigma, r);
        routes.push_back(bundle_json(b));
        values.push_back(b.c_ms);
      } catch (const std::exception& e) {
        routes.push_back({{"route", to_string(r)}, {"unavailable", e.what()}});
      }
    }
    if (values.empty()) throw ContractViolation("no route applies to m = " + std::to_string(a.m));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double spread = (*hi - *lo) / std::abs(*hi);
    rep["result"] = {{"routes", routes}, {"relative_spread", spread}};
    const double tol = g.tol.value_or(1e-8);
    checks.push_back(check_json("routes agree", spread, tol, spread <= tol));
  }
  rep["checks"] = checks;
  rep["pass"] = all_pass(checks);
  emit(g, "constant.json", rep.dump(2) + "\n");
  return rep["pass"].get<bool>() ? exit_ok : exit_checks_failed;
}

// ---- apply ----

struct FieldArgs {
  std::string mu = "delta:0.5";
  std::string family;
  std::string field = "builtin:bump";
  int dim = 1;
};

struct ApplyArgs : FieldArgs {
  std::string points;
  std::string x = "-0.5,0,0.5";
};

int run_apply(const ApplyArgs& a, const Global& g) {
  const OrderMeasure mu = parse_order_measure(a.mu);
  const MeasureFamily family = family_or_uniform(a.family, a.dim);
  const SmoothField u = fields::parse_builtin(a.field, family.dimension());
  const int N = family.dimension();
  std::vector<Point> pts;
  if (!a.points.empty()) {
    pts = read_points(a.points, N);
  } else {
    if (N != 1) throw ContractViolation("--x lists 1D points; use --points for N = 2");
    for (double x : parse_list(a.x)) pts.push_back({x, 0.0});
  }
  QuadratureSpec spec;
  if (g.tol) spec.tolerance = *g.tol;
  std::vector<std::vector<double>> rows;
  for (const Point& x : pts) {
    const Evaluation e = apply_superposition(u, mu, family, x, spec);
    if (N == 1) rows.push_back({x[0], e.value, e.error});
    else rows.push_back({x[0], x[1], e.value, e.error});
  }
  const std::vector<std::string> header = N == 1 ? std::vector<std::string>{"x", "value", "error_estimate"}
                                                 : std::vector<std::string>{"x", "y", "value", "error_estimate"};
  const std::string csv = table_csv(header, rows);
  if (!g.to_dir()) {
    std::cout << csv;
    return exit_ok;
  }
  Json pj = Json::array();
  for (const Point& x : pts) pj.push_back({x[0], x[1]});
  Json rep = envelope("apply",
                      {{"mu", to_json(mu)}, {"family", to_json(family)}, {"field", a.field}, {"points", pj},
                       {"quadrature_tolerance", spec.tolerance}},
                      g);
  rep["result"] = {{"csv", "apply.csv"}, {"rows", rows.size()}};
  rep["checks"] = Json::array();
  rep["pass"] = true;
  write_text(g, "apply.csv", csv);
  write_text(g, "apply.json", rep.dump(2) + "\n");
  return exit_ok;
}

// ---- energy ----

struct EnergyArgs : FieldArgs {
  int nodes = 4096;
  double L = 32.0;
  bool bruteforce = false;
};

int run_energy(const EnergyArgs& a, const Global& g) {
  const OrderMeasure mu = parse_order_measure(a.mu);
  const MeasureFamily family = family_or_uniform(a.family, a.dim);
  const SmoothField u = fields::parse_builtin(a.field, family.dimension());
  const GridSpec grid{family.dimension(), a.nodes, a.L};
  grid.check();
  const GridFunction ug = GridFunction::sample(grid, u.value);
  check_interior_support(ug, 1e-14);
  const MultiplierGrid mult = build_multiplier(grid, mu, family);
  const XNorm xn = x_norm(ug, mu, family);
  Json rep = envelope("energy",
                      {{"mu", to_json(mu)}, {"family", to_json(family)}, {"field", a.field}, {"grid", grid_json(grid)},
                       {"bruteforce", a.bruteforce}},
                      g);
  const double E = energy(ug, ug, mult);
  Json blocks = Json::array();
  for (const auto& [k, v] : xn.blocks) blocks.push_back({k, v});
  Json result{{"grid", grid_json(grid)},
              {"energy", E},
              {"l2_norm_squared", ug.dot_l2(ug)},
              {"x_norm", xn.norm},
              {"E_plus", xn.E_plus},
              {"E_minus", xn.E_minus},
              {"blocks", blocks},
              {"multiplier_min", mult.min_value},
              {"multiplier_negative", mult.negative}};
  Json checks = Json::array();
  const double parseval = std::abs(l2_norm_squared_spectral(ug) - ug.dot_l2(ug)) / ug.dot_l2(ug);
  checks.push_back(check_json("Parseval", parseval, 1e-12, parseval <= 1e-12));
  if (a.bruteforce) {
    const bool single = mu.minus.empty() && mu.plus.density.empty() && mu.plus.atoms.size() == 1;
    if (grid.N != 1 || !single || !family.at(mu.plus.atoms[0].s).is_uniform())
      throw ContractViolation("--bruteforce needs N = 1, uniform sigma and a single atom of mu");
    const double s = mu.plus.atoms[0].s, w = mu.plus.atoms[0].weight;
    const double bf = w * energy_bruteforce_1d(u, grid, order_above(s), s);
    const double dev = std::abs(bf - E) / std::abs(E), tol = g.tol.value_or(1e-3);
    result["bruteforce_energy"] = bf;
    checks.push_back(check_json("brute-force vs Plancherel", dev, tol, dev <= tol));
  }
  rep["result"] = result;
  rep["checks"] = checks;
  rep["pass"] = all_pass(checks);
  emit(g, "energy.json", rep.dump(2) + "\n");
  return rep["pass"].get<bool>() ? exit_ok : exit_checks_failed;
}

// ---- spectrum ----

struct DomainArgs {
  std::string mu = "delta:0.5";
  std::string family;
  std::string omega = "interval:0,1";
  int nodes = 1024;
};

struct SpectrumArgs : DomainArgs {
  int k = 4;
};

Json problem_config(const OrderMeasure& mu, const MeasureFamily& family, const DomainMask& mask) {
  return {{"mu", to_json(mu)}, {"family", to_json(family)}, {"omega", mask.description}, {"grid", grid_json(mask.grid)}};
}

int run_spectrum(const SpectrumArgs& a, const Global& g) {
  const DomainMask mask = parse_omega(a.omega, a.nodes);
  const OrderMeasure mu = parse_order_measure(a.mu);
  const MeasureFamily family = family_or_uniform(a.family, mask.grid.N);
  Json config = problem_config(mu, family, mask);
  config["k"] = a.k;
  Json rep = envelope("spectrum", config, g);
  const MultiplierGrid mult = build_multiplier(mask.grid, mu, family);
  require_positive_form(mult);
  EigenOptions opt{g.seed};
  if (g.tol) opt.relative_residual = *g.tol;
  const SpectrumResult sp = eigenpairs(mult, mask, a.k, opt);
  Json checks = Json::array();
  bool increasing = true;
  for (std::size_t i = 1; i < sp.eigenvalues.size(); ++i) increasing = increasing && sp.eigenvalues[i] > sp.eigenvalues[i - 1];
  checks.push_back(check_json("lambda_1 > 0", sp.eigenvalues.front(), 0.0, sp.eigenvalues.front() > 0.0));
  checks.push_back(check_json("eigenvalues increasing", increasing ? 0.0 : 1.0, 0.0, increasing));
  const double worst = *std::max_element(sp.residuals.begin(), sp.residuals.end());
  const double rtol = 100.0 * opt.relative_residual;
  checks.push_back(check_json("max relative residual", worst, rtol, worst <= rtol));
  Json files = Json::array();
  if (g.to_dir()) {
    for (std::size_t i = 0; i < sp.eigenvectors.size(); ++i) {
      const std::string name = "eigenvector_" + std::to_string(i + 1) + ".bin";
      write_binary(sp.eigenvectors[i], target(g, name).string());
      files.push_back(name);
    }
  }
  rep["result"] = {{"grid", grid_json(mask.grid)},
                   {"unknowns", mask.unknowns()},
                   {"eigenvalues", sp.eigenvalues},
                   {"residuals", sp.residuals},
                   {"iterations", sp.iterations},
                   {"eigenvector_files", files}};
  rep["checks"] = checks;
  rep["pass"] = all_pass(checks);
  emit(g, "spectrum.json", rep.dump(2) + "\n");
  return rep["pass"].get<bool>() ? exit_ok : exit_checks_failed;
}

// ---- solve ----

struct SolveArgs : DomainArgs {
  std::string kind;
  double q = 4.0;
  std::optional<double> a, b;
  int l = 1;
  std::optional<double> s_star;
};

int run_solve(const SolveArgs& a, const Global& g) {
  VariationalProblem P;
  P.mask = parse_omega(a.omega, a.nodes);
  P.mu = parse_order_measure(a.mu);
  P.family = family_or_uniform(a.family, P.mask.grid.N);
  P.s_star = a.s_star;
  Json config = problem_config(P.mu, P.family, P.mask);
  config["kind"] = a.kind;
  Json result{{"grid", grid_json(P.mask.grid)}, {"unknowns", P.mask.unknowns()}};
  Json checks = Json::array();
  GridFunction solution;
  if (a.kind == "mp") {
    config["q"] = a.q;
    MountainPassOptions opt;
    if (g.tol) opt.tol = *g.tol;
    const MountainPassResult r = solve_mountain_pass(P, a.q, opt);
    solution = r.result.solution;
    const auto& c = r.certificate;
    result.update({{"residual", r.result.residual},
                   {"functional", r.result.energy},
                   {"iterations", r.result.iterations},
                   {"nehari_defect", r.nehari_defect},
                   {"certificate",
                    {{"rho", c.rho}, {"beta", c.beta}, {"R_min", c.R_min}, {"far_energy", c.far_energy}, {"far_value", c.far_value}}}});
    checks.push_back(check_json("residual", r.result.residual, opt.tol, r.result.residual <= opt.tol));
    checks.push_back(check_json("beta > 0", c.beta, 0.0, c.beta > 0.0));
    checks.push_back(check_json("J(e) < 0 beyond rho", c.far_value, 0.0, c.far_value < 0.0 && c.far_energy > c.rho));
    checks.push_back(check_json("J(u) >= beta", r.result.energy, c.beta, r.result.energy >= c.beta));
  } else if (a.kind == "jump") {
    if (a.l < 1) throw ContractViolation("--l must be at least 1");
    const PreparedProblem prep = prepare(P);
    double ja, jb;
    if (a.a && a.b) {
      ja = *a.a;
      jb = *a.b;
    } else {
      // Default a = b just above lambda_{l-1} (lambda_0 = 0) inside the window below lambda_l.
      const SpectrumResult sp = eigenpairs(prep.mult, P.mask, a.l, EigenOptions{g.seed});
      const double lo = a.l > 1 ? sp.eigenvalues[a.l - 2] : 0.0;
      const double mid = lo + 0.1 * (sp.eigenvalues[a.l - 1] - lo);
      ja = a.a.value_or(mid);
      jb = a.b.value_or(mid);
    }
    config.update({{"a", ja}, {"b", jb}, {"l", a.l}});
    const double tol = g.tol.value_or(1e-8);
    const JumpingResult r = jumping_solve(P, ja, jb, a.l, tol);
    solution = r.result.solution;
    result.update({{"residual", r.result.residual},
                   {"functional", r.result.energy},
                   {"iterations", r.result.iterations},
                   {"spectrum", r.report.spectrum},
                   {"two_star", r.report.two_star},
                   {"level", r.report.level},
                   {"level_bound", r.report.level_bound},
                   {"seed_index", r.report.seed_index},
                   {"attempts", r.report.attempts}});
    checks.push_back(check_json("residual", r.result.residual, tol, r.result.residual <= tol));
    checks.push_back(check_json("level below c_*", r.report.level, r.report.level_bound, r.report.level_ok));
  } else {
    throw ContractViolation("unknown --kind '" + a.kind + "' (mp, jump)");
  }
  Json rep = envelope("solve", config, g);
  if (g.to_dir()) {
    write_binary(solution, target(g, "solution.bin").string());
    result["solution_file"] = "solution.bin";
  }
  rep["result"] = result;
  rep["checks"] = checks;
  rep["pass"] = all_pass(checks);
  emit(g, "solve.json", rep.dump(2) + "\n");
  return rep["pass"].get<bool>() ? exit_ok : exit_checks_failed;
}

// ---- verify ----

struct VerifyArgs {
  std::string id;
  bool list = false;
  std::optional<int> m, K;
  std::optional<double> s;
  std::optional<std::string> omega, kind;
};

std::string file_stem(const std::string& id) {
  std::string s = id;
  std::replace(s.begin(), s.end(), ':', '_');
  return s;
}

int run_verify(const VerifyArgs& a, const Global& g) {
  if (a.list) {
    for (const auto& s : verify_suites()) std::cout << s.id << "\t" << s.summary << "\n";
    return exit_ok;
  }
  if (a.id.empty()) throw ContractViolation("verify needs an id (see verify --list)");
  const VerifySuite& suite = find_suite(a.id);
  VerifyOptions o{a.m, a.s, a.omega, a.K, a.kind, g.tol, g.seed};
  Json config{{"id", a.id}};
  if (a.m) config["m"] = *a.m;
  if (a.s) config["s"] = *a.s;
  if (a.omega) config["omega"] = *a.omega;
  if (a.K) config["K"] = *a.K;
  if (a.kind) config["kind"] = *a.kind;
  Json rep = envelope("verify", config, g);
  const VerifyReport r = suite.run(o);
  const Json body = r.to_json();
  rep["parameters"] = body["parameters"];
  rep["checks"] = body["checks"];
  rep["pass"] = r.pass();
  const std::string stem = file_stem(a.id);
  if (!r.table.empty()) {
    const std::string csv = table_csv(r.table_header, r.table);
    if (g.to_dir()) {
      write_text(g, stem + ".csv", csv);
      rep["table_file"] = stem + ".csv";
    } else if (a.id == "pathological") {
      std::cout << csv;
    }
  }
  if (g.to_dir() || a.id != "pathological") emit(g, stem + ".json", rep.dump(2) + "\n");
  if (a.id == "pathological" && !g.to_dir() && !r.pass()) std::cerr << "checks failed\n";
  return r.pass() ? exit_ok : exit_checks_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixlab: superpositions of fractional operators"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "random seed recorded in every report");
  app.add_option("--out", g.out, "output directory; stdout when omitted");
  app.add_option("--tol", g.tol, "tolerance override for the command's checks");
  app.add_flag("--force", g.force, "overwrite existing output files");

  MeasureArgs ma;
  auto* measure = app.add_subcommand("measure", "angular moments and order-measure assumptions");
  measure->add_option("--sigma", ma.sigma, "spherical measure (uniform:N, angle:phi, JSON or file)");
  measure->add_option("--s", ma.s, "order");
  measure->add_option("--mu", ma.mu, "order measure to validate");
  measure->add_option("--s-star", ma.s_star, "threshold order s*");

  ConstantArgs ca;
  auto* constant = app.add_subcommand("constant", "normalization constant c_{m,s}");
  constant->add_option("--m", ca.m, "difference order")->required();
  constant->add_option("--s", ca.s, "fractional order, 0 < s < m")->required();
  constant->add_option("--sigma", ca.sigma, "spherical measure (default uniform:1)");
  constant->add_option("--route", ca.route, "closed_form, recursion, quadrature or all");

  auto field_options = [](CLI::App* sub, FieldArgs& f) {
    sub->add_option("--mu", f.mu, "order measure (delta:s[:w], w@s,..., JSON or file)");
    sub->add_option("--family", f.family, "measure family (JSON or file; default uniform)");
    sub->add_option("--field", f.field, "builtin:bump[:rho], builtin:gaussian:w, builtin:cos:k, builtin:const:c");
    sub->add_option("--dim", f.dim, "dimension when the family is uniform");
  };

  ApplyArgs aa;
  auto* apply = app.add_subcommand("apply", "pointwise superposition operator by quadrature");
  field_options(apply, aa);
  apply->add_option("--points", aa.points, "CSV of evaluation points");
  apply->add_option("--x", aa.x, "comma list of 1D points");

  EnergyArgs ea;
  auto* energy_cmd = app.add_subcommand("energy", "Plancherel energy and X-norm on a periodic grid");
  field_options(energy_cmd, ea);
  energy_cmd->add_option("--nodes", ea.nodes, "grid points per axis");
  energy_cmd->add_option("--L", ea.L, "box length");
  energy_cmd->add_flag("--bruteforce", ea.bruteforce, "compare with the brute-force double sum (1D)");

  auto domain_options = [](CLI::App* sub, DomainArgs& d) {
    sub->add_option("--mu", d.mu, "order measure");
    sub->add_option("--family", d.family, "measure family (default uniform)");
    sub->add_option("--omega", d.omega, "interval:a,b, a,b or box:x0,x1,y0,y1");
    sub->add_option("--nodes", d.nodes, "grid points per axis of the padded box");
  };

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "smallest Dirichlet eigenvalues");
  domain_options(spectrum, sa);
  spectrum->add_option("--k", sa.k, "number of eigenpairs");

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "mountain-pass or jumping nonlinear solve");
  domain_options(solve, so);
  solve->add_option("--kind", so.kind, "mp or jump")->required();
  solve->add_option("--q", so.q, "exponent of |u|^{q-2}u (mp)");
  solve->add_option("--a", so.a, "jump coefficient on u+ (jump)");
  solve->add_option("--b", so.b, "jump coefficient on u- (jump)");
  solve->add_option("--l", so.l, "eigenvalue index of the window (jump)");
  solve->add_option("--s-star", so.s_star, "threshold order s*");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run a keyed verification suite");
  verify->add_option("id", va.id, "suite id");
  verify->add_flag("--list", va.list, "list suite ids");
  verify->add_option("--m", va.m, "difference order");
  verify->add_option("--s", va.s, "order");
  verify->add_option("--omega", va.omega, "domain");
  verify->add_option("--K", va.K, "series length");
  verify->add_option("--kind", va.kind, "strano, special_phi or special_psi");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*measure) return run_measure(ma, g);
    if (*constant) return run_constant(ca, g);
    if (*apply) return run_apply(aa, g);
    if (*energy_cmd) return run_energy(ea, g);
    if (*spectrum) return run_spectrum(sa, g);
    if (*solve) return run_solve(so, g);
    if (*verify) return run_verify(va, g);
  } catch (const Refusal& e) {
    std::cerr << e.what() << "\n";
    return exit_refused;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return exit_io;
  } catch (const fs::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return exit_io;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
