#include "jetreg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetreg/checks.hpp"
#include "jetreg/distance.hpp"

namespace jetreg::cli {

namespace {

using nlohmann::json;

constexpr int kSchema = 1;
constexpr int kDefaultGrid = 200;

struct Options {
  std::string curve1;
  std::string curve2;
  std::optional<int> k;
  std::vector<double> lambda;
  int grid = 0;
  double tol = 1e-8;
  int starts = 8;
  std::string component = "so";
  std::uint64_t seed = 1;
  std::string theta_csv;
  bool json_out = false;
  bool timing = false;
  // sweep
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int steps = 0;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NoConvergence:
    case ErrorCode::SingularJacobian:
    case ErrorCode::AllStartsFailed:
    case ErrorCode::SolverFailure:
    case ErrorCode::AngleAtCut:
      return kSolverFailure;
    default:
      return kBadInput;
  }
}

Vector weights_from(const Options& o) {
  if (o.lambda.empty()) return default_weights(o.k.value_or(1));
  Vector l = Eigen::Map<const Vector>(o.lambda.data(), static_cast<Eigen::Index>(o.lambda.size()));
  require(!o.k || *o.k == l.size(), ErrorCode::InvalidArgument,
          "--k " + std::to_string(o.k.value_or(0)) + " does not match " + std::to_string(l.size()) + " weights");
  validate_weights(l);
  return l;
}

/// Explicit --grid wins; otherwise a sampled curve's own grid; otherwise the default.
int resolve_grid(const Options& o, const Curve& c1, const Curve& c2) {
  if (o.grid > 0) return o.grid;
  require(o.grid == 0, ErrorCode::InvalidArgument, "--grid must be positive");
  const int n1 = c1.sample_intervals();
  const int n2 = c2.sample_intervals();
  require(n1 == 0 || n2 == 0 || n1 == n2, ErrorCode::GridMismatch,
          "sampled curves have " + std::to_string(n1) + " and " + std::to_string(n2) + " intervals; pass --grid");
  return n1 > 0 ? n1 : (n2 > 0 ? n2 : kDefaultGrid);
}

DistanceConfig make_config(const Options& o, const Vector& lambda, int grid) {
  require(o.tol > 0.0, ErrorCode::InvalidArgument, "--tol must be positive");
  require(o.starts >= 1, ErrorCode::InvalidArgument, "--starts must be at least 1");
  require(grid >= 16, ErrorCode::GridTooCoarse, "--grid must be at least 16");
  require(o.component == "so" || o.component == "o", ErrorCode::InvalidArgument, "--component must be so or o");
  DistanceConfig c;
  c.k = static_cast<int>(lambda.size());
  c.lambda = lambda;
  c.intervals = grid;
  c.shooting.tol = o.tol;
  c.direct.tol = o.tol;
  c.starts = o.starts;
  c.component = o.component == "o" ? Component::O : Component::SO;
  return c;
}

bool has_angle_lift(const RotationPath& p) { return p.dim() == 2 && p.det_sign() > 0; }

json winding_json(const RotationPath& p) {
  const auto theta = unwrap_angles(p);
  return {{"number", winding_number(p)}, {"theta_start", theta.front()}, {"theta_end", theta.back()}};
}

json config_json(const DistanceConfig& c, const Options& o) {
  return {{"k", c.k},
          {"lambda", std::vector<double>(c.lambda.data(), c.lambda.data() + c.lambda.size())},
          {"grid", c.intervals},
          {"tol", c.shooting.tol},
          {"starts", c.starts},
          {"component", o.component},
          {"seed", o.seed}};
}

json critical_point_json(const CriticalPoint& cp, int shooting_start_count) {
  json j = {{"energy", cp.energy.total},
            {"potential", cp.energy.potential},
            {"kinetic", cp.energy.kinetic},
            {"residual", cp.residual},
            {"iterations", cp.iterations},
            {"start_index", cp.start_index},
            {"seeded_from_direct", cp.start_index >= shooting_start_count},
            {"det", cp.path.det_sign()}};
  if (has_angle_lift(cp.path)) j["winding"] = winding_json(cp.path);
  return j;
}

json distance_json(const DistanceResult& r, const DistanceConfig& c, const Options& o) {
  json j = {{"schema", kSchema},
            {"command", "distance"},
            {"value", r.value},
            {"method", to_string(r.method)},
            {"agree", r.agree},
            {"energy", {{"total", r.energy.total}, {"potential", r.energy.potential}, {"kinetic", r.energy.kinetic}}},
            {"shooting_best", r.shooting_best ? json(*r.shooting_best) : json(nullptr)},
            {"direct_best", r.direct_best ? json(*r.direct_best) : json(nullptr)},
            {"config", config_json(c, o)}};
  j["winding"] = has_angle_lift(r.path) ? winding_json(r.path) : json(nullptr);
  json cps = json::array();
  for (const auto& cp : r.critical_points) cps.push_back(critical_point_json(cp, r.shooting_start_count));
  j["critical_points"] = std::move(cps);
  j["diagnostics"] = {{"grad_norm", r.grad_norm},
                      {"failed_starts", r.failed_starts},
                      {"direct_iterations", r.direct_iterations},
                      {"direct_converged", r.direct_converged},
                      {"max_orthogonality_error", r.path.max_orthogonality_error()}};
  if (o.timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

void write_theta_csv(const std::string& path, const RotationPath& p) {
  require(has_angle_lift(p), ErrorCode::InvalidArgument, "--theta-csv needs a planar path in SO(2)");
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorCode::MalformedFile, "cannot write " + path);
  const auto theta = unwrap_angles(p);
  f << "s,theta\n";
  for (std::size_t m = 0; m < theta.size(); ++m)
    f << fmt("%.17g", static_cast<double>(m) / p.intervals()) << ',' << fmt("%.17g", theta[m]) << '\n';
}

std::pair<Curve, Curve> load_pair(const Options& o) {
  require(!o.curve1.empty() && !o.curve2.empty(), ErrorCode::InvalidArgument, "--curve1 and --curve2 are required");
  Curve c1 = parse_curve_spec(o.curve1);
  Curve c2 = parse_curve_spec(o.curve2);
  require(c1.dim() == c2.dim(), ErrorCode::DimensionMismatch, "curves live in different dimensions");
  return {std::move(c1), std::move(c2)};
}

int cmd_distance(const Options& o, std::ostream& out) {
  const auto [c1, c2] = load_pair(o);
  const DistanceConfig cfg = make_config(o, weights_from(o), resolve_grid(o, c1, c2));
  const DistanceResult r = distance(c1, c2, cfg);
  if (!o.theta_csv.empty()) write_theta_csv(o.theta_csv, r.path);
  out << distance_json(r, cfg, o).dump(2) << '\n';
  return kOk;
}

int cmd_solve_bvp(const Options& o, std::ostream& out) {
  const auto [c1, c2] = load_pair(o);
  const DistanceConfig cfg = make_config(o, weights_from(o), resolve_grid(o, c1, c2));
  const ShootingProblem problem(jet_field(c1, cfg.k, cfg.intervals, cfg.lambda),
                                jet_field(c2, cfg.k, cfg.intervals, cfg.lambda));
  const auto starts = default_starts(c1.dim(), cfg.starts, cfg.component == Component::O);
  const MultistartReport rep = solve_bvp_multistart(problem, starts, cfg.shooting);
  if (!o.theta_csv.empty()) write_theta_csv(o.theta_csv, rep.points.front().path);

  json cps = json::array();
  for (const auto& cp : rep.points) cps.push_back(critical_point_json(cp, static_cast<int>(starts.size())));
  const json j = {{"schema", kSchema},
                  {"command", "solve-bvp"},
                  {"best_energy", rep.points.front().energy.total},
                  {"failed_starts", rep.failed_starts},
                  {"critical_points", std::move(cps)},
                  {"config", config_json(cfg, o)}};
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const auto [c1, c2] = load_pair(o);
  require(o.steps >= 1, ErrorCode::InvalidArgument, "--steps must be at least 1");
  require(o.lambda_min > 0.0 && o.lambda_max >= o.lambda_min, ErrorCode::InvalidArgument,
          "need 0 < --lambda-min <= --lambda-max");
  Vector base = weights_from(o);
  const int grid = resolve_grid(o, c1, c2);
  const JetField j1 = jet_field(c1, static_cast<int>(base.size()), grid, base);
  const JetField j2 = jet_field(c2, static_cast<int>(base.size()), grid, base);

  json rows = json::array();
  if (!o.json_out) out << "lambda,energy_best,winding,branch_count\n";
  std::optional<RotationPath> previous;
  for (int i = 0; i < o.steps; ++i) {
    const double lam =
        o.steps == 1 ? o.lambda_min : o.lambda_min + (o.lambda_max - o.lambda_min) * i / (o.steps - 1);
    Vector l = base;
    l(0) = lam;
    DistanceConfig cfg = make_config(o, l, grid);
    if (previous) {
      cfg.extra_paths.push_back(*previous);
      cfg.extra_starts.push_back((*previous)[0]);
    }
    json row = {{"lambda", lam}};
    try {
      const DistanceResult r = distance(j1.with_weights(l), j2.with_weights(l), cfg);
      previous = r.path;
      const bool lift = has_angle_lift(r.path);
      row["energy_best"] = r.value;
      row["winding"] = lift ? json(winding_number(r.path)) : json(nullptr);
      row["branch_count"] = r.critical_points.size();
      row["method"] = to_string(r.method);
      row["status"] = "ok";
      if (!o.json_out)
        out << fmt("%.15g", lam) << ',' << fmt("%.17g", r.value) << ',' << (lift ? std::to_string(winding_number(r.path)) : "")
            << ',' << r.critical_points.size() << '\n';
    } catch (const Error& e) {
      err << "lambda " << lam << ": " << e.what() << '\n';
      row["status"] = "failed";
      row["error"] = e.what();
      if (!o.json_out) out << fmt("%.15g", lam) << ",failed,,0\n";
    }
    rows.push_back(std::move(row));
  }
  if (o.json_out) out << json{{"schema", kSchema}, {"command", "sweep"}, {"rows", std::move(rows)}}.dump(2) << '\n';
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  CheckConfig cfg;
  cfg.seed = o.seed;
  if (o.grid != 0) cfg.intervals = o.grid;
  if (!o.lambda.empty()) cfg.lambda = weights_from(o);
  const auto results = run_checks(cfg);
  bool ok = true;
  json list = json::array();
  for (const auto& r : results) {
    ok = ok && r.pass;
    list.push_back({{"name", r.name}, {"measured", r.measured}, {"relation", r.relation}, {"bound", r.bound}, {"pass", r.pass}});
    if (!o.json_out)
      out << (r.pass ? "PASS " : "FAIL ") << r.name << "  " << fmt("%.3e", r.measured) << ' ' << r.relation << ' '
          << fmt("%.1e", r.bound) << '\n';
  }
  if (o.json_out)
    out << json{{"schema", kSchema}, {"command", "check"}, {"seed", o.seed}, {"pass", ok}, {"checks", std::move(list)}}.dump(2)
        << '\n';
  return ok ? kOk : kPropertyFailure;
}

void add_common(CLI::App* cmd, Options& o, bool curves) {
  if (curves) {
    cmd->add_option("--curve1", o.curve1, "First curve: FILE (.json/.csv) or inline JSON")->required();
    cmd->add_option("--curve2", o.curve2, "Second curve: FILE (.json/.csv) or inline JSON")->required();
  }
  cmd->add_option("--k", o.k, "Jet order");
  cmd->add_option("--lambda", o.lambda, "Jet weights, comma separated")->delimiter(',');
  cmd->add_option("--grid", o.grid, "Grid intervals N");
  cmd->add_option("--tol", o.tol, "Solver tolerance");
  cmd->add_option("--starts", o.starts, "Multi-start count");
  cmd->add_option("--component", o.component, "Search SO(n) or all of O(n)")->check(CLI::IsMember({"so", "o"}));
  cmd->add_option("--seed", o.seed, "Seed for randomized checks");
  cmd->add_flag("--json", o.json_out, "JSON output");
  cmd->add_flag("--timing", o.timing, "Include wall-clock time in JSON reports");
}

}  // namespace

Curve parse_curve_spec(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && spec[first] == '{') return curve_from_json(spec);
  return load_curve(spec);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigid-motion-invariant distance between parametrized curves", "jetreg"};
  app.require_subcommand(1);
  Options o;

  auto* dist = app.add_subcommand("distance", "Distance between two curves (JSON report)");
  add_common(dist, o, true);
  dist->add_option("--theta-csv", o.theta_csv, "Write s,theta of the best path (n = 2)");

  auto* bvp = app.add_subcommand("solve-bvp", "Critical points of the energy by multi-start shooting");
  add_common(bvp, o, true);
  bvp->add_option("--theta-csv", o.theta_csv, "Write s,theta of the best critical point (n = 2)");

  auto* sweep = app.add_subcommand("sweep", "Sweep lambda_1 (CSV lambda,energy_best,winding,branch_count)");
  add_common(sweep, o, true);
  sweep->add_option("--lambda-min", o.lambda_min, "First lambda_1")->required();
  sweep->add_option("--lambda-max", o.lambda_max, "Last lambda_1")->required();
  sweep->add_option("--steps", o.steps, "Number of lambda_1 values")->required();

  auto* check = app.add_subcommand("check", "Run the invariant suite");
  add_common(check, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }

  try {
    if (dist->parsed()) return cmd_distance(o, out);
    if (bvp->parsed()) return cmd_solve_bvp(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    return cmd_check(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace jetreg::cli
