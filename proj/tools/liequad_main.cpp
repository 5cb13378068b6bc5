// liequad: simulate third-order velocity curves in su(2), reconstruct the
// SU(2) base curve, apply the duality transform and verify conservation,
// growth and tail bounds. One process per command; all file writes are
// atomic (temp file + rename).

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "liequad/asymptotics.hpp"
#include "liequad/builtin_examples.hpp"
#include "liequad/duality.hpp"
#include "liequad/integrate.hpp"
#include "liequad/invariants.hpp"
#include "liequad/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace liequad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitVerification = 3;

struct SimulationConfig {
  double C = 0.0;
  Complex v0, dv0, ddv0;
  std::pair<double, double> t_span{0.0, 0.0};
  SolverSettings solver;
  double kappa = 1.0;
  double observation_dt = 0.01;
  std::set<std::string> outputs{"trajectory"};
};

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.contains(key)) {
      throw InvalidArgument("config: unknown field '" + key + "' in " + where);
    }
  }
}

Complex parse_pair(const json& j, const std::string& name) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidArgument("config: '" + name + "' must be a pair of reals");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

SimulationConfig parse_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  reject_unknown(j, {"C", "v0", "dv0", "ddv0", "t_span", "solver", "kappa",
                     "observation_dt", "outputs"},
                 "top level");
  for (const char* req : {"C", "v0", "dv0", "ddv0", "t_span"}) {
    if (!j.contains(req)) throw InvalidArgument(std::string("config: missing '") + req + "'");
  }

  SimulationConfig cfg;
  if (!j["C"].is_number()) throw InvalidArgument("config: 'C' must be a real");
  cfg.C = j["C"].get<double>();
  cfg.v0 = parse_pair(j["v0"], "v0");
  cfg.dv0 = parse_pair(j["dv0"], "dv0");
  cfg.ddv0 = parse_pair(j["ddv0"], "ddv0");
  const Complex span = parse_pair(j["t_span"], "t_span");
  cfg.t_span = {span.real(), span.imag()};
  if (cfg.t_span.first == cfg.t_span.second) {
    throw InvalidArgument("config: degenerate t_span");
  }

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) throw InvalidArgument("config: 'solver' must be an object");
    reject_unknown(s, {"method", "step", "abs_tol", "rel_tol", "max_steps"}, "solver");
    if (s.contains("method")) {
      const std::string m = s["method"].get<std::string>();
      if (m == "rk4_fixed") cfg.solver.method = StepMethod::rk4_fixed;
      else if (m == "rk45_adaptive") cfg.solver.method = StepMethod::rk45_adaptive;
      else throw InvalidArgument("config: unknown solver method '" + m + "'");
    }
    if (s.contains("step")) cfg.solver.step = s["step"].get<double>();
    if (s.contains("abs_tol")) cfg.solver.abs_tol = s["abs_tol"].get<double>();
    if (s.contains("rel_tol")) cfg.solver.rel_tol = s["rel_tol"].get<double>();
    if (s.contains("max_steps")) cfg.solver.max_steps = s["max_steps"].get<long>();
    if (cfg.solver.step <= 0 || cfg.solver.abs_tol <= 0 || cfg.solver.rel_tol <= 0 ||
        cfg.solver.max_steps <= 0) {
      throw InvalidArgument("config: solver settings must be positive");
    }
  }
  if (j.contains("kappa")) {
    cfg.kappa = j["kappa"].get<double>();
    if (cfg.kappa == 0.0) throw InvalidArgument("config: kappa must be nonzero");
  }
  if (j.contains("observation_dt")) {
    cfg.observation_dt = j["observation_dt"].get<double>();
    if (cfg.observation_dt <= 0) throw InvalidArgument("config: observation_dt must be > 0");
  }
  if (j.contains("outputs")) {
    if (!j["outputs"].is_array()) throw InvalidArgument("config: 'outputs' must be an array");
    cfg.outputs = {"trajectory"};
    const std::set<std::string> known{"trajectory", "group",      "polar", "invariants",
                                      "asymptotics", "duality",   "bounds"};
    for (const auto& o : j["outputs"]) {
      const std::string name = o.get<std::string>();
      if (!known.contains(name)) throw InvalidArgument("config: unknown output '" + name + "'");
      cfg.outputs.insert(name);
    }
  }
  return cfg;
}

// Merged angle + parabola estimate used by the reports.
AsymptoticEstimate full_estimate(const ComplexTrajectory& traj, double c1) {
  AsymptoticEstimate est = estimate_alpha(traj);
  const double t_last = traj.times.back();
  const double lo = est.tail_start + 0.5 * (t_last - est.tail_start);
  const ParabolaFit fit = fit_q_parabola(traj, {lo, t_last}, c1);
  est.c7 = fit.c7;
  est.c8 = fit.c8;
  est.c1 = c1;
  est.fit_residual = fit.fit_residual;
  return est;
}

DualityReport dual_pipeline(const ComplexTrajectory& traj, double b) {
  const BracketConvention conv{traj.meta.kappa};
  const AlgebraTrajectory vel = to_algebra_trajectory(traj);
  const GroupTrajectory x = reconstruct_group(vel);
  const AlgebraTrajectory W = dual_curve(x, vel, conv);

  DualityReport rep;
  rep.b = b;
  rep.a = 2.0 * b;
  rep.Dtilde = dual_constant(vel.states.front().V, vel.states.front().dV,
                             vel.states.front().ddV, conv);
  rep.max_residual_thm = verify_dual_equation(W, rep.Dtilde, conv);
  const auto [rescaled, Cvec] = rescale_to_riemannian(W, b, rep.Dtilde, conv);
  rep.Cvec = Cvec;
  rep.max_residual_rescaled = riemannian_residual(rescaled, Cvec, conv);
  return rep;
}

int run_simulate(const fs::path& config_path, const fs::path& out_dir,
                 std::optional<double> tol, std::optional<double> kappa) {
  SimulationConfig cfg = parse_config(config_path);
  if (tol) cfg.solver.abs_tol = cfg.solver.rel_tol = *tol;
  if (kappa) cfg.kappa = *kappa;

  QuadraticState s0;
  s0.t = cfg.t_span.first;
  s0.v = cfg.v0;
  s0.dv = cfg.dv0;
  s0.ddv = cfg.ddv0;

  ComplexTrajectory traj =
      integrate_complex(s0, cfg.C, cfg.t_span, cfg.solver, cfg.observation_dt);
  traj.meta.kappa = cfg.kappa;
  traj.meta.Ctilde = vertical_constant(cfg.C, BracketConvention{cfg.kappa});

  fs::create_directories(out_dir);
  write_trajectory_csv(out_dir / "trajectory.csv", traj);
  if (cfg.outputs.contains("polar")) write_polar_csv(out_dir / "polar.csv", traj);
  if (cfg.outputs.contains("group")) {
    write_group_csv(out_dir / "group.csv", reconstruct_group(traj));
  }

  InvariantReport rep;
  const bool need_invariants = cfg.outputs.contains("invariants") ||
                               cfg.outputs.contains("asymptotics") ||
                               cfg.outputs.contains("bounds");
  if (need_invariants) {
    rep = drift_report(traj);
    rep.bound_violations = check_growth_bounds(traj, rep);
  }
  if (cfg.outputs.contains("invariants")) {
    atomic_write(out_dir / "invariants.json", invariant_report_json(rep));
  }
  if (cfg.outputs.contains("asymptotics") || cfg.outputs.contains("bounds")) {
    const AsymptoticEstimate est = full_estimate(traj, rep.c1_0);
    if (cfg.outputs.contains("asymptotics")) {
      atomic_write(out_dir / "asymptotics.json", asymptotic_estimate_json(est));
    }
    if (cfg.outputs.contains("bounds")) {
      const auto series = null_bound_series(traj, est, rep.c2_0,
                                            {est.tail_start, traj.times.back()});
      for (const auto& s : series) {
        write_bound_series_csv(out_dir / ("bounds_" + s.name + ".csv"), s);
      }
    }
  }
  if (cfg.outputs.contains("duality")) {
    atomic_write(out_dir / "duality.json", duality_report_json(dual_pipeline(traj, 1.0)));
  }
  return kExitOk;
}

int run_example(int n, double horizon, const fs::path& out_dir, std::optional<double> tol,
                std::optional<double> kappa) {
  const ExampleConfig ex = builtin_example(n);
  if (!(horizon > 0.0)) throw InvalidArgument("example: horizon must be > 0");

  SolverSettings settings;
  if (tol) settings.abs_tol = settings.rel_tol = *tol;
  ComplexTrajectory traj = integrate_complex(ex.s0, ex.C, {0.0, horizon}, settings, 0.01);
  if (kappa) {
    traj.meta.kappa = *kappa;
    traj.meta.Ctilde = vertical_constant(ex.C, BracketConvention{*kappa});
  }

  fs::create_directories(out_dir);
  const std::string stem = "example" + std::to_string(n);
  write_trajectory_csv(out_dir / (stem + "_trajectory.csv"), traj);
  write_polar_csv(out_dir / (stem + "_polar.csv"), traj);
  write_group_csv(out_dir / (stem + "_group.csv"), reconstruct_group(traj));
  return kExitOk;
}

int run_analyze(const fs::path& traj_path, const std::string& reports, bool verify,
                double slack, const fs::path& out_dir, std::optional<double> kappa) {
  ComplexTrajectory traj = read_trajectory_csv(traj_path);
  if (kappa) traj.meta.kappa = *kappa;

  std::set<std::string> which;
  for (const auto& tok : [&] {
         std::vector<std::string> v;
         std::string cur;
         for (char c : reports + ",") {
           if (c == ',') {
             if (!cur.empty()) v.push_back(cur);
             cur.clear();
           } else {
             cur += c;
           }
         }
         return v;
       }()) {
    if (tok == "inv" || tok == "invariants") which.insert("invariants");
    else if (tok == "asym" || tok == "asymptotics") which.insert("asymptotics");
    else if (tok == "bounds") which.insert("bounds");
    else throw InvalidArgument("analyze: unknown report '" + tok + "'");
  }
  if (which.empty()) throw InvalidArgument("analyze: no reports requested");

  fs::create_directories(out_dir);
  InvariantReport rep = drift_report(traj);
  rep.bound_violations = check_growth_bounds(traj, rep);
  bool violated = false;

  if (which.contains("invariants")) {
    atomic_write(out_dir / "invariants.json", invariant_report_json(rep));
    violated |= !rep.bound_violations.empty();
  }
  if (which.contains("asymptotics") || which.contains("bounds")) {
    const AsymptoticEstimate est = full_estimate(traj, rep.c1_0);
    if (which.contains("asymptotics")) {
      atomic_write(out_dir / "asymptotics.json", asymptotic_estimate_json(est));
    }
    if (which.contains("bounds")) {
      const auto series = null_bound_series(traj, est, rep.c2_0,
                                            {est.tail_start, traj.times.back()}, slack);
      for (const auto& s : series) {
        write_bound_series_csv(out_dir / ("bounds_" + s.name + ".csv"), s);
        for (const auto& row : s.rows) violated |= row.flagged;
      }
    }
  }
  if (verify && violated) {
    std::cerr << "analyze: bound violations found\n";
    return kExitVerification;
  }
  return kExitOk;
}

int run_dual(const fs::path& traj_path, double b, const fs::path& out_dir) {
  if (b == 0.0) throw InvalidArgument("dual: b must be nonzero");
  if (b < 0.0) throw InvalidArgument("dual: b must be positive");
  const ComplexTrajectory traj = read_trajectory_csv(traj_path);
  fs::create_directories(out_dir);
  atomic_write(out_dir / "duality.json", duality_report_json(dual_pipeline(traj, b)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-Riemannian Lie quadratics in su(2): simulate, reconstruct, analyze"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::optional<double> tol, kappa;
  app.add_option("--out-dir", out_dir, "directory for emitted files")->capture_default_str();
  app.add_option("--tol", tol, "override abs_tol and rel_tol");
  app.add_option("--kappa", kappa, "override the bracket scale");

  auto* sim = app.add_subcommand("simulate", "integrate a configured run");
  std::string config_path;
  sim->add_option("--config", config_path, "JSON configuration")->required();

  auto* exa = app.add_subcommand("example", "run a bundled example");
  int example_id = 0;
  double horizon = 80.0;
  exa->add_option("n", example_id, "example number (1 or 2)")->required();
  exa->add_option("--horizon", horizon, "final time")->capture_default_str();

  auto* ana = app.add_subcommand("analyze", "reports from a trajectory CSV");
  std::string traj_file, reports = "inv";
  bool verify = false;
  double slack = 0.1;
  ana->add_option("trajectory", traj_file, "trajectory CSV")->required();
  ana->add_option("--report", reports, "comma list of inv,asym,bounds")
      ->capture_default_str();
  ana->add_flag("--verify", verify, "exit 3 when a bound violation survives the slack");
  ana->add_option("--slack", slack, "multiplicative slack on bound comparisons")
      ->capture_default_str();

  auto* dua = app.add_subcommand("dual", "duality transform of a trajectory CSV");
  std::string dual_file;
  double b = 1.0;
  dua->add_option("trajectory", dual_file, "trajectory CSV")->required();
  dua->add_option("--b", b, "reparameterization scale")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed()) return run_simulate(config_path, out_dir, tol, kappa);
    if (exa->parsed()) return run_example(example_id, horizon, out_dir, tol, kappa);
    if (ana->parsed()) return run_analyze(traj_file, reports, verify, slack, out_dir, kappa);
    if (dua->parsed()) return run_dual(dual_file, b, out_dir);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
