#include "liequad/io.hpp"

#include "liequad/integrate.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace liequad {

using nlohmann::json;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw InvalidArgument("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

const char* method_name(StepMethod m) {
  return m == StepMethod::rk4_fixed ? "rk4_fixed" : "rk45_adaptive";
}

// Continuous angle per sample; NaN marks gaps where q <= q_min. The lift
// restarts from the principal value after each gap.
std::vector<double> lift_with_gaps(const std::vector<QuadraticState>& states) {
  std::vector<double> theta(states.size(), std::nan(""));
  std::size_t i = 0;
  while (i < states.size()) {
    while (i < states.size() && std::abs(states[i].v) <= kQMin) ++i;
    std::size_t j = i;
    std::vector<Complex> seg;
    while (j < states.size() && std::abs(states[j].v) > kQMin) {
      seg.push_back(states[j].v);
      ++j;
    }
    if (!seg.empty()) {
      const std::vector<double> lifted = angle_lift(seg);
      for (std::size_t k = 0; k < lifted.size(); ++k) theta[i + k] = lifted[k];
    }
    i = j;
  }
  return theta;
}

}  // namespace

std::string trajectory_csv(const ComplexTrajectory& traj) {
  std::ostringstream out;
  const auto& m = traj.meta;
  out << "# meta C=" << format_double(m.C) << " kappa=" << format_double(m.kappa)
      << " dt_obs=" << format_double(m.dt_obs) << " method=" << method_name(m.solver.method)
      << " step=" << format_double(m.solver.step)
      << " abs_tol=" << format_double(m.solver.abs_tol)
      << " rel_tol=" << format_double(m.solver.rel_tol) << "\n";
  out << "t,v1,v2,dv1,dv2,ddv1,ddv2,q,theta,c1,c2\n";

  const std::vector<double> theta = lift_with_gaps(traj.states);
  const BracketConvention conv{m.kappa};
  const Vec3 Ctilde = vertical_constant(m.C, conv);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& s = traj.states[i];
    const AlgebraQuadraticState a = to_algebra(s);
    out << format_double(traj.times[i]) << ',' << format_double(s.v.real()) << ','
        << format_double(s.v.imag()) << ',' << format_double(s.dv.real()) << ','
        << format_double(s.dv.imag()) << ',' << format_double(s.ddv.real()) << ','
        << format_double(s.ddv.imag()) << ',' << format_double(std::abs(s.v)) << ',';
    if (!std::isnan(theta[i])) out << format_double(theta[i]);
    out << ',' << format_double(c1_value(a)) << ','
        << format_double(c2_value(a, Ctilde, conv)) << "\n";
  }
  return out.str();
}

void write_trajectory_csv(const std::filesystem::path& path, const ComplexTrajectory& traj) {
  atomic_write(path, trajectory_csv(traj));
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(x)) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw InvalidArgument("malformed " + what + ": '" + s + "'");
  }
}

void parse_meta(const std::string& line, TrajectoryMeta& meta) {
  std::istringstream in(line);
  std::string tok;
  in >> tok >> tok;  // "#", "meta"
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    if (key == "C") meta.C = parse_double(val, "meta C");
    else if (key == "kappa") meta.kappa = parse_double(val, "meta kappa");
    else if (key == "dt_obs") meta.dt_obs = parse_double(val, "meta dt_obs");
    else if (key == "step") meta.solver.step = parse_double(val, "meta step");
    else if (key == "abs_tol") meta.solver.abs_tol = parse_double(val, "meta abs_tol");
    else if (key == "rel_tol") meta.solver.rel_tol = parse_double(val, "meta rel_tol");
    else if (key == "method")
      meta.solver.method = val == "rk4_fixed" ? StepMethod::rk4_fixed
                                              : StepMethod::rk45_adaptive;
  }
  meta.Ctilde = vertical_constant(meta.C, BracketConvention{meta.kappa});
}

}  // namespace

ComplexTrajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());

  ComplexTrajectory traj;
  traj.meta.form = SystemForm::complex_cubic;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# meta", 0) == 0) parse_meta(line, traj.meta);
      continue;
    }
    if (!header_seen) {
      if (split(line, ',').size() != 11 || line.rfind("t,", 0) != 0) {
        throw InvalidArgument("trajectory CSV: unexpected header '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 11) {
      throw InvalidArgument("trajectory CSV: expected 11 columns, got " +
                            std::to_string(cells.size()));
    }
    QuadraticState s;
    s.t = parse_double(cells[0], "t");
    s.v = Complex(parse_double(cells[1], "v1"), parse_double(cells[2], "v2"));
    s.dv = Complex(parse_double(cells[3], "dv1"), parse_double(cells[4], "dv2"));
    s.ddv = Complex(parse_double(cells[5], "ddv1"), parse_double(cells[6], "ddv2"));
    if (!traj.times.empty() && s.t <= traj.times.back()) {
      throw InvalidArgument("trajectory CSV: times not strictly increasing at t = " +
                            cells[0]);
    }
    traj.times.push_back(s.t);
    traj.states.push_back(s);
  }
  if (!header_seen) throw InvalidArgument("trajectory CSV: missing header row");
  if (traj.times.size() < 2) throw InvalidArgument("trajectory CSV: fewer than 2 samples");
  return traj;
}

std::string group_csv(const GroupTrajectory& traj) {
  std::ostringstream out;
  out << "t,w,x,y,z,sx,sy,sz\n";
  for (std::size_t i = 0; i < traj.points.size(); ++i) {
    const Quat& g = traj.points[i];
    out << format_double(traj.times[i]) << ',' << format_double(g.w()) << ','
        << format_double(g.x()) << ',' << format_double(g.y()) << ','
        << format_double(g.z()) << ',';
    if (std::abs(1.0 - g.z()) > 1e-12) {
      const Vec3 s = stereographic_project(g);
      out << format_double(s.x()) << ',' << format_double(s.y()) << ','
          << format_double(s.z());
    } else {
      out << ",,";
    }
    out << "\n";
  }
  return out.str();
}

void write_group_csv(const std::filesystem::path& path, const GroupTrajectory& traj) {
  atomic_write(path, group_csv(traj));
}

std::string polar_csv(const ComplexTrajectory& traj) {
  std::ostringstream out;
  out << "t,q,dq,ddq,theta,dtheta,ddtheta\n";
  const std::vector<double> theta = lift_with_gaps(traj.states);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& s = traj.states[i];
    out << format_double(traj.times[i]) << ',' << format_double(std::abs(s.v)) << ',';
    if (!std::isnan(theta[i])) {
      const PolarState p = to_polar(s, theta[i]);
      out << format_double(p.dq) << ',' << format_double(p.ddq) << ','
          << format_double(p.theta) << ',' << format_double(p.dtheta) << ','
          << format_double(p.ddtheta);
    } else {
      out << ",,,,";
    }
    out << "\n";
  }
  return out.str();
}

void write_polar_csv(const std::filesystem::path& path, const ComplexTrajectory& traj) {
  atomic_write(path, polar_csv(traj));
}

std::string bound_series_csv(const BoundSeries& series) {
  std::ostringstream out;
  out << "t,q,theta,lhs,rhs,flagged\n";
  for (const auto& r : series.rows) {
    out << format_double(r.t) << ',' << format_double(r.q) << ',' << format_double(r.theta)
        << ',' << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
        << (r.flagged ? 1 : 0) << "\n";
  }
  return out.str();
}

void write_bound_series_csv(const std::filesystem::path& path, const BoundSeries& series) {
  atomic_write(path, bound_series_csv(series));
}

namespace {

json vec3_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

std::string invariant_report_json(const InvariantReport& rep) {
  json j;
  j["c1_0"] = rep.c1_0;
  j["c2_0"] = rep.c2_0;
  j["c1_drift"] = rep.c1_drift;
  j["c2_drift"] = rep.c2_drift;
  j["lax_norm_drift"] = rep.lax_norm_drift;
  j["lax_constant"] = vec3_json(rep.lax_constant);
  j["bound_violations"] = json::array();
  for (const auto& v : rep.bound_violations) {
    j["bound_violations"].push_back({{"t", v.t}, {"description", v.description}});
  }
  return j.dump(2) + "\n";
}

std::string asymptotic_estimate_json(const AsymptoticEstimate& est) {
  json j;
  j["alpha"] = est.alpha;
  j["d1"] = est.d1;
  j["error_bound"] = est.error_bound;
  j["c7"] = est.c7;
  j["c8"] = est.c8;
  j["c1"] = est.c1;
  j["fit_residual"] = est.fit_residual;
  j["tail_start"] = est.tail_start;
  return j.dump(2) + "\n";
}

std::string duality_report_json(const DualityReport& rep) {
  json j;
  j["Dtilde"] = vec3_json(rep.Dtilde);
  j["b"] = rep.b;
  j["a"] = rep.a;
  j["Cvec"] = vec3_json(rep.Cvec);
  j["max_residual_thm"] = rep.max_residual_thm;
  j["max_residual_rescaled"] = rep.max_residual_rescaled;
  return j.dump(2) + "\n";
}

std::string bound_series_json(const BoundSeries& series) {
  json j;
  j["name"] = series.name;
  j["slack"] = series.slack;
  j["rows"] = json::array();
  for (const auto& r : series.rows) {
    j["rows"].push_back({{"t", r.t},
                         {"q", r.q},
                         {"theta", r.theta},
                         {"lhs", r.lhs},
                         {"rhs", r.rhs},
                         {"flagged_raw", r.flagged_raw},
                         {"flagged", r.flagged}});
  }
  return j.dump(2) + "\n";
}

}  // namespace liequad
