#pragma once

#include <filesystem>
#include <string>

#include "liequad/asymptotics.hpp"
#include "liequad/duality.hpp"
#include "liequad/invariants.hpp"
#include "liequad/trajectory.hpp"

namespace liequad {

// 17 significant digits; round-trips double exactly.
std::string format_double(double x);

// Writes content to path via a temporary file and rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Columns: t,v1,v2,dv1,dv2,ddv1,ddv2,q,theta,c1,c2. A "# meta ..." comment
// line precedes the header so analyze can recover C, kappa and solver
// settings; theta is blank wherever q <= q_min (the lift restarts after
// each such gap).
std::string trajectory_csv(const ComplexTrajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const ComplexTrajectory& traj);

// Throws InvalidArgument on malformed rows or non-increasing times.
ComplexTrajectory read_trajectory_csv(const std::filesystem::path& path);

// Columns: t,w,x,y,z,sx,sy,sz; the stereographic triple is blank at the pole.
std::string group_csv(const GroupTrajectory& traj);
void write_group_csv(const std::filesystem::path& path, const GroupTrajectory& traj);

// Columns: t,q,dq,ddq,theta,dtheta,ddtheta; all but t,q blank where q <= q_min.
std::string polar_csv(const ComplexTrajectory& traj);
void write_polar_csv(const std::filesystem::path& path, const ComplexTrajectory& traj);

// Columns: t,q,theta,lhs,rhs,flagged.
std::string bound_series_csv(const BoundSeries& series);
void write_bound_series_csv(const std::filesystem::path& path, const BoundSeries& series);

std::string invariant_report_json(const InvariantReport& rep);
std::string asymptotic_estimate_json(const AsymptoticEstimate& est);
std::string duality_report_json(const DualityReport& rep);
std::string bound_series_json(const BoundSeries& series);

}  // namespace liequad
