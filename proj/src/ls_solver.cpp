// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/ls_solver.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "irlspos/error.hpp"

namespace irlspos {
namespace {

// Backtracking halvings allowed per Gauss-Newton step.
constexpr int kMaxHalvings = 40;

bool touches_station(Position2D p, const RangeDifferenceSet& rd,
                     std::span<const BaseStation> stations) {
  if (find_station(stations, rd.reference_id).position == p) return true;
  for (const auto& entry : rd.entries) {
    if (find_station(stations, entry.station_id).position == p) return true;
  }
  return false;
}

}  // namespace

void SolverSettings::validate() const {
  if (max_iterations < 1) {
    throw Error(ErrorCategory::kConfiguration, "solver.max_iterations must be >= 1");
  }
  if (!(step_tolerance_m > 0.0)) {
    throw Error(ErrorCategory::kConfiguration, "solver.step_tolerance_m must be > 0");
  }
  if (initial_guess && !is_finite(*initial_guess)) {
    throw Error(ErrorCategory::kConfiguration, "solver.initial_guess must be finite");
  }
}

std::vector<double> range_difference_residuals(Position2D p, const RangeDifferenceSet& rd,
                                               std::span<const BaseStation> stations) {
  const auto& ref = find_station(stations, rd.reference_id);
  std::vector<double> r;
  r.reserve(rd.entries.size());
  for (const auto& entry : rd.entries) {
    r.push_back(entry.delta_d_m -
                predicted_range_difference(p, find_station(stations, entry.station_id), ref));
  }
  return r;
}

std::vector<std::array<double, 2>> range_difference_jacobian(Position2D p,
                                                             const RangeDifferenceSet& rd,
                                                             std::span<const BaseStation> stations) {
  const auto& ref = find_station(stations, rd.reference_id);
  const Position2D to_ref = p - ref.position;
  const double d_ref = euclidean_distance(p, ref.position);
  std::vector<std::array<double, 2>> jac;
  jac.reserve(rd.entries.size());
  for (const auto& entry : rd.entries) {
    const auto& bs = find_station(stations, entry.station_id);
    const Position2D to_n = p - bs.position;
    const double d_n = euclidean_distance(p, bs.position);
    jac.push_back({-(to_n.x / d_n - to_ref.x / d_ref), -(to_n.y / d_n - to_ref.y / d_ref)});
  }
  return jac;
}

double ls_objective(Position2D p, const RangeDifferenceSet& rd,
                    std::span<const BaseStation> stations) {
  double sum = 0.0;
  for (double r : range_difference_residuals(p, rd, stations)) sum += r * r;
  return sum;
}

CandidateEstimate solve_single_reference(const RangeDifferenceSet& rd,
                                         std::span<const BaseStation> stations,
                                         const SolverSettings& settings) {
  settings.validate();
  if (rd.entries.size() + 1 < 3) {
    throw Error(ErrorCategory::kUnderDetermined,
                "need at least 2 range differences (3 stations), got " +
                    std::to_string(rd.entries.size()));
  }
  std::vector<BaseStation> used{find_station(stations, rd.reference_id)};
  for (const auto& entry : rd.entries) used.push_back(find_station(stations, entry.station_id));
  validate_station_layout(used);

  const double max_step = bounding_diagonal(used);
  CandidateEstimate out;
  out.reference_id = rd.reference_id;
  Position2D p = settings.initial_guess ? *settings.initial_guess : centroid(used);

  for (int it = 1; it <= settings.max_iterations; ++it) {
    out.iterations_used = it;
    if (touches_station(p, rd, used)) {
      p.x += settings.step_tolerance_m;
      continue;
    }
    const auto r = range_difference_residuals(p, rd, used);
    const auto J = range_difference_jacobian(p, rd, used);

    // Normal equations (J^T J) s = -J^T r, 2 x 2.
    double a = 0.0, b = 0.0, c = 0.0, gx = 0.0, gy = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      a += J[i][0] * J[i][0];
      b += J[i][0] * J[i][1];
      c += J[i][1] * J[i][1];
      gx += J[i][0] * r[i];
      gy += J[i][1] * r[i];
    }
    const double det = a * c - b * b;
    if (!(std::abs(det) > 1e-14 * (a + c) * (a + c))) break;  // rank deficient, stop here
    Position2D step{-(c * gx - b * gy) / det, -(a * gy - b * gx) / det};

    while (std::hypot(step.x, step.y) > max_step) step = 0.5 * step;

    const double f0 = ls_objective(p, rd, used);
    for (int h = 0; h < kMaxHalvings && ls_objective(p + step, rd, used) > f0; ++h) {
      step = 0.5 * step;
    }
    p = p + step;
    if (std::hypot(step.x, step.y) < settings.step_tolerance_m) {
      out.converged = true;
      break;
    }
  }

  out.position = p;
  out.residual_norm_m = std::sqrt(ls_objective(p, rd, used));
  return out;
}

std::vector<CandidateEstimate> solve_all_references(const MeasurementSet& m,
                                                    std::span<const BaseStation> stations,
                                                    const SolverSettings& settings) {
  settings.validate();
  validate_station_layout(stations);
  if (m.samples.size() != stations.size()) {
    throw Error(ErrorCategory::kInvalidArgument,
                "measurement set and station list differ in size");
  }
  std::vector<CandidateEstimate> out;
  out.reserve(stations.size());
  for (const auto& bs : sorted_by_id(stations)) {
    try {
      out.push_back(solve_single_reference(compute_tdoas(m, bs.id), stations, settings));
    } catch (const Error&) {
      CandidateEstimate failed;
      failed.reference_id = bs.id;
      failed.position = settings.initial_guess ? *settings.initial_guess : centroid(stations);
      failed.residual_norm_m = std::numeric_limits<double>::infinity();
      out.push_back(failed);
    }
  }
  return out;
}

}  // namespace irlspos
