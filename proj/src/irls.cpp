// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/irls.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "irlspos/error.hpp"
#include "irlspos/tdoa.hpp"

namespace irlspos {

void IrlsSettings::validate() const {
  if (!(u_max_m > 0.0)) throw Error(ErrorCategory::kConfiguration, "irls.u_max_m must be > 0");
  if (!(epsilon_m > 0.0)) throw Error(ErrorCategory::kConfiguration, "irls.epsilon_m must be > 0");
  if (max_iterations < 1) {
    throw Error(ErrorCategory::kConfiguration, "irls.max_iterations must be >= 1");
  }
}

std::vector<int> PositionEstimate::rejected_stations() const {
  std::vector<int> out;
  for (const auto& [id, w] : weights) {
    if (w == 0.0) out.push_back(id);
  }
  return out;
}

double andrews_weight(double u, double u_max) {
  if (!(u >= 0.0)) throw Error(ErrorCategory::kInvalidArgument, "uncertainty must be >= 0");
  if (!(u_max > 0.0)) throw Error(ErrorCategory::kInvalidArgument, "u_max must be > 0");
  if (u == 0.0) return 1.0;
  if (u > u_max) return 0.0;
  if (u == u_max) return 0.0;  // sin(pi) is not exactly zero in floating point
  const double arg = u * std::numbers::pi / u_max;
  return std::sin(arg) / arg;
}

double uncertainty_factor(int reference_id, Position2D fused, const MeasurementSet& m,
                          std::span<const BaseStation> stations) {
  const auto rd = compute_tdoas(m, reference_id);
  const auto& ref = find_station(stations, reference_id);
  double sum = 0.0;
  for (const auto& entry : rd.entries) {
    sum += std::abs(entry.delta_d_m -
                    predicted_range_difference(fused, find_station(stations, entry.station_id), ref));
  }
  return sum / static_cast<double>(rd.entries.size());
}

Position2D weighted_average(std::span<const CandidateEstimate> candidates,
                            std::span<const double> weights) {
  if (candidates.size() != weights.size()) {
    throw Error(ErrorCategory::kInvalidArgument,
                "weighted average: " + std::to_string(weights.size()) + " weights for " +
                    std::to_string(candidates.size()) + " candidates");
  }
  Position2D sum;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    sum = sum + weights[i] * candidates[i].position;
  }
  return sum;
}

PositionEstimate irls_position(const MeasurementSet& m, std::span<const BaseStation> stations,
                               const SolverSettings& ls, const IrlsSettings& irls) {
  irls.validate();
  PositionEstimate est;
  est.candidates = solve_all_references(m, stations, ls);
  const auto& candidates = est.candidates;
  const std::size_t n = candidates.size();

  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  Position2D fused = weighted_average(candidates, weights);
  std::vector<double> raw(n);

  for (int it = 1; it <= irls.max_iterations; ++it) {
    est.iterations = it;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = uncertainty_factor(candidates[i].reference_id, fused, m, stations);
      raw[i] = andrews_weight(u, irls.u_max_m);
      total += raw[i];
    }
    if (total == 0.0) {
      est.degenerate_weights = true;
      weights.assign(n, 0.0);
      break;
    }
    for (std::size_t i = 0; i < n; ++i) weights[i] = raw[i] / total;

    const Position2D next = weighted_average(candidates, weights);
    est.final_step_m = euclidean_distance(next, fused);
    fused = next;
    if (est.final_step_m <= irls.epsilon_m) {
      est.converged = true;
      break;
    }
  }

  est.position = fused;
  for (std::size_t i = 0; i < n; ++i) est.weights[candidates[i].reference_id] = weights[i];
  return est;
}

}  // namespace irlspos
