// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

// Outlier-rejecting TDoA fix. Every station serves once as the TDoA
// reference, giving N least-squares candidates. The candidates are fused by a
// weighted average whose weights are re-derived each iteration from the
// Andrews sine function of each reference's mean absolute range-difference
// residual at the current fused position.

#pragma once

#include <map>
#include <span>
#include <vector>

#include "irlspos/channel.hpp"
#include "irlspos/geometry.hpp"
#include "irlspos/ls_solver.hpp"

namespace irlspos {

struct IrlsSettings {
  double u_max_m = 1.0;
  double epsilon_m = 1e-3;
  int max_iterations = 100;

  void validate() const;
};

struct PositionEstimate {
  Position2D position;
  /// Normalized weight per station id. All zero when `degenerate_weights`.
  std::map<int, double> weights;
  int iterations = 0;
  bool converged = false;
  /// Every reference exceeded u_max; `position` is the last fused estimate.
  bool degenerate_weights = false;
  double final_step_m = 0.0;
  std::vector<CandidateEstimate> candidates;

  /// Station ids whose final weight is exactly zero.
  std::vector<int> rejected_stations() const;
};

/// w(u) = (u_max / (u pi)) sin(u pi / u_max) for 0 < u <= u_max, 1 at u = 0,
/// 0 beyond u_max. Negative u throws Error(kInvalidArgument).
double andrews_weight(double u, double u_max);

/// Mean over n != e of |delta_d_ne - (||q - q_n|| - ||q - q_e||)|.
double uncertainty_factor(int reference_id, Position2D fused, const MeasurementSet& m,
                          std::span<const BaseStation> stations);

/// Convex combination of candidate positions.
Position2D weighted_average(std::span<const CandidateEstimate> candidates,
                            std::span<const double> weights);

PositionEstimate irls_position(const MeasurementSet& m, std::span<const BaseStation> stations,
                               const SolverSettings& ls = {}, const IrlsSettings& irls = {});

}  // namespace irlspos
