// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "irlspos/channel.hpp"
#include "irlspos/geometry.hpp"
#include "irlspos/tdoa.hpp"

namespace irlspos {

struct SolverSettings {
  int max_iterations = 50;
  double step_tolerance_m = 1e-6;
  /// Start from this point instead of the station centroid.
  std::optional<Position2D> initial_guess;

  void validate() const;
};

struct CandidateEstimate {
  int reference_id = 0;
  Position2D position;
  double residual_norm_m = 0.0;
  bool converged = false;
  int iterations_used = 0;
};

/// r_n(p) = delta_d_ne - (||p - q_n|| - ||p - q_e||), one per entry of `rd`.
std::vector<double> range_difference_residuals(Position2D p, const RangeDifferenceSet& rd,
                                               std::span<const BaseStation> stations);

/// Analytic d r_n / d(x, y). Rows follow the entry order of `rd`.
std::vector<std::array<double, 2>> range_difference_jacobian(Position2D p,
                                                             const RangeDifferenceSet& rd,
                                                             std::span<const BaseStation> stations);

/// Sum of squared range-difference residuals [m^2].
double ls_objective(Position2D p, const RangeDifferenceSet& rd,
                    std::span<const BaseStation> stations);

/// Gauss-Newton fit of one reference's range differences. Returns the last
/// iterate even when it did not converge.
CandidateEstimate solve_single_reference(const RangeDifferenceSet& rd,
                                         std::span<const BaseStation> stations,
                                         const SolverSettings& settings = {});

/// One candidate per reference station, ascending reference id. A reference
/// whose solve throws is reported with converged = false at the initial guess.
std::vector<CandidateEstimate> solve_all_references(const MeasurementSet& m,
                                                    std::span<const BaseStation> stations,
                                                    const SolverSettings& settings = {});

}  // namespace irlspos
