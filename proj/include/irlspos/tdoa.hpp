// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

#include "irlspos/channel.hpp"
#include "irlspos/geometry.hpp"

namespace irlspos {

struct RangeDifference {
  int station_id = 0;
  double delta_d_m = 0.0;  // signed
};

/// Range differences relative to one reference station, reference excluded,
/// ordered by ascending station id.
struct RangeDifferenceSet {
  int reference_id = 0;
  std::vector<RangeDifference> entries;
};

/// delta_d_ne = c * ((tau_n - tau_e) - delta_ne) for every n != e.
RangeDifferenceSet compute_tdoas(const MeasurementSet& m, int reference_id);

/// ||p - q_n|| - ||p - q_e||.
double predicted_range_difference(Position2D p, const BaseStation& n,
                                  const BaseStation& e) noexcept;

}  // namespace irlspos
