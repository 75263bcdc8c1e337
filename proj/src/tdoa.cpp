// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/tdoa.hpp"

#include <string>

#include "irlspos/error.hpp"

namespace irlspos {

RangeDifferenceSet compute_tdoas(const MeasurementSet& m, int reference_id) {
  if (m.samples.size() < 3) {
    throw Error(ErrorCategory::kUnderDetermined,
                "TDoA positioning needs at least 3 measurements, got " +
                    std::to_string(m.samples.size()));
  }
  if (!m.contains(reference_id)) {
    throw Error(ErrorCategory::kInvalidArgument,
                "reference station " + std::to_string(reference_id) + " has no measurement");
  }
  const double tau_e = m.sample(reference_id).arrival_time_s;

  RangeDifferenceSet rd;
  rd.reference_id = reference_id;
  rd.entries.reserve(m.samples.size() - 1);
  for (const auto& s : m.samples) {
    if (s.station_id == reference_id) continue;
    const double tdoa = (s.arrival_time_s - tau_e) - m.transmission_offset(s.station_id, reference_id);
    rd.entries.push_back({s.station_id, kSpeedOfLight * tdoa});
  }
  return rd;
}

double predicted_range_difference(Position2D p, const BaseStation& n,
                                  const BaseStation& e) noexcept {
  return euclidean_distance(p, n.position) - euclidean_distance(p, e.position);
}

}  // namespace irlspos
