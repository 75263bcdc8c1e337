// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <vector>

namespace irlspos {

/// Speed of light in vacuum [m/s]. Every time/distance conversion uses it.
inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Point in the positioning plane, metres.
struct Position2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position2D&, const Position2D&) = default;
};

inline Position2D operator+(Position2D a, Position2D b) { return {a.x + b.x, a.y + b.y}; }
inline Position2D operator-(Position2D a, Position2D b) { return {a.x - b.x, a.y - b.y}; }
inline Position2D operator*(double s, Position2D p) { return {s * p.x, s * p.y}; }

struct BaseStation {
  int id = 0;
  Position2D position;
};

bool is_finite(Position2D p) noexcept;

double euclidean_distance(Position2D a, Position2D b) noexcept;

/// Propagation delay of the direct path between `ue` and `bs` [s].
double true_first_toa(Position2D ue, const BaseStation& bs) noexcept;

Position2D centroid(std::span<const BaseStation> stations);

/// Length of the diagonal of the stations' axis-aligned bounding box.
double bounding_diagonal(std::span<const BaseStation> stations);

/// True when every station lies on one line (within a relative tolerance).
bool are_collinear(std::span<const BaseStation> stations);

/// Checks the invariants needed for a 2D TDoA fix: at least three stations,
/// unique ids, finite coordinates, not all collinear. Throws irlspos::Error.
void validate_station_layout(std::span<const BaseStation> stations);

/// Copy of `stations` sorted by ascending id.
std::vector<BaseStation> sorted_by_id(std::span<const BaseStation> stations);

const BaseStation& find_station(std::span<const BaseStation> stations, int id);

}  // namespace irlspos
