// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "irlspos/error.hpp"

namespace irlspos {

bool is_finite(Position2D p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

double euclidean_distance(Position2D a, Position2D b) noexcept {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double true_first_toa(Position2D ue, const BaseStation& bs) noexcept {
  return euclidean_distance(ue, bs.position) / kSpeedOfLight;
}

Position2D centroid(std::span<const BaseStation> stations) {
  if (stations.empty()) {
    throw Error(ErrorCategory::kInvalidArgument, "centroid of an empty station list");
  }
  Position2D sum;
  for (const auto& s : stations) sum = sum + s.position;
  return (1.0 / static_cast<double>(stations.size())) * sum;
}

double bounding_diagonal(std::span<const BaseStation> stations) {
  if (stations.empty()) return 0.0;
  auto [min_x, max_x] = std::minmax_element(
      stations.begin(), stations.end(),
      [](const auto& a, const auto& b) { return a.position.x < b.position.x; });
  auto [min_y, max_y] = std::minmax_element(
      stations.begin(), stations.end(),
      [](const auto& a, const auto& b) { return a.position.y < b.position.y; });
  return std::hypot(max_x->position.x - min_x->position.x, max_y->position.y - min_y->position.y);
}

bool are_collinear(std::span<const BaseStation> stations) {
  if (stations.size() < 3) return true;
  const double scale = bounding_diagonal(stations);
  if (scale == 0.0) return true;
  // Largest triangle area spanned with the first station against all pairs.
  const Position2D origin = stations.front().position;
  double max_area = 0.0;
  for (std::size_t i = 1; i < stations.size(); ++i) {
    for (std::size_t j = i + 1; j < stations.size(); ++j) {
      const Position2D a = stations[i].position - origin;
      const Position2D b = stations[j].position - origin;
      max_area = std::max(max_area, std::abs(a.x * b.y - a.y * b.x));
    }
  }
  return max_area <= 1e-9 * scale * scale;
}

void validate_station_layout(std::span<const BaseStation> stations) {
  if (stations.size() < 3) {
    throw Error(ErrorCategory::kUnderDetermined,
                "2D TDoA positioning needs at least 3 base stations, got " +
                    std::to_string(stations.size()));
  }
  std::set<int> ids;
  for (const auto& s : stations) {
    if (!ids.insert(s.id).second) {
      throw Error(ErrorCategory::kConfiguration, "duplicate station id " + std::to_string(s.id));
    }
    if (!is_finite(s.position)) {
      throw Error(ErrorCategory::kConfiguration,
                  "station " + std::to_string(s.id) + " has a non-finite coordinate");
    }
  }
  if (are_collinear(stations)) {
    throw Error(ErrorCategory::kGeometry, "base stations are collinear");
  }
}

std::vector<BaseStation> sorted_by_id(std::span<const BaseStation> stations) {
  std::vector<BaseStation> out(stations.begin(), stations.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

const BaseStation& find_station(std::span<const BaseStation> stations, int id) {
  auto it = std::find_if(stations.begin(), stations.end(), [id](const auto& s) { return s.id == id; });
  if (it == stations.end()) {
    throw Error(ErrorCategory::kInvalidArgument, "unknown station id " + std::to_string(id));
  }
  return *it;
}

}  // namespace irlspos
