// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "irlspos/error.hpp"
#include "irlspos/geometry.hpp"

using namespace irlspos;

TEST_CASE("euclidean_distance examples") {
  CHECK(euclidean_distance({0, 0}, {0, 0}) == 0.0);
  CHECK(euclidean_distance({0, 0}, {3, 4}) == 5.0);
  CHECK(euclidean_distance({1, 1}, {-2, 5}) == 5.0);
}

TEST_CASE("true_first_toa examples") {
  CHECK(true_first_toa({0, 0}, {1, {3, 4}}) == doctest::Approx(5.0 / 299'792'458.0).epsilon(1e-15));
  CHECK(true_first_toa({10, 10}, {1, {10, 10}}) == 0.0);
  CHECK(true_first_toa({0, 0}, {1, {29, 25}}) ==
        doctest::Approx(std::sqrt(1466.0) / 299'792'458.0).epsilon(1e-15));
}

TEST_CASE("distance is symmetric, obeys the triangle inequality, and toa scales linearly") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const Position2D a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    CHECK(euclidean_distance(a, b) == euclidean_distance(b, a));
    CHECK(euclidean_distance(a, c) <= euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-12);
    const BaseStation bs{1, b};
    const BaseStation bs2{1, 2.0 * b};
    CHECK(true_first_toa(2.0 * a, bs2) == doctest::Approx(2.0 * true_first_toa(a, bs)).epsilon(1e-14));
  }
}

TEST_CASE("station layout validation") {
  const std::vector<BaseStation> ok{{1, {0, 0}}, {2, {29, 0}}, {3, {29, 25}}};
  CHECK_NOTHROW(validate_station_layout(ok));

  const std::vector<BaseStation> two{{1, {0, 0}}, {2, {29, 0}}};
  try {
    validate_station_layout(two);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::kUnderDetermined);
  }

  const std::vector<BaseStation> line{{1, {0, 0}}, {2, {10, 10}}, {3, {20, 20}}, {4, {-5, -5}}};
  try {
    validate_station_layout(line);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::kGeometry);
  }

  const std::vector<BaseStation> dup{{1, {0, 0}}, {1, {29, 0}}, {3, {29, 25}}};
  CHECK_THROWS_AS(validate_station_layout(dup), Error);
}

TEST_CASE("centroid and bounding diagonal of the corner layout") {
  const std::vector<BaseStation> s{{1, {0, 0}}, {2, {29, 0}}, {3, {29, 25}}, {4, {0, 25}}};
  CHECK(centroid(s) == Position2D{14.5, 12.5});
  CHECK(bounding_diagonal(s) == doctest::Approx(std::sqrt(1466.0)));
}
