// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

// Monte-Carlo benchmark: fixed-reference LS versus IRLS over a set of
// ground-truth points, with per-trial random NLoS link states.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irlspos/channel.hpp"
#include "irlspos/geometry.hpp"
#include "irlspos/irls.hpp"
#include "irlspos/ls_solver.hpp"

namespace irlspos {

struct BiasModel {
  enum class Kind { kFixed, kExponential };
  Kind kind = Kind::kExponential;
  /// Bias for kFixed, distribution mean for kExponential [m].
  double value_m = 3.0;
};

/// Link that is NLoS in every trial with a constant bias.
struct BlockedLink {
  int station_id = 0;
  double bias_m = 0.0;
};

/// Fields accepted for completeness but unused by any computation.
struct InformationalFields {
  std::optional<double> transmit_power_dbm;
  std::optional<double> emulation_time_s;
};

struct ScenarioConfig {
  std::string name;
  std::vector<BaseStation> stations;
  std::vector<Position2D> pois;
  BandProfile band;
  BiasModel bias_model;
  double nlos_probability = 0.0;
  std::vector<BlockedLink> blocked_links;
  double schedule_period_s = 10e-3;
  std::optional<double> noise_std_override_m;
  std::optional<HeightOffset> projected_3d;
  int trials_per_poi = 50;
  std::uint64_t root_seed = 42;
  SolverSettings solver;
  IrlsSettings irls;
  InformationalFields informational;

  /// Throws Error(kConfiguration / kUnderDetermined / kGeometry) with a
  /// field-specific message.
  void validate() const;

  /// Stations sorted by id; the LS baseline uses the first one as reference.
  int ls_reference_id() const;
};

ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::filesystem::path& path);

std::vector<std::string> preset_names();
ScenarioConfig preset(std::string_view name);
/// JSON source of a bundled preset, as shipped under configs/.
std::string preset_text(std::string_view name);

/// `count` points, row-major on a jittered grid inside [0, width] x [0, height].
/// Each cell centre moves by up to a quarter cell in x and y.
std::vector<Position2D> jittered_poi_grid(double width_m, double height_m, std::size_t count,
                                          std::uint64_t seed);

enum class Method { kLs, kIrls };
std::string_view to_string(Method m) noexcept;

struct TrialRecord {
  std::size_t poi_index = 0;
  std::size_t trial_index = 0;
  Method method = Method::kLs;
  /// NaN when the solver failed for this trial.
  double error_2d_m = 0.0;
  std::vector<int> rejected_stations;
  bool failed = false;
  /// FNV-1a digest of the MeasurementSet the method consumed.
  std::uint64_t measurement_digest = 0;
};

struct MethodSummary {
  std::size_t count = 0;
  std::size_t failures = 0;
  double mean_error_m = 0.0;
  double p90_error_m = 0.0;
};

struct Summary {
  MethodSummary ls;
  MethodSummary irls;
};

struct TrialBatch {
  std::string scenario_name;
  std::uint64_t root_seed = 0;
  int ls_reference_id = 0;
  std::vector<TrialRecord> per_trial;  // sorted by (poi, trial, method)

  std::vector<double> errors(Method m) const;  // failed trials excluded
  /// Sorted ascending.
  std::vector<double> cdf(Method m) const;
};

/// Seed of trial k is root_seed + k, with k = poi_index * trials_per_poi + trial.
std::uint64_t trial_seed(std::uint64_t root_seed, std::size_t global_trial_index) noexcept;

/// Independent sub-stream of a trial seed (0: link states, 1: ranging noise).
std::uint64_t stream_seed(std::uint64_t trial_seed, std::uint64_t stream) noexcept;

std::uint64_t digest(const MeasurementSet& m) noexcept;

/// Link states of one trial, ascending station id.
std::vector<LinkState> draw_link_states(const ScenarioConfig& cfg, std::uint64_t seed);

TrialBatch run_batch(const ScenarioConfig& cfg);

/// Linear-interpolation quantile on the (n - 1) q fractional index.
double quantile_linear(std::vector<double> values, double q);

MethodSummary summarize_errors(std::span<const double> errors, std::size_t failures = 0);
Summary summarize(const TrialBatch& batch);

/// Writes trials.csv, summary.json, cdf_ls.csv and cdf_irls.csv into `out_dir`
/// (created if needed). Floats use 9 significant digits.
void export_results(const TrialBatch& batch, const std::filesystem::path& out_dir);

}  // namespace irlspos
