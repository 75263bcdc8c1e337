// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <random>

#include "irlspos/error.hpp"
#include "irlspos/tdoa.hpp"
#include "json.hpp"

namespace irlspos {
namespace {

std::string g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCategory::kIo, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCategory::kIo, "failed writing " + path.string());
}

void write_cdf(const std::vector<double>& sorted, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << "error_m,cumulative_probability\n";
  const auto n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out << g9(sorted[i]) << ',' << g9(static_cast<double>(i + 1) / n) << '\n';
  }
  finish(out, path);
}

std::string summary_block(const MethodSummary& s) {
  return "{\"count\": " + std::to_string(s.count) + ", \"failures\": " + std::to_string(s.failures) +
         ", \"mean_error_m\": " + g9(s.mean_error_m) + ", \"p90_error_m\": " + g9(s.p90_error_m) + "}";
}

}  // namespace

std::string_view to_string(Method m) noexcept { return m == Method::kLs ? "LS" : "IRLS"; }

std::uint64_t trial_seed(std::uint64_t root_seed, std::size_t global_trial_index) noexcept {
  return root_seed + static_cast<std::uint64_t>(global_trial_index);
}

std::uint64_t stream_seed(std::uint64_t trial_seed, std::uint64_t stream) noexcept {
  return splitmix64(trial_seed ^ splitmix64(stream));
}

std::uint64_t digest(const MeasurementSet& m) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001B3ULL;
    }
  };
  mix(&m.epoch_id, sizeof m.epoch_id);
  mix(&m.schedule_period_s, sizeof m.schedule_period_s);
  for (const auto& s : m.samples) {
    mix(&s.station_id, sizeof s.station_id);
    mix(&s.arrival_time_s, sizeof s.arrival_time_s);
  }
  return h;
}

std::vector<LinkState> draw_link_states(const ScenarioConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> excess(1.0 / cfg.bias_model.value_m);

  std::vector<LinkState> links;
  for (const auto& bs : sorted_by_id(cfg.stations)) {
    // Both variates are drawn for every link so that changing the NLoS
    // probability or band does not shift the stream of later links.
    const double flip = unit(rng);
    const double bias = cfg.bias_model.kind == BiasModel::Kind::kFixed ? cfg.bias_model.value_m
                                                                        : excess(rng);
    auto blocked = std::find_if(cfg.blocked_links.begin(), cfg.blocked_links.end(),
                                [&bs](const auto& b) { return b.station_id == bs.id; });
    if (blocked != cfg.blocked_links.end()) {
      links.push_back(LinkState::nlos(bs.id, blocked->bias_m));
    } else if (flip < cfg.nlos_probability && bias > 0.0) {
      links.push_back(LinkState::nlos(bs.id, bias));
    } else {
      links.push_back(LinkState::los(bs.id));
    }
  }
  return links;
}

std::vector<double> TrialBatch::errors(Method m) const {
  std::vector<double> out;
  for (const auto& r : per_trial) {
    if (r.method == m && !r.failed) out.push_back(r.error_2d_m);
  }
  return out;
}

std::vector<double> TrialBatch::cdf(Method m) const {
  auto e = errors(m);
  std::sort(e.begin(), e.end());
  return e;
}

TrialBatch run_batch(const ScenarioConfig& cfg) {
  cfg.validate();
  const int ls_ref = cfg.ls_reference_id();

  EmulationOptions emulation;
  emulation.schedule_period_s = cfg.schedule_period_s;
  emulation.noise_std_m = cfg.noise_std_override_m;
  emulation.projected_3d = cfg.projected_3d;

  TrialBatch batch;
  batch.scenario_name = cfg.name;
  batch.root_seed = cfg.root_seed;
  batch.ls_reference_id = ls_ref;
  const auto trials = static_cast<std::size_t>(cfg.trials_per_poi);
  batch.per_trial.reserve(2 * cfg.pois.size() * trials);

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t poi = 0; poi < cfg.pois.size(); ++poi) {
    const Position2D truth = cfg.pois[poi];
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t k = poi * trials + t;
      const std::uint64_t seed = trial_seed(cfg.root_seed, k);
      const auto links = draw_link_states(cfg, stream_seed(seed, 0));
      const auto m = emulate_measurement_set(truth, cfg.stations, links, cfg.band,
                                             stream_seed(seed, 1), emulation,
                                             static_cast<std::int64_t>(k));
      const std::uint64_t h = digest(m);

      TrialRecord ls{poi, t, Method::kLs, kNaN, {}, true, h};
      try {
        const auto c = solve_single_reference(compute_tdoas(m, ls_ref), cfg.stations, cfg.solver);
        ls.error_2d_m = euclidean_distance(c.position, truth);
        ls.failed = !std::isfinite(ls.error_2d_m);
      } catch (const Error&) {
      }
      batch.per_trial.push_back(std::move(ls));

      TrialRecord irls{poi, t, Method::kIrls, kNaN, {}, true, h};
      try {
        const auto est = irls_position(m, cfg.stations, cfg.solver, cfg.irls);
        irls.error_2d_m = euclidean_distance(est.position, truth);
        irls.rejected_stations = est.rejected_stations();
        irls.failed = !std::isfinite(irls.error_2d_m);
      } catch (const Error&) {
      }
      batch.per_trial.push_back(std::move(irls));
    }
  }
  return batch;
}

double quantile_linear(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCategory::kInvalidArgument, "quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCategory::kInvalidArgument, "quantile outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

MethodSummary summarize_errors(std::span<const double> errors, std::size_t failures) {
  if (errors.empty()) throw Error(ErrorCategory::kInvalidArgument, "cannot summarize an empty batch");
  MethodSummary s;
  s.count = errors.size();
  s.failures = failures;
  double sum = 0.0;
  for (double e : errors) sum += e;
  s.mean_error_m = sum / static_cast<double>(errors.size());
  s.p90_error_m = quantile_linear({errors.begin(), errors.end()}, 0.9);
  return s;
}

Summary summarize(const TrialBatch& batch) {
  auto failures = [&batch](Method m) {
    return static_cast<std::size_t>(std::count_if(
        batch.per_trial.begin(), batch.per_trial.end(),
        [m](const auto& r) { return r.method == m && r.failed; }));
  };
  return {summarize_errors(batch.errors(Method::kLs), failures(Method::kLs)),
          summarize_errors(batch.errors(Method::kIrls), failures(Method::kIrls))};
}

void export_results(const TrialBatch& batch, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw Error(ErrorCategory::kIo, "cannot create output directory " + out_dir.string());
  }

  const auto trials_path = out_dir / "trials.csv";
  auto trials = open_for_write(trials_path);
  trials << "poi_index,trial_index,method,error_2d_m,rejected_stations\n";
  for (const auto& r : batch.per_trial) {
    trials << r.poi_index << ',' << r.trial_index << ',' << to_string(r.method) << ','
           << g9(r.error_2d_m) << ',';
    for (std::size_t i = 0; i < r.rejected_stations.size(); ++i) {
      trials << (i ? ";" : "") << r.rejected_stations[i];
    }
    trials << '\n';
  }
  finish(trials, trials_path);

  const Summary s = summarize(batch);
  const auto summary_path = out_dir / "summary.json";
  auto summary = open_for_write(summary_path);
  summary << "{\n"
          << "  \"scenario\": " << nlohmann::json(batch.scenario_name).dump() << ",\n"
          << "  \"root_seed\": " << batch.root_seed << ",\n"
          << "  \"ls_reference_id\": " << batch.ls_reference_id << ",\n"
          << "  \"quantile_rule\": \"linear interpolation at (n-1)q\",\n"
          << "  \"methods\": {\n"
          << "    \"LS\": " << summary_block(s.ls) << ",\n"
          << "    \"IRLS\": " << summary_block(s.irls) << "\n"
          << "  }\n"
          << "}\n";
  finish(summary, summary_path);

  write_cdf(batch.cdf(Method::kLs), out_dir / "cdf_ls.csv");
  write_cdf(batch.cdf(Method::kIrls), out_dir / "cdf_irls.csv");
}

}  // namespace irlspos
