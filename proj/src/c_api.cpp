// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/irlspos.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "irlspos/error.hpp"
#include "irlspos/harness.hpp"
#include "irlspos/irls.hpp"
#include "irlspos/tdoa.hpp"

struct irlspos_scenario {
  irlspos::ScenarioConfig config;
};

struct irlspos_batch {
  irlspos::TrialBatch batch;
};

namespace {

thread_local std::string g_last_error;

irlspos_status to_status(irlspos::ErrorCategory c) {
  using irlspos::ErrorCategory;
  switch (c) {
    case ErrorCategory::kInvalidArgument: return IRLSPOS_ERR_INVALID_ARGUMENT;
    case ErrorCategory::kConfiguration: return IRLSPOS_ERR_CONFIG;
    case ErrorCategory::kUnderDetermined: return IRLSPOS_ERR_UNDERDETERMINED;
    case ErrorCategory::kGeometry: return IRLSPOS_ERR_GEOMETRY;
    case ErrorCategory::kDegenerateInput: return IRLSPOS_ERR_DEGENERATE;
    case ErrorCategory::kIo: return IRLSPOS_ERR_IO;
  }
  return IRLSPOS_ERR_INTERNAL;
}

irlspos_status fail(irlspos_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class Fn>
irlspos_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    fn();
    return IRLSPOS_OK;
  } catch (const irlspos::Error& e) {
    return fail(to_status(e.category()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(IRLSPOS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IRLSPOS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(IRLSPOS_ERR_INTERNAL, "unknown exception");
  }
}

#define IRLSPOS_REQUIRE(cond, what) \
  if (!(cond)) return fail(IRLSPOS_ERR_INVALID_ARGUMENT, what)

struct FixInputs {
  std::vector<irlspos::BaseStation> stations;
  irlspos::MeasurementSet measurements;
  irlspos::SolverSettings ls;
  irlspos::IrlsSettings irls;
};

FixInputs make_inputs(const irlspos_station* stations, std::size_t count,
                      const double* arrival_times_s, double schedule_period_s,
                      const irlspos_params* params) {
  irlspos_params p;
  irlspos_params_default(&p);
  if (params) p = *params;

  FixInputs in;
  for (std::size_t i = 0; i < count; ++i) {
    in.stations.push_back({stations[i].id, {stations[i].x, stations[i].y}});
  }
  irlspos::validate_station_layout(in.stations);
  in.measurements.schedule_period_s = schedule_period_s;
  for (const auto& bs : irlspos::sorted_by_id(in.stations)) {
    const auto i = static_cast<std::size_t>(&irlspos::find_station(in.stations, bs.id) - in.stations.data());
    in.measurements.samples.push_back({bs.id, arrival_times_s[i]});
  }
  in.ls.max_iterations = p.ls_max_iterations;
  in.ls.step_tolerance_m = p.ls_step_tolerance_m;
  in.irls.u_max_m = p.u_max_m;
  in.irls.epsilon_m = p.epsilon_m;
  in.irls.max_iterations = p.irls_max_iterations;
  return in;
}

}  // namespace

extern "C" {

const char* irlspos_version(void) { return "0.1.0"; }

const char* irlspos_last_error(void) { return g_last_error.c_str(); }

const char* irlspos_status_name(irlspos_status status) {
  switch (status) {
    case IRLSPOS_OK: return "ok";
    case IRLSPOS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case IRLSPOS_ERR_CONFIG: return "configuration error";
    case IRLSPOS_ERR_UNDERDETERMINED: return "under-determined geometry";
    case IRLSPOS_ERR_GEOMETRY: return "geometry error";
    case IRLSPOS_ERR_DEGENERATE: return "degenerate input";
    case IRLSPOS_ERR_IO: return "i/o error";
    case IRLSPOS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

size_t irlspos_preset_count(void) { return irlspos::preset_names().size(); }

const char* irlspos_preset_name(size_t index) {
  static const std::vector<std::string> names = irlspos::preset_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

irlspos_status irlspos_preset_text(const char* name, const char** text) {
  IRLSPOS_REQUIRE(name && text, "name and text must not be NULL");
  *text = nullptr;
  thread_local std::string buffer;
  return guarded([&] {
    buffer = irlspos::preset_text(name);
    *text = buffer.c_str();
  });
}

irlspos_status irlspos_scenario_load(const char* path, irlspos_scenario** out) {
  IRLSPOS_REQUIRE(path && out, "path and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new irlspos_scenario{irlspos::load_config(path)}; });
}

irlspos_status irlspos_scenario_from_preset(const char* name, irlspos_scenario** out) {
  IRLSPOS_REQUIRE(name && out, "name and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new irlspos_scenario{irlspos::preset(name)}; });
}

irlspos_status irlspos_scenario_from_json(const char* json_text, irlspos_scenario** out) {
  IRLSPOS_REQUIRE(json_text && out, "json_text and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new irlspos_scenario{irlspos::parse_config(json_text)}; });
}

irlspos_status irlspos_scenario_set_seed(irlspos_scenario* scenario, uint64_t seed) {
  IRLSPOS_REQUIRE(scenario, "scenario must not be NULL");
  scenario->config.root_seed = seed;
  return IRLSPOS_OK;
}

irlspos_status irlspos_scenario_set_trials(irlspos_scenario* scenario, int trials_per_poi) {
  IRLSPOS_REQUIRE(scenario, "scenario must not be NULL");
  if (trials_per_poi < 1) return fail(IRLSPOS_ERR_CONFIG, "trials_per_poi must be >= 1");
  scenario->config.trials_per_poi = trials_per_poi;
  return IRLSPOS_OK;
}

irlspos_status irlspos_scenario_info_get(const irlspos_scenario* scenario,
                                         irlspos_scenario_info* out) {
  IRLSPOS_REQUIRE(scenario && out, "scenario and out must not be NULL");
  return guarded([&] {
    const auto& c = scenario->config;
    out->station_count = c.stations.size();
    out->poi_count = c.pois.size();
    out->trials_per_poi = c.trials_per_poi;
    out->root_seed = c.root_seed;
    out->bandwidth_hz = c.band.bandwidth_hz;
    out->carrier_frequency_hz = c.band.carrier_frequency_hz;
    out->nlos_probability = c.nlos_probability;
    out->noise_std_m = c.noise_std_override_m ? *c.noise_std_override_m : irlspos::toa_noise_std(c.band);
    out->ls_reference_id = c.ls_reference_id();
  });
}

void irlspos_scenario_free(irlspos_scenario* scenario) { delete scenario; }

irlspos_status irlspos_run_batch(const irlspos_scenario* scenario, irlspos_batch** out) {
  IRLSPOS_REQUIRE(scenario && out, "scenario and out must not be NULL");
  *out = nullptr;
  return guarded([&] { *out = new irlspos_batch{irlspos::run_batch(scenario->config)}; });
}

irlspos_status irlspos_batch_summary(const irlspos_batch* batch, irlspos_method method,
                                     irlspos_summary* out) {
  IRLSPOS_REQUIRE(batch && out, "batch and out must not be NULL");
  IRLSPOS_REQUIRE(method == IRLSPOS_METHOD_LS || method == IRLSPOS_METHOD_IRLS, "unknown method");
  return guarded([&] {
    const auto s = irlspos::summarize(batch->batch);
    const auto& m = method == IRLSPOS_METHOD_LS ? s.ls : s.irls;
    *out = {m.count, m.failures, m.mean_error_m, m.p90_error_m};
  });
}

irlspos_status irlspos_batch_export(const irlspos_batch* batch, const char* out_dir) {
  IRLSPOS_REQUIRE(batch && out_dir, "batch and out_dir must not be NULL");
  return guarded([&] { irlspos::export_results(batch->batch, out_dir); });
}

void irlspos_batch_free(irlspos_batch* batch) { delete batch; }

void irlspos_params_default(irlspos_params* out) {
  if (!out) return;
  const irlspos::SolverSettings ls;
  const irlspos::IrlsSettings irls;
  *out = {ls.max_iterations, ls.step_tolerance_m, irls.u_max_m, irls.epsilon_m, irls.max_iterations};
}

irlspos_status irlspos_locate(const irlspos_station* stations, size_t count,
                              const double* arrival_times_s, double schedule_period_s,
                              const irlspos_params* params, irlspos_fix* out, double* weights_out) {
  IRLSPOS_REQUIRE(stations && arrival_times_s && out, "stations, arrival_times_s and out must not be NULL");
  return guarded([&] {
    const auto in = make_inputs(stations, count, arrival_times_s, schedule_period_s, params);
    const auto est = irlspos::irls_position(in.measurements, in.stations, in.ls, in.irls);
    *out = {est.position.x, est.position.y, est.iterations, est.converged ? 1 : 0,
            est.degenerate_weights ? 1 : 0, est.final_step_m};
    if (weights_out) {
      for (std::size_t i = 0; i < count; ++i) weights_out[i] = est.weights.at(stations[i].id);
    }
  });
}

irlspos_status irlspos_locate_ls(const irlspos_station* stations, size_t count,
                                 const double* arrival_times_s, double schedule_period_s,
                                 int reference_id, const irlspos_params* params, irlspos_fix* out) {
  IRLSPOS_REQUIRE(stations && arrival_times_s && out, "stations, arrival_times_s and out must not be NULL");
  return guarded([&] {
    const auto in = make_inputs(stations, count, arrival_times_s, schedule_period_s, params);
    const auto c = irlspos::solve_single_reference(irlspos::compute_tdoas(in.measurements, reference_id),
                                                   in.stations, in.ls);
    *out = {c.position.x, c.position.y, c.iterations_used, c.converged ? 1 : 0, 0, 0.0};
  });
}

double irlspos_andrews_weight(double u, double u_max) {
  try {
    return irlspos::andrews_weight(u, u_max);
  } catch (const irlspos::Error& e) {
    g_last_error = e.what();
    return -1.0;
  }
}

}  // extern "C"
