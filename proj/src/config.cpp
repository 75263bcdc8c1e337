// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "irlspos/error.hpp"
#include "irlspos/harness.hpp"
#include "json.hpp"

namespace irlspos {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCategory::kConfiguration, path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      schema_error(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

const json& require(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) schema_error(path.empty() ? key : path + "." + key, "missing required field");
  return obj.at(key);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(path, "must be finite");
  return d;
}

double number_or(const json& obj, const std::string& path, const char* key, double fallback) {
  return obj.contains(key) ? number(obj.at(key), path + "." + key) : fallback;
}

std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<std::int64_t>();
}

Position2D point(const json& v, const std::string& path) {
  if (v.is_array()) {
    if (v.size() != 2) schema_error(path, "expected [x, y]");
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
  }
  check_keys(v, path, {"x", "y"});
  return {number(require(v, path, "x"), path + ".x"), number(require(v, path, "y"), path + ".y")};
}

BandProfile parse_band(const json& j, InformationalFields& info) {
  const std::string p = "band";
  check_keys(j, p,
             {"carrier_frequency_hz", "bandwidth_hz", "subcarrier_spacing_hz",
              "signal_time_period_s", "snr_db", "snr_linear", "symbol_period_s", "rolloff",
              "transmit_power_dbm"});
  BandProfile band;
  band.carrier_frequency_hz = number(require(j, p, "carrier_frequency_hz"), p + ".carrier_frequency_hz");
  band.bandwidth_hz = number(require(j, p, "bandwidth_hz"), p + ".bandwidth_hz");
  band.subcarrier_spacing_hz = number(require(j, p, "subcarrier_spacing_hz"), p + ".subcarrier_spacing_hz");
  band.signal_time_period_s = number(require(j, p, "signal_time_period_s"), p + ".signal_time_period_s");
  if (j.contains("snr_db") && j.contains("snr_linear")) {
    schema_error(p, "give either snr_db or snr_linear, not both");
  }
  if (j.contains("snr_linear")) {
    band.snr_linear = number(j.at("snr_linear"), p + ".snr_linear");
  } else {
    band.snr_linear = db_to_linear(number_or(j, p, "snr_db", 20.0));
  }
  if (!(band.bandwidth_hz > 0.0)) schema_error(p + ".bandwidth_hz", "must be > 0");
  band.symbol_period_s = number_or(j, p, "symbol_period_s", 1.0 / (2.0 * band.bandwidth_hz));
  band.rolloff = number_or(j, p, "rolloff", 0.25);
  if (j.contains("transmit_power_dbm")) {
    info.transmit_power_dbm = number(j.at("transmit_power_dbm"), p + ".transmit_power_dbm");
  }
  return band;
}

void parse_channel(const json& j, ScenarioConfig& cfg) {
  const std::string p = "channel";
  check_keys(j, p,
             {"bias_model", "nlos_probability", "blocked_links", "schedule_period_s", "noise_std_m",
              "projected_3d"});
  if (j.contains("bias_model")) {
    const auto& b = j.at("bias_model");
    const std::string bp = p + ".bias_model";
    const auto& kind = require(b, bp, "kind");
    if (kind == "fixed") {
      check_keys(b, bp, {"kind", "bias_m"});
      cfg.bias_model = {BiasModel::Kind::kFixed, number(require(b, bp, "bias_m"), bp + ".bias_m")};
    } else if (kind == "exponential") {
      check_keys(b, bp, {"kind", "mean_m"});
      cfg.bias_model = {BiasModel::Kind::kExponential, number_or(b, bp, "mean_m", 3.0)};
    } else {
      schema_error(bp + ".kind", "expected \"fixed\" or \"exponential\"");
    }
  }
  cfg.nlos_probability = number_or(j, p, "nlos_probability", 0.0);
  if (j.contains("blocked_links")) {
    const auto& arr = j.at("blocked_links");
    if (!arr.is_array()) schema_error(p + ".blocked_links", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string ip = p + ".blocked_links[" + std::to_string(i) + "]";
      check_keys(arr[i], ip, {"station_id", "bias_m"});
      cfg.blocked_links.push_back(
          {static_cast<int>(integer(require(arr[i], ip, "station_id"), ip + ".station_id")),
           number(require(arr[i], ip, "bias_m"), ip + ".bias_m")});
    }
  }
  cfg.schedule_period_s = number_or(j, p, "schedule_period_s", 10e-3);
  if (j.contains("noise_std_m")) cfg.noise_std_override_m = number(j.at("noise_std_m"), p + ".noise_std_m");
  if (j.contains("projected_3d")) {
    const auto& h = j.at("projected_3d");
    const std::string hp = p + ".projected_3d";
    check_keys(h, hp, {"enabled", "station_height_m", "ue_height_m"});
    const bool enabled = h.contains("enabled") ? h.at("enabled").get<bool>() : true;
    if (enabled) {
      cfg.projected_3d = HeightOffset{number_or(h, hp, "station_height_m", 4.0),
                                      number_or(h, hp, "ue_height_m", 1.0)};
    }
  }
}

SolverSettings parse_solver(const json& j) {
  const std::string p = "solver";
  check_keys(j, p, {"max_iterations", "step_tolerance_m", "initial_guess"});
  SolverSettings s;
  if (j.contains("max_iterations")) s.max_iterations = static_cast<int>(integer(j.at("max_iterations"), p + ".max_iterations"));
  s.step_tolerance_m = number_or(j, p, "step_tolerance_m", s.step_tolerance_m);
  if (j.contains("initial_guess")) {
    const auto& g = j.at("initial_guess");
    if (g.is_string()) {
      if (g != "centroid") schema_error(p + ".initial_guess", "expected \"centroid\" or a point");
    } else {
      s.initial_guess = point(g, p + ".initial_guess");
    }
  }
  return s;
}

IrlsSettings parse_irls(const json& j) {
  const std::string p = "irls";
  check_keys(j, p, {"u_max_m", "epsilon_m", "max_iterations"});
  IrlsSettings s;
  s.u_max_m = number_or(j, p, "u_max_m", s.u_max_m);
  s.epsilon_m = number_or(j, p, "epsilon_m", s.epsilon_m);
  if (j.contains("max_iterations")) s.max_iterations = static_cast<int>(integer(j.at("max_iterations"), p + ".max_iterations"));
  return s;
}

// Shared geometry of the bundled scenarios: four corner stations around a
// 29 m x 25 m area and 23 jittered-grid points of interest.
constexpr const char* kHall = R"(
  "stations": [
    {"id": 1, "x": 0.0, "y": 0.0},
    {"id": 2, "x": 29.0, "y": 0.0},
    {"id": 3, "x": 29.0, "y": 25.0},
    {"id": 4, "x": 0.0, "y": 25.0}
  ],
  "poi_grid": {"count": 23, "width_m": 29.0, "height_m": 25.0, "seed": 2023},
  "trials_per_poi": 50,
  "root_seed": 42,
  "emulation_time_s": 60,
  "solver": {"max_iterations": 50, "step_tolerance_m": 1e-6, "initial_guess": "centroid"},
  "irls": {"u_max_m": 1.0, "epsilon_m": 1e-3, "max_iterations": 100},)";

constexpr const char* kCband = R"(
  "band": {
    "carrier_frequency_hz": 3.775e9,
    "bandwidth_hz": 100e6,
    "subcarrier_spacing_hz": 30e3,
    "signal_time_period_s": 1e-6,
    "snr_db": 20,
    "rolloff": 0.25,
    "transmit_power_dbm": 20
  },)";

constexpr const char* kMmwave = R"(
  "band": {
    "carrier_frequency_hz": 26.85e9,
    "bandwidth_hz": 400e6,
    "subcarrier_spacing_hz": 120e3,
    "signal_time_period_s": 1e-6,
    "snr_db": 20,
    "rolloff": 0.25,
    "transmit_power_dbm": 20
  },)";

constexpr const char* kStatic = R"(
  "channel": {
    "bias_model": {"kind": "exponential", "mean_m": 3.0},
    "nlos_probability": 0.0,
    "schedule_period_s": 0.01
  })";

constexpr const char* kSemiDynamic = R"(
  "channel": {
    "bias_model": {"kind": "exponential", "mean_m": 3.0},
    "nlos_probability": 0.3,
    "schedule_period_s": 0.01
  })";

struct PresetDef {
  const char* name;
  const char* band;
  const char* channel;
};

constexpr PresetDef kPresets[] = {
    {"static_cband", kCband, kStatic},
    {"static_mmwave", kMmwave, kStatic},
    {"semidynamic_cband", kCband, kSemiDynamic},
    {"semidynamic_mmwave", kMmwave, kSemiDynamic},
};

std::string preset_json(const PresetDef& def) {
  std::ostringstream os;
  os << "{\n  \"name\": \"" << def.name << "\"," << kHall << def.band << def.channel << "\n}\n";
  return os.str();
}

}  // namespace

void ScenarioConfig::validate() const {
  validate_station_layout(stations);
  if (pois.empty()) throw Error(ErrorCategory::kConfiguration, "pois: at least one point of interest is required");
  for (std::size_t i = 0; i < pois.size(); ++i) {
    if (!is_finite(pois[i])) {
      throw Error(ErrorCategory::kConfiguration, "pois[" + std::to_string(i) + "]: not finite");
    }
  }
  band.validate();
  if (!(nlos_probability >= 0.0 && nlos_probability <= 1.0)) {
    throw Error(ErrorCategory::kConfiguration, "channel.nlos_probability must lie in [0, 1]");
  }
  if (!(bias_model.value_m > 0.0)) {
    throw Error(ErrorCategory::kConfiguration, "channel.bias_model: bias must be > 0");
  }
  std::set<int> blocked;
  for (const auto& b : blocked_links) {
    const bool known = std::any_of(stations.begin(), stations.end(),
                                   [&](const auto& s) { return s.id == b.station_id; });
    if (!known) {
      throw Error(ErrorCategory::kConfiguration,
                  "channel.blocked_links: unknown station " + std::to_string(b.station_id));
    }
    if (!blocked.insert(b.station_id).second) {
      throw Error(ErrorCategory::kConfiguration,
                  "channel.blocked_links: station " + std::to_string(b.station_id) + " listed twice");
    }
    if (!(b.bias_m > 0.0)) {
      throw Error(ErrorCategory::kConfiguration, "channel.blocked_links: bias_m must be > 0");
    }
  }
  if (!(schedule_period_s >= 0.0)) {
    throw Error(ErrorCategory::kConfiguration, "channel.schedule_period_s must be >= 0");
  }
  if (noise_std_override_m && !(*noise_std_override_m >= 0.0)) {
    throw Error(ErrorCategory::kConfiguration, "channel.noise_std_m must be >= 0");
  }
  if (trials_per_poi < 1) throw Error(ErrorCategory::kConfiguration, "trials_per_poi must be >= 1");
  solver.validate();
  irls.validate();
}

int ScenarioConfig::ls_reference_id() const {
  return std::min_element(stations.begin(), stations.end(),
                          [](const auto& a, const auto& b) { return a.id < b.id; })
      ->id;
}

std::vector<Position2D> jittered_poi_grid(double width_m, double height_m, std::size_t count,
                                          std::uint64_t seed) {
  if (!(width_m > 0.0 && height_m > 0.0) || count == 0) {
    throw Error(ErrorCategory::kConfiguration, "poi_grid: width, height and count must be positive");
  }
  const auto cols = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(count) * width_m / height_m)));
  const std::size_t rows = (count + cols - 1) / cols;
  const double cell_w = width_m / static_cast<double>(cols);
  const double cell_h = height_m / static_cast<double>(rows);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::vector<Position2D> out;
  out.reserve(count);
  for (std::size_t r = 0; r < rows && out.size() < count; ++r) {
    for (std::size_t c = 0; c < cols && out.size() < count; ++c) {
      const double jx = jitter(rng);
      const double jy = jitter(rng);
      out.push_back({(static_cast<double>(c) + 0.5 + jx) * cell_w,
                     (static_cast<double>(r) + 0.5 + jy) * cell_h});
    }
  }
  return out;
}

ScenarioConfig parse_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCategory::kConfiguration, std::string("malformed config: ") + e.what());
  }
  check_keys(j, "",
             {"name", "stations", "pois", "poi_grid", "band", "channel", "trials_per_poi",
              "root_seed", "emulation_time_s", "solver", "irls"});

  ScenarioConfig cfg;
  try {
    if (j.contains("name")) cfg.name = j.at("name").get<std::string>();

    const auto& st = require(j, "", "stations");
    if (!st.is_array()) schema_error("stations", "expected an array");
    for (std::size_t i = 0; i < st.size(); ++i) {
      const std::string sp = "stations[" + std::to_string(i) + "]";
      check_keys(st[i], sp, {"id", "x", "y"});
      cfg.stations.push_back({static_cast<int>(integer(require(st[i], sp, "id"), sp + ".id")),
                              {number(require(st[i], sp, "x"), sp + ".x"),
                               number(require(st[i], sp, "y"), sp + ".y")}});
    }

    if (j.contains("pois") == j.contains("poi_grid")) {
      schema_error("pois", "give exactly one of \"pois\" or \"poi_grid\"");
    }
    if (j.contains("pois")) {
      const auto& arr = j.at("pois");
      if (!arr.is_array()) schema_error("pois", "expected an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        cfg.pois.push_back(point(arr[i], "pois[" + std::to_string(i) + "]"));
      }
    } else {
      const auto& g = j.at("poi_grid");
      check_keys(g, "poi_grid", {"count", "width_m", "height_m", "seed"});
      const auto count = integer(require(g, "poi_grid", "count"), "poi_grid.count");
      if (count < 1) schema_error("poi_grid.count", "must be >= 1");
      cfg.pois = jittered_poi_grid(number(require(g, "poi_grid", "width_m"), "poi_grid.width_m"),
                                   number(require(g, "poi_grid", "height_m"), "poi_grid.height_m"),
                                   static_cast<std::size_t>(count),
                                   static_cast<std::uint64_t>(g.contains("seed") ? integer(g.at("seed"), "poi_grid.seed") : 2023));
    }

    cfg.band = parse_band(require(j, "", "band"), cfg.informational);
    if (j.contains("channel")) parse_channel(j.at("channel"), cfg);
    if (j.contains("trials_per_poi")) cfg.trials_per_poi = static_cast<int>(integer(j.at("trials_per_poi"), "trials_per_poi"));
    if (j.contains("root_seed")) {
      const auto& s = j.at("root_seed");
      if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
        schema_error("root_seed", "expected a non-negative integer");
      }
      cfg.root_seed = s.get<std::uint64_t>();
    }
    if (j.contains("emulation_time_s")) {
      cfg.informational.emulation_time_s = number(j.at("emulation_time_s"), "emulation_time_s");
    }
    if (j.contains("solver")) cfg.solver = parse_solver(j.at("solver"));
    if (j.contains("irls")) cfg.irls = parse_irls(j.at("irls"));
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::kConfiguration, std::string("config schema violation: ") + e.what());
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::kIo, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : kPresets) names.emplace_back(p.name);
  return names;
}

ScenarioConfig preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return parse_config(preset_json(p));
  }
  throw Error(ErrorCategory::kConfiguration, "unknown preset \"" + std::string(name) + "\"");
}

std::string preset_text(std::string_view name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return preset_json(p);
  }
  throw Error(ErrorCategory::kConfiguration, "unknown preset \"" + std::string(name) + "\"");
}

}  // namespace irlspos
