// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through irlspos.h.

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "irlspos/irlspos.h"

namespace {

int report(irlspos_status status) {
  std::fprintf(stderr, "error (%s): %s\n", irlspos_status_name(status), irlspos_last_error());
  return static_cast<int>(status);
}

bool is_preset(const std::string& name) {
  for (size_t i = 0; i < irlspos_preset_count(); ++i) {
    if (name == irlspos_preset_name(i)) return true;
  }
  return false;
}

// A config argument is a file path, or the name of a bundled preset when no
// such file exists.
irlspos_status open_scenario(const std::string& config, irlspos_scenario** out) {
  if (!std::filesystem::exists(config) && is_preset(config)) {
    return irlspos_scenario_from_preset(config.c_str(), out);
  }
  return irlspos_scenario_load(config.c_str(), out);
}

void print_info(const irlspos_scenario_info& info) {
  std::printf("%-20s %zu\n", "stations:", info.station_count);
  std::printf("%-20s %zu\n", "points of interest:", info.poi_count);
  std::printf("%-20s %d\n", "trials per point:", info.trials_per_poi);
  std::printf("%-20s %llu\n", "root seed:", static_cast<unsigned long long>(info.root_seed));
  std::printf("%-20s %.6g Hz\n", "carrier:", info.carrier_frequency_hz);
  std::printf("%-20s %.6g Hz\n", "bandwidth:", info.bandwidth_hz);
  std::printf("%-20s %.6g m\n", "ranging noise std:", info.noise_std_m);
  std::printf("%-20s %.6g\n", "NLoS probability:", info.nlos_probability);
  std::printf("%-20s station %d\n", "LS reference:", info.ls_reference_id);
}

int run(const std::string& config, const std::string& out_dir, std::optional<std::uint64_t> seed,
        std::optional<int> trials) {
  irlspos_scenario* scenario = nullptr;
  if (auto s = open_scenario(config, &scenario); s != IRLSPOS_OK) return report(s);
  std::unique_ptr<irlspos_scenario, decltype(&irlspos_scenario_free)> scenario_guard(scenario, irlspos_scenario_free);

  if (seed) {
    if (auto s = irlspos_scenario_set_seed(scenario, *seed); s != IRLSPOS_OK) return report(s);
  }
  if (trials) {
    if (auto s = irlspos_scenario_set_trials(scenario, *trials); s != IRLSPOS_OK) return report(s);
  }

  irlspos_batch* batch = nullptr;
  if (auto s = irlspos_run_batch(scenario, &batch); s != IRLSPOS_OK) return report(s);
  std::unique_ptr<irlspos_batch, decltype(&irlspos_batch_free)> batch_guard(batch, irlspos_batch_free);

  if (auto s = irlspos_batch_export(batch, out_dir.c_str()); s != IRLSPOS_OK) return report(s);

  std::printf("%-6s %8s %8s %14s %14s\n", "method", "trials", "failed", "mean_error_m", "p90_error_m");
  for (auto method : {IRLSPOS_METHOD_LS, IRLSPOS_METHOD_IRLS}) {
    irlspos_summary sum{};
    if (auto s = irlspos_batch_summary(batch, method, &sum); s != IRLSPOS_OK) return report(s);
    std::printf("%-6s %8zu %8zu %14.9g %14.9g\n", method == IRLSPOS_METHOD_LS ? "LS" : "IRLS",
                sum.count, sum.failures, sum.mean_error_m, sum.p90_error_m);
  }
  std::printf("results written to %s\n", out_dir.c_str());
  return 0;
}

int validate(const std::string& config) {
  irlspos_scenario* scenario = nullptr;
  if (auto s = open_scenario(config, &scenario); s != IRLSPOS_OK) return report(s);
  irlspos_scenario_info info{};
  const auto s = irlspos_scenario_info_get(scenario, &info);
  irlspos_scenario_free(scenario);
  if (s != IRLSPOS_OK) return report(s);
  std::printf("%s: valid\n", config.c_str());
  print_info(info);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust TDoA positioning benchmark (LS vs. IRLS)"};
  app.set_version_flag("--version", std::string(irlspos_version()));
  app.require_subcommand(1);

  std::string config;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;

  auto* run_cmd = app.add_subcommand("run", "Run a Monte-Carlo batch and export results");
  run_cmd->add_option("config", config, "Config file, or a bundled preset name")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--seed", seed, "Override the root seed");
  run_cmd->add_option("--trials", trials, "Override trials per point of interest");

  auto* presets_cmd = app.add_subcommand("presets", "Bundled scenario presets");
  presets_cmd->require_subcommand(1);
  auto* list_cmd = presets_cmd->add_subcommand("list", "List preset names");
  std::string preset_name;
  auto* show_cmd = presets_cmd->add_subcommand("show", "Print a preset as a config file");
  show_cmd->add_option("name", preset_name, "Preset name")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check a config and print its parameters");
  validate_cmd->add_option("config", config, "Config file, or a bundled preset name")->required();

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return run(config, out_dir, seed, trials);
  if (*list_cmd) {
    for (size_t i = 0; i < irlspos_preset_count(); ++i) std::printf("%s\n", irlspos_preset_name(i));
    return 0;
  }
  if (*show_cmd) {
    const char* text = nullptr;
    const irlspos_status st = irlspos_preset_text(preset_name.c_str(), &text);
    if (st != IRLSPOS_OK) {
      std::fprintf(stderr, "error: %s\n", irlspos_last_error());
      return st;
    }
    std::fputs(text, stdout);
    return 0;
  }
  if (*validate_cmd) return validate(config);
  return 0;
}
