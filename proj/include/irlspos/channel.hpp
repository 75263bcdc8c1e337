// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

// Parametric replacement for a ray-traced channel: every link gets the
// geometric first-path delay, an optional NLoS excess-path bias and
// bandwidth-dependent Gaussian ranging noise. A waveform mode synthesizes the
// raised-cosine multipath signal and picks the matched-filter peak instead.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "irlspos/geometry.hpp"

namespace irlspos {

struct BandProfile {
  double carrier_frequency_hz = 3.775e9;
  double bandwidth_hz = 100e6;
  double subcarrier_spacing_hz = 30e3;
  double signal_time_period_s = 1e-6;  // t_s, integration time of the ranging signal
  double snr_linear = 100.0;
  double symbol_period_s = 5e-9;  // T of the raised-cosine pulse
  double rolloff = 0.25;          // beta

  /// Throws Error(kConfiguration) naming the first violated field.
  void validate() const;
};

/// Band profile with T = 1/(2B), SNR given in dB.
BandProfile make_band(double carrier_frequency_hz, double bandwidth_hz,
                      double subcarrier_spacing_hz, double signal_time_period_s,
                      double snr_db, double rolloff = 0.25);

double db_to_linear(double db) noexcept;

struct MultipathComponent {
  double amplitude = 1.0;
  double toa_s = 0.0;
};

struct LinkState {
  int station_id = 0;
  bool is_los = true;
  double nlos_bias_m = 0.0;

  static LinkState los(int station_id) { return {station_id, true, 0.0}; }
  static LinkState nlos(int station_id, double bias_m) { return {station_id, false, bias_m}; }
};

struct ToaSample {
  int station_id = 0;
  /// Arrival time on the common synchronized clock. Includes the station's
  /// slot offset in the sequential transmission schedule.
  double arrival_time_s = 0.0;
};

/// First-arrival times for one positioning epoch, one sample per station,
/// ordered by ascending station id.
struct MeasurementSet {
  std::int64_t epoch_id = 0;
  std::vector<ToaSample> samples;
  /// Stations transmit one after another in ascending id order, this far apart.
  double schedule_period_s = 0.0;

  const ToaSample& sample(int station_id) const;
  bool contains(int station_id) const noexcept;
  std::size_t slot(int station_id) const;
  /// delta_ne: transmit time of station n minus transmit time of station e.
  double transmission_offset(int n, int e) const;
  /// Arrival time with the station's own slot offset removed.
  double propagation_toa(int station_id) const;
};

/// Ranging noise standard deviation in metres:
/// sigma^2 = c^2 / ((2 pi B)^2 * t_s * B * SNR).
double toa_noise_std(const BandProfile& band);

/// Raised-cosine pulse h(t); the removable singularities at t = +-T/(2 beta)
/// return their closed-form limit.
double raised_cosine_pulse(double t, const BandProfile& band) noexcept;

/// Energy of the raised-cosine pulse, integral of h(t)^2 dt = (1 - beta/4) / T.
double pulse_energy(const BandProfile& band) noexcept;

struct SampledWaveform {
  double start_time_s = 0.0;
  double sample_rate_hz = 0.0;
  std::vector<double> samples;

  double time_at(std::size_t index) const noexcept {
    return start_time_s + static_cast<double>(index) / sample_rate_hz;
  }
};

/// Default waveform-mode oversampling, sample_rate = 8 B.
inline constexpr double kDefaultOversampling = 8.0;
/// Minimum accepted oversampling relative to B.
inline constexpr double kMinimumOversampling = 4.0;

/// Samples sum_j A_j h(t - tau_j) + white Gaussian noise on a grid that covers
/// every component with a margin of `kPulseSpanSymbols` symbols on each side.
SampledWaveform synthesize_received_waveform(std::span<const MultipathComponent> mpcs,
                                             const BandProfile& band, double sample_rate_hz,
                                             double noise_std, std::uint64_t seed);

/// Per-sample noise std that makes a unit-amplitude pulse reach a matched
/// filter output SNR of t_s * B * SNR at the given sample rate.
double waveform_noise_std(const BandProfile& band, double sample_rate_hz);

/// Half-width of the matched-filter template, in symbol periods.
inline constexpr double kPulseSpanSymbols = 8.0;

enum class PeakRefinement { kNone, kParabolic };

/// Time of the largest |matched-filter output|. Ties resolve to the earliest
/// sample; with kParabolic the grid peak is refined by a three-point fit.
double estimate_toa_from_waveform(const SampledWaveform& waveform, const BandProfile& band,
                                  PeakRefinement refinement = PeakRefinement::kParabolic);

/// Optional 3D projection: ranges become sqrt(d^2 + dh^2).
struct HeightOffset {
  double station_height_m = 4.0;
  double ue_height_m = 1.0;
};

struct EmulationOptions {
  double schedule_period_s = 10e-3;
  /// Replaces toa_noise_std(band) when set. 0 disables noise.
  std::optional<double> noise_std_m;
  std::optional<HeightOffset> projected_3d;
};

/// Statistical-mode emulation: per station, arrival = slot offset
/// + range / c + nlos_bias / c + N(0, sigma / c). Deterministic in `rng_seed`.
MeasurementSet emulate_measurement_set(Position2D ue, std::span<const BaseStation> stations,
                                       std::span<const LinkState> links, const BandProfile& band,
                                       std::uint64_t rng_seed, const EmulationOptions& options = {},
                                       std::int64_t epoch_id = 0);

/// Multipath profile for waveform mode: the first path at the (biased) range,
/// further paths with amplitudes d_1 / d_j.
std::vector<MultipathComponent> multipath_profile(double first_path_m,
                                                  std::span<const double> extra_path_lengths_m);

}  // namespace irlspos
