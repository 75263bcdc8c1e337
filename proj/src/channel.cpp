// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include "irlspos/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "irlspos/error.hpp"

namespace irlspos {
namespace {

using std::numbers::pi;

double sinc(double x) noexcept {
  if (x == 0.0) return 1.0;
  return std::sin(pi * x) / (pi * x);
}

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCategory::kConfiguration,
                std::string("band.") + field + " must be a finite positive number");
  }
}

}  // namespace

void BandProfile::validate() const {
  require_positive(carrier_frequency_hz, "carrier_frequency_hz");
  require_positive(bandwidth_hz, "bandwidth_hz");
  require_positive(subcarrier_spacing_hz, "subcarrier_spacing_hz");
  require_positive(signal_time_period_s, "signal_time_period_s");
  require_positive(snr_linear, "snr");
  require_positive(symbol_period_s, "symbol_period_s");
  if (!(rolloff >= 0.0 && rolloff <= 1.0)) {
    throw Error(ErrorCategory::kConfiguration, "band.rolloff must lie in [0, 1]");
  }
}

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

BandProfile make_band(double carrier_frequency_hz, double bandwidth_hz,
                      double subcarrier_spacing_hz, double signal_time_period_s, double snr_db,
                      double rolloff) {
  BandProfile band;
  band.carrier_frequency_hz = carrier_frequency_hz;
  band.bandwidth_hz = bandwidth_hz;
  band.subcarrier_spacing_hz = subcarrier_spacing_hz;
  band.signal_time_period_s = signal_time_period_s;
  band.snr_linear = db_to_linear(snr_db);
  band.symbol_period_s = 1.0 / (2.0 * bandwidth_hz);
  band.rolloff = rolloff;
  return band;
}

const ToaSample& MeasurementSet::sample(int station_id) const {
  auto it = std::find_if(samples.begin(), samples.end(),
                         [station_id](const auto& s) { return s.station_id == station_id; });
  if (it == samples.end()) {
    throw Error(ErrorCategory::kInvalidArgument,
                "no measurement for station " + std::to_string(station_id));
  }
  return *it;
}

bool MeasurementSet::contains(int station_id) const noexcept {
  return std::any_of(samples.begin(), samples.end(),
                     [station_id](const auto& s) { return s.station_id == station_id; });
}

std::size_t MeasurementSet::slot(int station_id) const {
  // Samples are kept in ascending id order, which is also the transmit order.
  const auto& s = sample(station_id);
  return static_cast<std::size_t>(&s - samples.data());
}

double MeasurementSet::transmission_offset(int n, int e) const {
  return (static_cast<double>(slot(n)) - static_cast<double>(slot(e))) * schedule_period_s;
}

double MeasurementSet::propagation_toa(int station_id) const {
  return sample(station_id).arrival_time_s -
         static_cast<double>(slot(station_id)) * schedule_period_s;
}

double toa_noise_std(const BandProfile& band) {
  band.validate();
  const double omega = 2.0 * pi * band.bandwidth_hz;
  const double variance = (kSpeedOfLight * kSpeedOfLight) /
                          (omega * omega * band.signal_time_period_s * band.bandwidth_hz *
                           band.snr_linear);
  return std::sqrt(variance);
}

double raised_cosine_pulse(double t, const BandProfile& band) noexcept {
  const double T = band.symbol_period_s;
  const double beta = band.rolloff;
  const double x = t / T;
  if (beta > 0.0) {
    const double edge = 2.0 * beta * std::abs(x);
    if (std::abs(edge - 1.0) < 1e-9) {
      return pi / (4.0 * T) * sinc(1.0 / (2.0 * beta));
    }
  }
  const double denom = 1.0 - (2.0 * beta * x) * (2.0 * beta * x);
  return sinc(x) * std::cos(pi * beta * x) / denom / T;
}

double pulse_energy(const BandProfile& band) noexcept {
  return (1.0 - band.rolloff / 4.0) / band.symbol_period_s;
}

double waveform_noise_std(const BandProfile& band, double sample_rate_hz) {
  band.validate();
  const double gain = band.signal_time_period_s * band.bandwidth_hz * band.snr_linear;
  return std::sqrt(pulse_energy(band) * sample_rate_hz / gain);
}

SampledWaveform synthesize_received_waveform(std::span<const MultipathComponent> mpcs,
                                             const BandProfile& band, double sample_rate_hz,
                                             double noise_std, std::uint64_t seed) {
  band.validate();
  if (mpcs.empty()) {
    throw Error(ErrorCategory::kInvalidArgument, "link has no multipath components");
  }
  if (!(sample_rate_hz >= kMinimumOversampling * band.bandwidth_hz)) {
    throw Error(ErrorCategory::kInvalidArgument, "sample rate must be at least 4 B");
  }
  if (!(noise_std >= 0.0)) {
    throw Error(ErrorCategory::kInvalidArgument, "noise std must be non-negative");
  }
  auto [first, last] = std::minmax_element(
      mpcs.begin(), mpcs.end(), [](const auto& a, const auto& b) { return a.toa_s < b.toa_s; });
  const double margin = kPulseSpanSymbols * band.symbol_period_s;
  const auto k0 = static_cast<std::int64_t>(std::floor((first->toa_s - margin) * sample_rate_hz));
  const auto k1 = static_cast<std::int64_t>(std::ceil((last->toa_s + margin) * sample_rate_hz));

  SampledWaveform wf;
  wf.sample_rate_hz = sample_rate_hz;
  wf.start_time_s = static_cast<double>(k0) / sample_rate_hz;
  wf.samples.resize(static_cast<std::size_t>(k1 - k0 + 1), 0.0);

  for (std::size_t k = 0; k < wf.samples.size(); ++k) {
    const double t = static_cast<double>(k0 + static_cast<std::int64_t>(k)) / sample_rate_hz;
    double v = 0.0;
    for (const auto& mpc : mpcs) v += mpc.amplitude * raised_cosine_pulse(t - mpc.toa_s, band);
    wf.samples[k] = v;
  }
  if (noise_std > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, noise_std);
    for (auto& v : wf.samples) v += noise(rng);
  }
  return wf;
}

double estimate_toa_from_waveform(const SampledWaveform& waveform, const BandProfile& band,
                                  PeakRefinement refinement) {
  const auto& w = waveform.samples;
  if (w.empty()) throw Error(ErrorCategory::kInvalidArgument, "empty waveform");
  if (!(waveform.sample_rate_hz > 0.0)) {
    throw Error(ErrorCategory::kInvalidArgument, "waveform sample rate must be positive");
  }
  if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorCategory::kDegenerateInput, "all-zero waveform has no peak");
  }

  const double fs = waveform.sample_rate_hz;
  const auto half = static_cast<std::ptrdiff_t>(std::ceil(kPulseSpanSymbols * band.symbol_period_s * fs));
  std::vector<double> tmpl(static_cast<std::size_t>(2 * half + 1));
  for (std::ptrdiff_t j = -half; j <= half; ++j) {
    tmpl[static_cast<std::size_t>(j + half)] = raised_cosine_pulse(static_cast<double>(j) / fs, band);
  }

  const auto n = static_cast<std::ptrdiff_t>(w.size());
  std::vector<double> mf(w.size());
  for (std::ptrdiff_t m = 0; m < n; ++m) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(-half, -m);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(half, n - 1 - m);
    double acc = 0.0;
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      acc += w[static_cast<std::size_t>(m + j)] * tmpl[static_cast<std::size_t>(j + half)];
    }
    mf[static_cast<std::size_t>(m)] = std::abs(acc);
  }

  std::size_t peak = 0;
  for (std::size_t i = 1; i < mf.size(); ++i) {
    if (mf[i] > mf[peak]) peak = i;
  }
  if (mf[peak] == 0.0) {
    throw Error(ErrorCategory::kDegenerateInput, "matched-filter output is identically zero");
  }

  double offset = 0.0;
  if (refinement == PeakRefinement::kParabolic && peak > 0 && peak + 1 < mf.size()) {
    const double a = mf[peak - 1];
    const double b = mf[peak];
    const double c = mf[peak + 1];
    const double curvature = a - 2.0 * b + c;
    if (curvature < 0.0) offset = std::clamp(0.5 * (a - c) / curvature, -0.5, 0.5);
  }
  return waveform.time_at(peak) + offset / fs;
}

std::vector<MultipathComponent> multipath_profile(double first_path_m,
                                                  std::span<const double> extra_path_lengths_m) {
  if (!(first_path_m > 0.0)) {
    throw Error(ErrorCategory::kInvalidArgument, "first path length must be positive");
  }
  std::vector<MultipathComponent> mpcs;
  mpcs.push_back({1.0, first_path_m / kSpeedOfLight});
  for (double len : extra_path_lengths_m) {
    if (!(len >= first_path_m)) {
      throw Error(ErrorCategory::kInvalidArgument,
                  "multipath component shorter than the first-arriving path");
    }
    mpcs.push_back({first_path_m / len, len / kSpeedOfLight});
  }
  return mpcs;
}

MeasurementSet emulate_measurement_set(Position2D ue, std::span<const BaseStation> stations,
                                       std::span<const LinkState> links, const BandProfile& band,
                                       std::uint64_t rng_seed, const EmulationOptions& options,
                                       std::int64_t epoch_id) {
  if (links.size() != stations.size()) {
    throw Error(ErrorCategory::kConfiguration,
                "expected one link state per station (" + std::to_string(stations.size()) +
                    " stations, " + std::to_string(links.size()) + " links)");
  }
  if (!is_finite(ue)) throw Error(ErrorCategory::kInvalidArgument, "UE position is not finite");
  if (!(options.schedule_period_s >= 0.0)) {
    throw Error(ErrorCategory::kConfiguration, "schedule period must be non-negative");
  }
  const double sigma = options.noise_std_m ? *options.noise_std_m : toa_noise_std(band);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCategory::kConfiguration, "noise std must be finite and non-negative");
  }

  const auto ordered = sorted_by_id(stations);
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i].id == ordered[i - 1].id) {
      throw Error(ErrorCategory::kConfiguration,
                  "duplicate station id " + std::to_string(ordered[i].id));
    }
  }

  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> standard_normal(0.0, 1.0);

  MeasurementSet m;
  m.epoch_id = epoch_id;
  m.schedule_period_s = options.schedule_period_s;
  m.samples.reserve(ordered.size());
  for (std::size_t slot = 0; slot < ordered.size(); ++slot) {
    const auto& bs = ordered[slot];
    auto link = std::find_if(links.begin(), links.end(),
                             [&bs](const auto& l) { return l.station_id == bs.id; });
    if (link == links.end()) {
      throw Error(ErrorCategory::kConfiguration,
                  "no link state for station " + std::to_string(bs.id));
    }
    if (link->is_los ? link->nlos_bias_m != 0.0 : !(link->nlos_bias_m > 0.0)) {
      throw Error(ErrorCategory::kConfiguration,
                  "link " + std::to_string(bs.id) +
                      ": NLoS bias must be positive for NLoS links and zero for LoS links");
    }
    const double z = standard_normal(rng);  // always drawn so streams stay aligned

    double toa = true_first_toa(ue, bs);
    if (options.projected_3d) {
      const double dh = options.projected_3d->station_height_m - options.projected_3d->ue_height_m;
      toa = std::hypot(euclidean_distance(ue, bs.position), dh) / kSpeedOfLight;
    }
    const double excess_m = link->nlos_bias_m + sigma * z;
    m.samples.push_back(
        {bs.id, static_cast<double>(slot) * options.schedule_period_s + toa + excess_m / kSpeedOfLight});
  }
  return m;
}

}  // namespace irlspos
