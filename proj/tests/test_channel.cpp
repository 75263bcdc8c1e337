// SPDX-FileCopyrightText: Copyright (c) 2026 The irlspos authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "irlspos/channel.hpp"
#include "irlspos/error.hpp"

using namespace irlspos;

namespace {

BandProfile band_100mhz() { return make_band(3.775e9, 100e6, 30e3, 1e-6, 20.0); }

const std::vector<BaseStation> kCorners{{1, {0, 0}}, {2, {29, 0}}, {3, {29, 25}}, {4, {0, 25}}};

std::vector<LinkState> all_los() {
  return {LinkState::los(1), LinkState::los(2), LinkState::los(3), LinkState::los(4)};
}

}  // namespace

TEST_CASE("toa_noise_std follows the bandwidth/SNR scaling") {
  BandProfile b = band_100mhz();
  b.signal_time_period_s = 1e-5;
  b.snr_linear = 10.0;
  // sqrt(c^2 / ((2 pi 1e8)^2 * 1e-5 * 1e8 * 10)) with c = 299792458
  CHECK(toa_noise_std(b) == doctest::Approx(4.7713e-3).epsilon(1e-4));

  const double base = toa_noise_std(b);
  BandProfile wide = b;
  wide.bandwidth_hz = 4e8;
  CHECK(base / toa_noise_std(wide) == doctest::Approx(8.0).epsilon(1e-12));
  BandProfile loud = b;
  loud.snr_linear = 40.0;
  CHECK(base / toa_noise_std(loud) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("toa_noise_std is strictly decreasing in B, t_s and SNR") {
  BandProfile b = band_100mhz();
  double prev = toa_noise_std(b);
  for (int i = 0; i < 20; ++i) {
    b.bandwidth_hz *= 1.3;
    const double s = toa_noise_std(b);
    CHECK(s < prev);
    prev = s;
  }
  b = band_100mhz();
  prev = toa_noise_std(b);
  for (int i = 0; i < 20; ++i) {
    b.signal_time_period_s *= 1.7;
    b.snr_linear *= 1.1;
    const double s = toa_noise_std(b);
    CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("invalid band parameters are configuration errors") {
  BandProfile b = band_100mhz();
  b.bandwidth_hz = 0.0;
  CHECK_THROWS_AS(toa_noise_std(b), Error);
  b = band_100mhz();
  b.rolloff = 1.5;
  try {
    b.validate();
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::kConfiguration);
    CHECK(std::string(e.what()).find("rolloff") != std::string::npos);
  }
}

TEST_CASE("raised cosine pulse values") {
  BandProfile b = band_100mhz();
  const double T = b.symbol_period_s;
  CHECK(raised_cosine_pulse(0.0, b) == doctest::Approx(1.0 / T).epsilon(1e-15));

  b.rolloff = 0.0;
  CHECK(std::abs(raised_cosine_pulse(T, b)) < 1e-6 / T);

  // Singular point t = T / (2 beta), beta = 0.5: limit against a numerical
  // two-sided approach.
  b.rolloff = 0.5;
  const double ts = T / (2.0 * 0.5);
  const double limit = std::numbers::pi / (4.0 * T) * std::sin(std::numbers::pi * 1.0) /
                       (std::numbers::pi * 1.0);  // sinc(1/(2 beta)) = sinc(1)
  const double at = raised_cosine_pulse(ts, b);
  CHECK(at == doctest::Approx(limit).epsilon(1e-12));
  const double lo = raised_cosine_pulse(ts - 1e-7 * T, b);
  const double hi = raised_cosine_pulse(ts + 1e-7 * T, b);
  CHECK(std::abs(at - 0.5 * (lo + hi)) < 1e-6 / T);

  b.rolloff = 0.25;
  const double ts2 = T / (2.0 * 0.25);
  const double x = 1.0 / (2.0 * 0.25);
  const double sinc2 = std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
  CHECK(raised_cosine_pulse(ts2, b) == doctest::Approx(std::numbers::pi / (4.0 * T) * sinc2));
  const double lo2 = raised_cosine_pulse(ts2 * (1 - 1e-7), b);
  const double hi2 = raised_cosine_pulse(ts2 * (1 + 1e-7), b);
  CHECK(std::abs(raised_cosine_pulse(ts2, b) - 0.5 * (lo2 + hi2)) < 1e-5 / T);
}

TEST_CASE("raised cosine pulse is even") {
  for (double beta : {0.0, 0.1, 0.25, 0.5, 1.0}) {
    BandProfile b = band_100mhz();
    b.rolloff = beta;
    for (int k = 1; k < 400; ++k) {
      const double t = k * 0.0371 * b.symbol_period_s;
      CHECK(raised_cosine_pulse(t, b) == raised_cosine_pulse(-t, b));
    }
  }
}

TEST_CASE("pulse energy matches a numerical integral") {
  BandProfile b = band_100mhz();
  const double T = b.symbol_period_s;
  const double dt = T / 400.0;
  double sum = 0.0;
  for (int k = -400 * 200; k <= 400 * 200; ++k) {
    const double h = raised_cosine_pulse(k * dt, b);
    sum += h * h * dt;
  }
  CHECK(sum == doctest::Approx(pulse_energy(b)).epsilon(1e-4));
}

TEST_CASE("waveform synthesis") {
  const BandProfile b = band_100mhz();
  const double fs = kDefaultOversampling * b.bandwidth_hz;

  SUBCASE("single noiseless component equals the sampled pulse") {
    const std::vector<MultipathComponent> mpcs{{1.0, 0.0}};
    const auto wf = synthesize_received_waveform(mpcs, b, fs, 0.0, 1);
    const double peak = raised_cosine_pulse(0.0, b);
    for (std::size_t k = 0; k < wf.samples.size(); ++k) {
      CHECK(std::abs(wf.samples[k] - raised_cosine_pulse(wf.time_at(k), b)) < 1e-9 * peak);
    }
  }

  SUBCASE("separated components give two equal peaks") {
    const double T = b.symbol_period_s;
    const std::vector<MultipathComponent> mpcs{{1.0, 100 * T}, {1.0, 130 * T}};
    const auto wf = synthesize_received_waveform(mpcs, b, fs, 0.0, 1);
    double p1 = 0, p2 = 0;
    for (std::size_t k = 0; k < wf.samples.size(); ++k) {
      const double t = wf.time_at(k);
      if (std::abs(t - 100 * T) < 0.5 / fs) p1 = wf.samples[k];
      if (std::abs(t - 130 * T) < 0.5 / fs) p2 = wf.samples[k];
    }
    CHECK(p1 == doctest::Approx(1.0 / T).epsilon(1e-6));
    CHECK(p2 == doctest::Approx(1.0 / T).epsilon(1e-6));
  }

  SUBCASE("argmax of the noiseless waveform is within one sample of tau") {
    const double tau = 83.3e-9;
    const std::vector<MultipathComponent> mpcs{{1.0, tau}};
    const auto wf = synthesize_received_waveform(mpcs, b, fs, 0.0, 1);
    std::size_t best = 0;
    for (std::size_t k = 1; k < wf.samples.size(); ++k) {
      if (wf.samples[k] > wf.samples[best]) best = k;
    }
    CHECK(std::abs(wf.time_at(best) - tau) <= 1.0 / fs);
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(synthesize_received_waveform({}, b, fs, 0.0, 1), Error);
    const std::vector<MultipathComponent> mpcs{{1.0, 0.0}};
    CHECK_THROWS_AS(synthesize_received_waveform(mpcs, b, 3.0 * b.bandwidth_hz, 0.0, 1), Error);
  }
}

TEST_CASE("matched-filter ToA estimation") {
  const BandProfile b = band_100mhz();
  const double fs = kDefaultOversampling * b.bandwidth_hz;
  const double T = b.symbol_period_s;

  SUBCASE("noiseless single path lands within half a sample") {
    for (double tau : {0.0, 17.3e-9, 96.71e-9, 1.234e-7}) {
      const std::vector<MultipathComponent> mpcs{{1.0, tau}};
      const auto wf = synthesize_received_waveform(mpcs, b, fs, 0.0, 1);
      CHECK(std::abs(estimate_toa_from_waveform(wf, b) - tau) <= 0.5 / fs);
      CHECK(std::abs(estimate_toa_from_waveform(wf, b, PeakRefinement::kNone) - tau) <= 0.5 / fs);
    }
  }

  SUBCASE("equal paths 10 T apart resolve to the earlier one") {
    const double tau1 = 40 * T;
    const std::vector<MultipathComponent> mpcs{{1.0, tau1}, {1.0, tau1 + 10 * T}};
    const auto wf = synthesize_received_waveform(mpcs, b, fs, 0.0, 1);
    const double est = estimate_toa_from_waveform(wf, b, PeakRefinement::kNone);
    const bool near_either = std::abs(est - tau1) <= 0.5 / fs || std::abs(est - (tau1 + 10 * T)) <= 0.5 / fs;
    CHECK(near_either);
  }

  SUBCASE("exact ties resolve to the earliest sample") {
    SampledWaveform wf;
    wf.sample_rate_hz = fs;
    wf.samples.assign(400, 0.0);
    wf.samples[100] = 1.0;
    wf.samples[300] = 1.0;
    CHECK(estimate_toa_from_waveform(wf, b, PeakRefinement::kNone) == doctest::Approx(wf.time_at(100)));
  }

  SUBCASE("all-zero waveform is degenerate") {
    SampledWaveform wf;
    wf.sample_rate_hz = fs;
    wf.samples.assign(64, 0.0);
    try {
      estimate_toa_from_waveform(wf, b);
      FAIL("expected throw");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::kDegenerateInput);
    }
  }

  SUBCASE("weaker later multipath does not move the first-path estimate") {
    const auto mpcs = multipath_profile(20.0, std::vector<double>{35.0, 52.0});
    const auto wf = synthesize_received_waveform(mpcs, b, fs, 0.0, 1);
    CHECK(std::abs(estimate_toa_from_waveform(wf, b) - 20.0 / kSpeedOfLight) <= 0.5 / fs);
  }
}

TEST_CASE("multipath profile uses free-space amplitude decay") {
  const auto mpcs = multipath_profile(10.0, std::vector<double>{20.0, 40.0});
  REQUIRE(mpcs.size() == 3);
  CHECK(mpcs[0].amplitude == 1.0);
  CHECK(mpcs[1].amplitude == 0.5);
  CHECK(mpcs[2].amplitude == 0.25);
  CHECK(mpcs[2].toa_s == 40.0 / kSpeedOfLight);
  CHECK_THROWS_AS(multipath_profile(10.0, std::vector<double>{5.0}), Error);
}

TEST_CASE("statistical emulation") {
  const BandProfile b = band_100mhz();
  const Position2D ue{7.5, 11.0};

  SUBCASE("noise-free all-LoS reproduces the direct-path delay exactly") {
    EmulationOptions opt;
    opt.noise_std_m = 0.0;
    opt.schedule_period_s = 0.0;
    const auto m = emulate_measurement_set(ue, kCorners, all_los(), b, 5, opt);
    REQUIRE(m.samples.size() == 4);
    for (const auto& bs : kCorners) CHECK(m.sample(bs.id).arrival_time_s == true_first_toa(ue, bs));
  }

  SUBCASE("schedule offsets are added per slot") {
    EmulationOptions opt;
    opt.noise_std_m = 0.0;
    const auto m = emulate_measurement_set(ue, kCorners, all_los(), b, 5, opt);
    CHECK(m.transmission_offset(3, 1) == doctest::Approx(0.02));
    CHECK(m.transmission_offset(1, 4) == doctest::Approx(-0.03));
    for (const auto& bs : kCorners) {
      CHECK(m.propagation_toa(bs.id) == doctest::Approx(true_first_toa(ue, bs)).epsilon(1e-8));
    }
  }

  SUBCASE("NLoS bias is additive") {
    EmulationOptions opt;
    opt.noise_std_m = 0.0;
    opt.schedule_period_s = 0.0;
    auto links = all_los();
    links[2] = LinkState::nlos(3, 10.0);
    const auto m = emulate_measurement_set(ue, kCorners, links, b, 5, opt);
    CHECK(m.sample(3).arrival_time_s - true_first_toa(ue, kCorners[2]) ==
          doctest::Approx(10.0 / kSpeedOfLight).epsilon(1e-12));
    CHECK(m.sample(1).arrival_time_s == true_first_toa(ue, kCorners[0]));
  }

  SUBCASE("same seed, same measurements") {
    const auto a = emulate_measurement_set(ue, kCorners, all_los(), b, 99);
    const auto c = emulate_measurement_set(ue, kCorners, all_los(), b, 99);
    const auto d = emulate_measurement_set(ue, kCorners, all_los(), b, 100);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(a.samples[i].arrival_time_s == c.samples[i].arrival_time_s);
    }
    CHECK(a.samples[0].arrival_time_s != d.samples[0].arrival_time_s);
  }

  SUBCASE("projected 3D adds the height difference") {
    EmulationOptions opt;
    opt.noise_std_m = 0.0;
    opt.schedule_period_s = 0.0;
    opt.projected_3d = HeightOffset{4.0, 1.0};
    const auto m = emulate_measurement_set({0, 0}, kCorners, all_los(), b, 1, opt);
    CHECK(m.sample(1).arrival_time_s == doctest::Approx(3.0 / kSpeedOfLight));
  }

  SUBCASE("configuration errors") {
    const std::vector<LinkState> three{LinkState::los(1), LinkState::los(2), LinkState::los(3)};
    CHECK_THROWS_AS(emulate_measurement_set(ue, kCorners, three, b, 1), Error);
    auto wrong = all_los();
    wrong[3].station_id = 9;
    CHECK_THROWS_AS(emulate_measurement_set(ue, kCorners, wrong, b, 1), Error);
    auto bad_bias = all_los();
    bad_bias[0].nlos_bias_m = 2.0;  // LoS with bias
    CHECK_THROWS_AS(emulate_measurement_set(ue, kCorners, bad_bias, b, 1), Error);
  }
}

TEST_CASE("LoS ranging noise is unbiased and has the configured spread") {
  const BandProfile b = band_100mhz();
  const double sigma = toa_noise_std(b);
  EmulationOptions opt;
  opt.schedule_period_s = 0.0;
  const Position2D ue{12.0, 3.0};
  const int draws = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto m = emulate_measurement_set(ue, kCorners, all_los(), b, 1000 + i, opt);
    const double err = (m.sample(2).arrival_time_s - true_first_toa(ue, kCorners[1])) * kSpeedOfLight;
    sum += err;
    sum_sq += err * err;
  }
  const double mean = sum / draws;
  CHECK(std::abs(mean) < 4.0 * sigma / std::sqrt(double(draws)));
  CHECK(std::sqrt(sum_sq / draws - mean * mean) == doctest::Approx(sigma).epsilon(0.03));
}
