// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/scene.hpp"

#include <cmath>

#include "doctest.h"
#include "gcbf/errors.hpp"
#include "gcbf/metrics.hpp"
#include "oracles.hpp"

using namespace gcbf;

namespace {

double rms_of(const std::vector<float>& v) {
  double e = 0.0;
  for (float x : v) e += static_cast<double>(x) * x;
  return std::sqrt(e / v.size());
}

SceneSpec basic_spec(double t60, uint64_t seed = 7) {
  SceneSpec s;
  s.speaker1 = {30.0, 1.0};
  s.speaker2 = {-50.0, 1.5};
  s.noise = {160.0, 2.0};
  s.t60 = t60;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("spec validation enforces the documented ranges") {
  SceneSpec s = basic_spec(0.3);
  CHECK_NOTHROW(s.validate());
  s.speaker1.distance_m = 0.5;
  CHECK_THROWS_AS(s.validate(), Error);
  s = basic_spec(0.05);
  CHECK_THROWS_AS(s.validate(), Error);
  s = basic_spec(0.0);  // anechoic limit allowed
  CHECK_NOTHROW(s.validate());
  s = basic_spec(0.3);
  s.noise.distance_m = 0.8;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("full-left source: left-ear lead of about 8.4 samples") {
  SourceSpec src{90.0, 1.0};
  auto ir = synth_ir(src, 0.0, {}, 0);
  // left mics (0, 1) closer than right mics (2, 3)
  double itd_front = ir.delay_samples[2] - ir.delay_samples[0];
  double expected = 0.18 * std::sin(M_PI / 2.0) / kSpeedOfSound * 16000.0;  // 8.396
  CHECK(itd_front == doctest::Approx(expected).epsilon(0.01));
  CHECK(itd_front == doctest::Approx(8.4).epsilon(0.01));
}

TEST_CASE("frontal source: symmetric delays") {
  SourceSpec src{0.0, 1.3};
  auto ir = synth_ir(src, 0.0, {}, 0);
  CHECK(ir.delay_samples[0] == doctest::Approx(ir.delay_samples[2]).epsilon(1e-12));
  CHECK(ir.delay_samples[1] == doctest::Approx(ir.delay_samples[3]).epsilon(1e-12));
  // front mics lead the rear mics
  CHECK(ir.delay_samples[0] < ir.delay_samples[1]);
}

TEST_CASE("interaural delay difference is monotone in sin(azimuth)") {
  double prev = -1e9;
  for (double az : {-90.0, -45.0, -10.0, 0.0, 10.0, 45.0, 90.0}) {
    auto ir = synth_ir({az, 1.2}, 0.0, {}, 0);
    double itd = ir.delay_samples[2] - ir.delay_samples[0];  // right minus left
    CHECK(itd > prev);
    prev = itd;
  }
}

TEST_CASE("direct kernel energy follows the 1/r law") {
  for (double r : {0.8, 1.0, 1.7}) {
    auto ir = synth_ir({25.0, r}, 0.0, {}, 0);
    for (int m = 0; m < 4; ++m) {
      double e = 0.0;
      for (float v : ir.direct[m]) e += static_cast<double>(v) * v;
      CHECK(std::sqrt(e) == doctest::Approx(ir.gain[m]).epsilon(1e-6));
      CHECK(ir.gain[m] == doctest::Approx(1.0 / (r)).epsilon(0.15));  // near 1/r
    }
  }
}

TEST_CASE("late tail decays 60 dB over t60") {
  for (double t60 : {0.25, 0.5}) {
    auto ir = synth_ir({40.0, 1.0}, t60, {}, 3);
    const auto& tail = ir.late[0];
    REQUIRE_FALSE(tail.empty());
    // fit the envelope decay over the tail via energy in early/late windows
    int start = 0;
    while (start < static_cast<int>(tail.size()) && tail[start] == 0.0f) ++start;
    int len = static_cast<int>(tail.size()) - start;
    int win = len / 10;
    double e0 = 0.0, e1 = 0.0;
    for (int i = 0; i < win; ++i) {
      e0 += static_cast<double>(tail[start + i]) * tail[start + i];
      e1 += static_cast<double>(tail[start + len - win + i]) * tail[start + len - win + i];
    }
    // expected drop between window centers: 60 dB * (len - win)/len
    double expected_db = 60.0 * static_cast<double>(len - win) / len;
    double got_db = 10.0 * std::log10(e0 / e1);
    CHECK(got_db == doctest::Approx(expected_db).epsilon(0.05));
  }
}

TEST_CASE("anechoic render is the sum of delayed attenuated sources") {
  SceneSpec spec = basic_spec(0.0);
  auto s1 = oracles::random_signal(4000, 1);
  auto s2 = oracles::random_signal(4000, 2);
  std::vector<float> silence(4000, 0.0f);
  auto scene = render_scene(spec, s1, s2, silence);

  CHECK(scene.length == 4000);
  for (int m = 0; m < 4; ++m) {
    CHECK(rms_of(scene.noise[m]) == 0.0);
    CHECK(rms_of(scene.speaker1[m]) > 0.0);
  }

  // For a bandlimited source the direct path is the exact fractional delay:
  // compare against the analytically delayed sinusoids.
  std::vector<float> tone(4000);
  const double freqs[3] = {300.0, 700.0, 1500.0};
  for (int n = 0; n < 4000; ++n) {
    double v = 0.0;
    for (double f : freqs) v += std::sin(2.0 * M_PI * f * n / 16000.0);
    tone[n] = static_cast<float>(v / 3.0);
  }
  auto tone_scene = render_scene(spec, tone, s2, silence);
  auto ir = synth_ir(spec.speaker1, 0.0, {}, 0);
  const double tau = ir.delay_samples[0];
  const double g = ir.gain[0];
  double dot = 0.0, ee = 0.0, rr = 0.0;
  for (int n = 500; n < 3500; ++n) {
    double want = 0.0;
    for (double f : freqs) want += std::sin(2.0 * M_PI * f * (n - tau) / 16000.0);
    want *= g / 3.0;
    double got = tone_scene.speaker1[0][n];
    dot += got * want;
    ee += got * got;
    rr += want * want;
  }
  // Shape: the rendered path is the exact fractional delay up to a small
  // scalar (energy-normalized kernel vs ideal-delay passband gain).
  double scale = dot / rr;
  CHECK(scale == doctest::Approx(1.0).epsilon(0.02));
  double resid = ee - 2.0 * scale * dot + scale * scale * rr;
  CHECK(resid / ee < 1e-6);
}

TEST_CASE("render shapes: 4 mixture channels, 2 per target") {
  SceneSpec spec = basic_spec(0.2);
  auto s1 = oracles::random_signal(3200, 3);
  auto s2 = oracles::random_signal(3200, 4);
  auto nz = oracles::random_signal(3200, 5);
  auto scene = render_scene(spec, s1, s2, nz);
  auto scaled = scale_sources(scene, 11);
  CHECK(scaled.mixture.num_channels() == 4);
  CHECK(scaled.target1.num_channels() == 2);
  CHECK(scaled.target2.num_channels() == 2);
  CHECK(scaled.mixture.num_samples() == 3200);
}

TEST_CASE("forced draws are re-measured within 0.1 dB") {
  SceneSpec spec = basic_spec(0.3);
  auto s1 = oracles::random_signal(8000, 6);
  auto s2 = oracles::random_signal(8000, 7);
  auto nz = oracles::random_signal(8000, 8);
  auto scene = render_scene(spec, s1, s2, nz);
  auto scaled = scale_sources_forced(scene, 0.0, 6.2, -26.0);
  CHECK(scaled.manifest.get("measured_spk2_be_snr_db") == doctest::Approx(0.0).epsilon(0.1));
  CHECK(scaled.manifest.get("measured_noise_be_snr_db") == doctest::Approx(6.2).epsilon(0.1));
  CHECK(scaled.manifest.get("measured_level_dbfs") == doctest::Approx(-26.0).epsilon(0.1));
}

TEST_CASE("identical speakers at equal placement land at 0 dB better-ear offset") {
  SceneSpec spec = basic_spec(0.2);
  spec.speaker2 = spec.speaker1;
  auto s1 = oracles::random_signal(6400, 9);
  std::vector<float> nz = oracles::random_signal(6400, 10);
  auto scene = render_scene(spec, s1, s1, nz);
  auto scaled = scale_sources_forced(scene, 0.0, 6.2, -26.0);
  CHECK(scaled.manifest.get("measured_spk2_be_snr_db") == doctest::Approx(0.0).epsilon(0.01));
}

TEST_CASE("same seed renders bit-identical scenes") {
  SceneSpec spec = basic_spec(0.4, 123);
  auto s1 = oracles::random_signal(3200, 11);
  auto s2 = oracles::random_signal(3200, 12);
  auto nz = oracles::random_signal(3200, 13);
  auto a = scale_sources(render_scene(spec, s1, s2, nz), spec.seed);
  auto b = scale_sources(render_scene(spec, s1, s2, nz), spec.seed);
  for (int c = 0; c < 4; ++c)
    for (size_t i = 0; i < a.mixture.num_samples(); ++i)
      CHECK(a.mixture.channels[c][i] == b.mixture.channels[c][i]);
  CHECK(a.manifest.to_text() == b.manifest.to_text());
}

TEST_CASE("level scaling preserves the target-to-mixture ratio") {
  SceneSpec spec = basic_spec(0.2);
  auto s1 = oracles::random_signal(4800, 14);
  auto s2 = oracles::random_signal(4800, 15);
  auto nz = oracles::random_signal(4800, 16);
  auto scene = render_scene(spec, s1, s2, nz);
  auto lo = scale_sources_forced(scene, 1.0, 6.0, -36.0);
  auto hi = scale_sources_forced(scene, 1.0, 6.0, -16.0);
  double ratio_lo = rms_of(lo.target1.channels[0]) / rms_of(lo.mixture.channels[0]);
  double ratio_hi = rms_of(hi.target1.channels[0]) / rms_of(hi.mixture.channels[0]);
  CHECK(ratio_lo == doctest::Approx(ratio_hi).epsilon(1e-6));
}

TEST_CASE("manifest round trip") {
  SceneManifest m;
  m.set("a", 1.5);
  m.set("b", "text");
  m.set("c", -26.125);
  auto n = SceneManifest::from_text(m.to_text());
  CHECK(n.get("a") == doctest::Approx(1.5));
  CHECK(n.get("c") == doctest::Approx(-26.125));
  CHECK_THROWS_AS(n.get("missing"), Error);
}

TEST_CASE("single active speaker separates cleanly in a dry scene") {
  // With speaker2 and noise silent pre-mixing (tiny amplitude), the front-L
  // mixture aligned to the target recovers high SI-SDR only because the tail
  // energy is zero; with strong reverb the same alignment scores low.
  auto s1 = oracles::random_signal(8000, 17);
  std::vector<float> quiet(8000, 0.0f);
  for (size_t i = 0; i < quiet.size(); ++i) quiet[i] = 1e-6f;

  SceneSpec dry = basic_spec(0.0);
  auto scene_dry = render_scene(dry, s1, quiet, quiet);
  SceneSpec wet = basic_spec(1.0);
  auto scene_wet = render_scene(wet, s1, quiet, quiet);

  auto score = [&](const RenderedScene& sc) {
    std::vector<float> mix = sc.speaker1[0];  // front-L, speaker1 only
    return si_sdr(mix, sc.target1[0]);
  };
  double d = score(scene_dry), w = score(scene_wet);
  CHECK(d > 50.0);  // direct-only equals the target here
  CHECK(w < 15.0);  // reverberant tail hurts
  CHECK(d - w > 20.0);
}
