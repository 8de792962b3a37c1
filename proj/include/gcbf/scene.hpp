// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gcbf/audio.hpp"

namespace gcbf {

// Simplified spatial scene generation: geometric direct paths (fractional
// delay + 1/r gain per mic), exponentially decaying decorrelated noise tails
// for reverberation, and the SNR/gain/level mixing rules. Good enough for
// end-to-end and oracle-filter testing; deliberately not a perceptual room
// model (no early reflections, no head-related spectral cues).

inline constexpr double kSpeedOfSound = 343.0;  // m/s

struct MicGeometry {
  double ear_separation = 0.18;      // m between left and right mic pairs
  double front_rear_spacing = 0.015; // m between front and rear mic per side

  // x forward, y left; mic order front-L, rear-L, front-R, rear-R.
  std::array<std::array<double, 2>, 4> positions() const {
    const double e = ear_separation / 2.0, s = front_rear_spacing / 2.0;
    return {{{+s, +e}, {-s, +e}, {+s, -e}, {-s, -e}}};
  }
};

struct SourceSpec {
  double azimuth_deg = 0.0;  // 0 = front, +90 = full left
  double distance_m = 1.0;
};

struct SceneSpec {
  SourceSpec speaker1{0.0, 1.0};
  SourceSpec speaker2{90.0, 1.0};
  SourceSpec noise{180.0, 2.0};
  double t60 = 0.3;  // s; [0.1, 1.0], or exactly 0 for the anechoic limit
  uint64_t seed = 0;

  void validate() const;
};

struct ImpulseResponseParts {
  std::array<double, 4> delay_samples{};
  std::array<double, 4> gain{};                // 1/r law; direct kernels have this L2 norm
  std::array<std::vector<float>, 4> direct;    // windowed-sinc fractional delays
  std::array<std::vector<float>, 4> late;      // empty when t60 == 0
};

// Direct part: fractional-delay kernel per mic, energy pinned to the 1/r
// gain. Late part: white noise decaying 60 dB over t60, decorrelated across
// mics, energy set by a fixed direct-to-reverberant rule (+10 dB DRR at
// t60 = 0.1 s, -5 dB at 1.0 s, linear in t60).
ImpulseResponseParts synth_ir(const SourceSpec& src, double t60,
                              const MicGeometry& geom, uint64_t seed);

struct RenderedScene {
  std::array<std::vector<float>, 4> speaker1, speaker2, noise;  // per-mic contributions
  std::array<std::vector<float>, 2> target1, target2;           // front-mic direct-only
  size_t length = 0;
};

// Speech goes through direct+late, noise through late only; targets are the
// front-mic direct-only convolutions. All three sources must have equal
// length; outputs are trimmed to it.
RenderedScene render_scene(const SceneSpec& spec, std::span<const float> s1,
                           std::span<const float> s2, std::span<const float> noise,
                           const MicGeometry& geom = {});

// Ordered key=value scene description.
struct SceneManifest {
  std::vector<std::pair<std::string, std::string>> entries;

  void set(const std::string& key, double value);
  void set(const std::string& key, const std::string& value);
  double get(const std::string& key) const;  // throws if missing
  std::string to_text() const;
  static SceneManifest from_text(const std::string& text);
};

struct ScaledScene {
  AudioBuffer mixture;  // 4 channels
  AudioBuffer target1;  // stereo
  AudioBuffer target2;  // stereo
  SceneManifest manifest;
};

// Mixing rules: speaker2 normalized to 0 dB better-ear front-mic broadband
// SNR against speaker1 then offset by N(0, 4.1^2) dB; speaker1-to-noise
// better-ear SNR set to N(6.2, 4.4^2) dB; the mix scaled to
// N(-26, 5^2) dBFS RMS with the same factor applied to the targets.
// Draw order: speaker2 offset, noise SNR, level.
ScaledScene scale_sources(const RenderedScene& scene, uint64_t seed);

// Same pipeline with explicit values instead of draws.
ScaledScene scale_sources_forced(const RenderedScene& scene, double spk2_offset_db,
                                 double noise_snr_db, double level_dbfs);

}  // namespace gcbf
