// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcbf/errors.hpp"
#include "gcbf/fft.hpp"
#include "gcbf/rng.hpp"
#include "gcbf/stft.hpp"

namespace gcbf {
namespace {

constexpr double kLn1000 = 6.907755278982137;  // 60 dB decay constant

uint64_t derive_seed(uint64_t seed, uint64_t salt) {
  uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  return x;
}

double rms(std::span<const float> x) {
  double e = 0.0;
  for (float v : x) e += static_cast<double>(v) * v;
  return std::sqrt(e / std::max<size_t>(1, x.size()));
}

double db(double ratio) { return 20.0 * std::log10(ratio); }
double from_db(double d) { return std::pow(10.0, d / 20.0); }

// Linear convolution via a double-precision FFT, truncated to out_len.
std::vector<float> fft_convolve(std::span<const float> x, std::span<const float> h,
                                size_t out_len) {
  if (x.empty() || h.empty()) return std::vector<float>(out_len, 0.0f);
  size_t full = x.size() + h.size() - 1;
  size_t n = 2;
  while (n < full) n *= 2;
  RealFftD fft(static_cast<int>(n));
  std::vector<double> a(n, 0.0), b(n, 0.0);
  std::copy(x.begin(), x.end(), a.begin());
  std::copy(h.begin(), h.end(), b.begin());
  std::vector<std::complex<double>> fa(fft.bins()), fb(fft.bins());
  fft.forward(a.data(), fa.data());
  fft.forward(b.data(), fb.data());
  for (int i = 0; i < fft.bins(); ++i) fa[i] *= fb[i];
  fft.inverse(fa.data(), a.data());
  std::vector<float> out(out_len, 0.0f);
  const double norm = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < out_len && i < full; ++i)
    out[i] = static_cast<float>(a[i] * norm);
  return out;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

}  // namespace

void SceneSpec::validate() const {
  auto check_speech = [](const SourceSpec& s, const char* name) {
    if (s.distance_m < 0.75 || s.distance_m > 2.0)
      raise(ErrorCode::kInvalidConfig,
            std::string(name) + " distance must be in [0.75, 2] m");
  };
  check_speech(speaker1, "speaker1");
  check_speech(speaker2, "speaker2");
  if (noise.distance_m < 1.0)
    raise(ErrorCode::kInvalidConfig, "noise distance must be >= 1 m");
  if (t60 != 0.0 && (t60 < 0.1 || t60 > 1.0))
    raise(ErrorCode::kInvalidConfig, "t60 must be in [0.1, 1] s (or 0 for anechoic)");
}

ImpulseResponseParts synth_ir(const SourceSpec& src, double t60,
                              const MicGeometry& geom, uint64_t seed) {
  ImpulseResponseParts out;
  const double az = src.azimuth_deg * M_PI / 180.0;
  const double sx = src.distance_m * std::cos(az);
  const double sy = src.distance_m * std::sin(az);
  const auto mics = geom.positions();

  constexpr int kHalfWidth = 32;
  for (int m = 0; m < 4; ++m) {
    const double dist = std::hypot(sx - mics[m][0], sy - mics[m][1]);
    const double delay = dist / kSpeedOfSound * kSampleRate;
    const double gain = 1.0 / dist;
    out.delay_samples[m] = delay;
    out.gain[m] = gain;

    const int center = static_cast<int>(std::ceil(delay));
    const int lo = std::max(0, center - kHalfWidth);
    const int hi = center + kHalfWidth;
    std::vector<float> kern(hi + 1, 0.0f);
    double energy = 0.0;
    for (int n = lo; n <= hi; ++n) {
      const double u = (n - delay) / kHalfWidth;
      if (std::abs(u) > 1.0) continue;
      const double v = sinc(n - delay) * (0.5 + 0.5 * std::cos(M_PI * u));
      kern[n] = static_cast<float>(v);
      energy += v * v;
    }
    const double scale = gain / std::sqrt(energy);  // pin ||direct||_2 = 1/r
    for (auto& v : kern) v = static_cast<float>(v * scale);
    out.direct[m] = std::move(kern);

    if (t60 > 0.0) {
      const int start = center + 1;
      const int tail_len = static_cast<int>(std::ceil(t60 * kSampleRate));
      std::vector<float> tail(start + tail_len, 0.0f);
      Rng rng(derive_seed(seed, static_cast<uint64_t>(m)));
      double tail_energy = 0.0;
      for (int i = 0; i < tail_len; ++i) {
        const double env = std::exp(-kLn1000 * i / (t60 * kSampleRate));
        const double v = rng.normal(0.0, 1.0) * env;
        tail[start + i] = static_cast<float>(v);
        tail_energy += v * v;
      }
      // Direct-to-reverberant ratio: +10 dB at t60 = 0.1 s, -5 dB at 1.0 s.
      const double drr_db = 10.0 - 15.0 * (t60 - 0.1) / 0.9;
      const double target = gain * gain / std::pow(10.0, drr_db / 10.0);
      const double s = std::sqrt(target / tail_energy);
      for (auto& v : tail) v = static_cast<float>(v * s);
      out.late[m] = std::move(tail);
    }
  }
  return out;
}

RenderedScene render_scene(const SceneSpec& spec, std::span<const float> s1,
                           std::span<const float> s2, std::span<const float> noise,
                           const MicGeometry& geom) {
  spec.validate();
  if (s1.size() != s2.size() || s1.size() != noise.size())
    raise(ErrorCode::kShapeMismatch, "render_scene: source lengths differ");
  if (s1.empty()) raise(ErrorCode::kInvalidConfig, "render_scene: empty sources");

  const auto ir1 = synth_ir(spec.speaker1, spec.t60, geom, derive_seed(spec.seed, 101));
  const auto ir2 = synth_ir(spec.speaker2, spec.t60, geom, derive_seed(spec.seed, 202));
  const auto irn = synth_ir(spec.noise, spec.t60, geom, derive_seed(spec.seed, 303));

  RenderedScene out;
  out.length = s1.size();

  auto full_ir = [](const ImpulseResponseParts& ir, int m) {
    std::vector<float> h(std::max(ir.direct[m].size(), ir.late[m].size()), 0.0f);
    for (size_t i = 0; i < ir.direct[m].size(); ++i) h[i] += ir.direct[m][i];
    for (size_t i = 0; i < ir.late[m].size(); ++i) h[i] += ir.late[m][i];
    return h;
  };

  for (int m = 0; m < 4; ++m) {
    out.speaker1[m] = fft_convolve(s1, full_ir(ir1, m), out.length);
    out.speaker2[m] = fft_convolve(s2, full_ir(ir2, m), out.length);
    out.noise[m] = spec.t60 > 0.0 ? fft_convolve(noise, irn.late[m], out.length)
                                  : std::vector<float>(out.length, 0.0f);
  }
  // Targets: direct-only at the front mics (0 = FL, 2 = FR).
  out.target1[0] = fft_convolve(s1, ir1.direct[0], out.length);
  out.target1[1] = fft_convolve(s1, ir1.direct[2], out.length);
  out.target2[0] = fft_convolve(s2, ir2.direct[0], out.length);
  out.target2[1] = fft_convolve(s2, ir2.direct[2], out.length);
  return out;
}

void SceneManifest::set(const std::string& key, double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  entries.emplace_back(key, buf);
}
void SceneManifest::set(const std::string& key, const std::string& value) {
  entries.emplace_back(key, value);
}
double SceneManifest::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return std::stod(v);
  raise(ErrorCode::kBadFormat, "manifest: missing key " + key);
}
std::string SceneManifest::to_text() const {
  std::string out;
  for (const auto& [k, v] : entries) out += k + "=" + v + "\n";
  return out;
}
SceneManifest SceneManifest::from_text(const std::string& text) {
  SceneManifest m;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      raise(ErrorCode::kBadFormat, "manifest: malformed line: " + line);
    m.entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return m;
}

namespace {

double better_ear_snr_db(const std::array<std::vector<float>, 4>& sig,
                         const std::array<std::vector<float>, 4>& ref) {
  // max over the front mics (0 = FL, 2 = FR) of sig-to-ref RMS ratio, in dB
  double best = -1e300;
  for (int e : {0, 2}) {
    double rs = rms(sig[e]), rr = rms(ref[e]);
    if (rs == 0.0 || rr == 0.0)
      raise(ErrorCode::kInvalidConfig, "scale_sources: silent source on a front mic");
    best = std::max(best, db(rs / rr));
  }
  return best;
}

}  // namespace

ScaledScene scale_sources_forced(const RenderedScene& scene, double spk2_offset_db,
                                 double noise_snr_db, double level_dbfs) {
  // speaker2: normalize to 0 dB better-ear SNR against speaker1, then offset.
  const double g2 = from_db(spk2_offset_db - better_ear_snr_db(scene.speaker2, scene.speaker1));
  // noise: speaker1-to-noise better-ear SNR set to noise_snr_db.
  const double cur_snr = better_ear_snr_db(scene.speaker1, scene.noise);
  const double gn = from_db(cur_snr - noise_snr_db);

  const size_t n = scene.length;
  ScaledScene out;
  out.mixture.sample_rate = kSampleRate;
  out.mixture.channels.assign(4, std::vector<float>(n));
  double energy = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (size_t i = 0; i < n; ++i) {
      double v = scene.speaker1[m][i] + g2 * scene.speaker2[m][i] + gn * scene.noise[m][i];
      out.mixture.channels[m][i] = static_cast<float>(v);
      energy += v * v;
    }
  }
  const double mix_rms = std::sqrt(energy / (4.0 * n));
  const double lf = from_db(level_dbfs) / mix_rms;

  for (auto& ch : out.mixture.channels)
    for (auto& v : ch) v = static_cast<float>(v * lf);

  auto scale_target = [&](const std::array<std::vector<float>, 2>& src, double g) {
    AudioBuffer t;
    t.sample_rate = kSampleRate;
    t.channels.assign(2, std::vector<float>(n));
    for (int c = 0; c < 2; ++c)
      for (size_t i = 0; i < n; ++i)
        t.channels[c][i] = static_cast<float>(src[c][i] * g);
    return t;
  };
  out.target1 = scale_target(scene.target1, lf);
  out.target2 = scale_target(scene.target2, g2 * lf);

  // Re-measure from the scaled contributions for the manifest.
  std::array<std::vector<float>, 4> s1s, s2s, nss;
  for (int m = 0; m < 4; ++m) {
    s1s[m].resize(n);
    s2s[m].resize(n);
    nss[m].resize(n);
    for (size_t i = 0; i < n; ++i) {
      s1s[m][i] = static_cast<float>(scene.speaker1[m][i] * lf);
      s2s[m][i] = static_cast<float>(scene.speaker2[m][i] * g2 * lf);
      nss[m][i] = static_cast<float>(scene.noise[m][i] * gn * lf);
    }
  }
  double er = 0.0;
  for (const auto& ch : out.mixture.channels)
    for (float v : ch) er += static_cast<double>(v) * v;

  out.manifest.set("spk2_offset_db", spk2_offset_db);
  out.manifest.set("noise_snr_db", noise_snr_db);
  out.manifest.set("level_dbfs", level_dbfs);
  out.manifest.set("measured_spk2_be_snr_db", better_ear_snr_db(s2s, s1s));
  out.manifest.set("measured_noise_be_snr_db", better_ear_snr_db(s1s, nss));
  out.manifest.set("measured_level_dbfs", db(std::sqrt(er / (4.0 * n))));
  return out;
}

ScaledScene scale_sources(const RenderedScene& scene, uint64_t seed) {
  Rng rng(derive_seed(seed, 404));
  const double spk2 = rng.normal(0.0, 4.1);
  const double snr = rng.normal(6.2, 4.4);
  const double level = rng.normal(-26.0, 5.0);
  ScaledScene out = scale_sources_forced(scene, spk2, snr, level);
  SceneManifest m;
  m.set("seed", static_cast<double>(seed));
  for (auto& e : out.manifest.entries) m.entries.push_back(std::move(e));
  out.manifest = std::move(m);
  return out;
}

}  // namespace gcbf
