// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/stft.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "gcbf/errors.hpp"
#include "oracles.hpp"

using namespace gcbf;

TEST_CASE("sqrt-Hann endpoints and peak") {
  auto w = make_sqrt_hann(32);
  CHECK(w[0] == doctest::Approx(0.0));
  CHECK(w[16] == doctest::Approx(1.0));
}

TEST_CASE("sqrt-Hann length 4 closed form") {
  auto w = make_sqrt_hann_d(4);
  CHECK(w[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w[3] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("squared window satisfies COLA at 50% overlap") {
  auto w = make_sqrt_hann_d(32);
  for (int n = 0; n < 16; ++n) {
    double s = w[n] * w[n] + w[n + 16] * w[n + 16];
    CHECK(std::abs(s - 1.0) < 1e-12);
  }
}

TEST_CASE("odd or zero window length rejected") {
  CHECK_THROWS_AS(make_sqrt_hann(31), Error);
  CHECK_THROWS_AS(make_sqrt_hann(0), Error);
}

TEST_CASE("empty signal gives empty spectrogram") {
  StftConfig cfg;
  auto spec = stft(std::vector<float>{}, cfg);
  CHECK(spec.frames() == 0);
}

TEST_CASE("DC concentrates in bin 0") {
  StftConfig cfg;
  std::vector<float> x(1600, 1.0f);
  auto spec = stft(x, cfg);
  // The sqrt-Hann analysis window is a half-sine, so a constant segment
  // leaks into higher bins; bin 0 carries the window sum and dominates.
  auto w = make_sqrt_hann_d(32);
  double wsum = 0.0;
  for (double v : w) wsum += v;
  for (int t = 4; t < spec.frames() - 4; ++t) {
    CHECK(std::abs(spec.frame(t)[0]) == doctest::Approx(wsum).epsilon(1e-5));
    for (int f = 1; f < 17; ++f)
      CHECK(std::abs(spec.frame(t)[f]) < std::abs(spec.frame(t)[0]));
  }
}

TEST_CASE("1 kHz tone peaks at bin 2") {
  StftConfig cfg;
  std::vector<float> x(1600);
  for (size_t n = 0; n < x.size(); ++n)
    x[n] = std::sin(2.0 * M_PI * 1000.0 * n / kSampleRate);
  auto spec = stft(x, cfg);
  for (int t = 4; t < spec.frames() - 4; ++t) {
    int best = 0;
    float mag = 0.0f;
    for (int f = 0; f < 17; ++f) {
      float m = std::abs(spec.frame(t)[f]);
      if (m > mag) {
        mag = m;
        best = f;
      }
    }
    CHECK(best == 2);
  }
}

TEST_CASE("stft matches a direct DFT of the windowed segment") {
  StftConfig cfg;
  auto x = oracles::random_signal(160, 77);
  auto spec = stft(x, cfg);
  auto w = make_sqrt_hann_d(32);
  // frame t covers samples [16t - 16, 16t + 16)
  for (int t : {1, 3, 7}) {
    std::vector<double> seg(32);
    for (int k = 0; k < 32; ++k) {
      long idx = 16L * t - 16 + k;
      seg[k] = (idx >= 0 && idx < static_cast<long>(x.size())) ? w[k] * x[idx] : 0.0;
    }
    auto ref = oracles::naive_rdft(seg);
    for (int f = 0; f < 17; ++f) {
      CHECK(std::abs(spec.frame(t)[f].real() - ref[f].real()) < 1e-4);
      CHECK(std::abs(spec.frame(t)[f].imag() - ref[f].imag()) < 1e-4);
    }
  }
}

TEST_CASE("istft rejects wrong bin count") {
  StftConfig cfg;
  Spectrogram s;
  s.bins = 16;
  s.data.resize(32);
  CHECK_THROWS_AS(istft(s, cfg), Error);
}

TEST_CASE("all-zero frames synthesize silence") {
  StftConfig cfg;
  Spectrogram s;
  s.bins = 17;
  s.data.assign(17 * 10, {0.0f, 0.0f});
  auto y = istft(s, cfg);
  for (float v : y) CHECK(v == 0.0f);
}

TEST_CASE("single istft frame with ones in bin 0 is a scaled window segment") {
  StftConfig cfg;
  Spectrogram s;
  s.bins = 17;
  s.data.assign(17, {0.0f, 0.0f});
  s.data[0] = {1.0f, 0.0f};
  auto y = istft(s, cfg);  // one frame -> 16 output samples, times [0, 16)
  REQUIRE(y.size() == 16);
  auto w = make_sqrt_hann_d(32);
  // frame 0 covers times [-16, 16); returned samples are its second half
  for (int n = 0; n < 16; ++n)
    CHECK(y[n] == doctest::Approx(w[n + 16] / 32.0).epsilon(1e-5));
}

TEST_CASE("one-frame round trip is shaped by the squared window") {
  StftConfig cfg;
  std::vector<float> x(16, 1.0f);  // one hop of ones
  auto y = istft(stft(x, cfg), cfg);
  auto w = make_sqrt_hann_d(32);
  REQUIRE(y.size() == 16);
  for (int n = 0; n < 16; ++n)
    CHECK(y[n] == doctest::Approx(w[n + 16] * w[n + 16]).epsilon(1e-5));
}

TEST_CASE("round trip reconstructs random signals") {
  StftConfig cfg;
  for (uint32_t seed : {1u, 2u, 3u}) {
    auto x = oracles::random_signal(16000, seed);  // 1 s
    auto y = istft(stft(x, cfg), cfg);
    REQUIRE(y.size() == x.size());
    // steady state: everything before the final hop
    for (size_t n = 0; n + 16 < x.size(); ++n)
      CHECK(std::abs(y[n] - x[n]) < 1e-6f);
  }
}

TEST_CASE("streaming stft equals batch stft") {
  StftConfig cfg;
  auto x = oracles::random_signal(320, 5);
  auto batch = stft(x, cfg);
  auto fft = std::make_shared<RealFft>(cfg.fft_len);
  StftStream stream(cfg, fft);
  std::vector<std::complex<float>> frame(17);
  for (int t = 0; t < batch.frames(); ++t) {
    stream.push_hop(x.data() + static_cast<size_t>(t) * 16, frame.data());
    for (int f = 0; f < 17; ++f) CHECK(frame[f] == batch.frame(t)[f]);
  }
}

TEST_CASE("streaming istft emits the batch reconstruction delayed by 32 samples") {
  StftConfig cfg;
  auto x = oracles::random_signal(640, 6);
  auto spec = stft(x, cfg);
  auto fft = std::make_shared<RealFft>(cfg.fft_len);
  IstftStream synth(cfg, fft);
  std::vector<float> out(x.size());
  for (int t = 0; t < spec.frames(); ++t)
    synth.push_frame(spec.frame(t), out.data() + static_cast<size_t>(t) * 16);
  // out[n] = x[n - 32] once both stft edges are past
  for (size_t n = 32 + 16; n < out.size(); ++n)
    CHECK(std::abs(out[n] - x[n - 32]) < 1e-6f);
  for (size_t n = 0; n < 32; ++n) CHECK(std::abs(out[n]) < 1e-6f);
}
