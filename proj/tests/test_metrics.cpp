// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/metrics.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "gcbf/errors.hpp"
#include "oracles.hpp"

using namespace gcbf;

TEST_CASE("perfect estimate hits the cap") {
  auto r = oracles::random_signal(1000, 1);
  CHECK(si_sdr(r, r) == kSiSdrCapDb);
}

TEST_CASE("scaling the estimate does not change the score") {
  auto r = oracles::random_signal(1000, 2);
  std::vector<float> e2(r.size()), e05(r.size()), en(r.size());
  for (size_t i = 0; i < r.size(); ++i) {
    e2[i] = 2.0f * r[i];
    e05[i] = 0.5f * r[i];
    en[i] = -1.0f * r[i];
  }
  CHECK(si_sdr(e2, r) == kSiSdrCapDb);
  CHECK(si_sdr(e05, r) == kSiSdrCapDb);
  CHECK(si_sdr(en, r) == kSiSdrCapDb);

  // with noise: invariance within float rounding
  auto noise = oracles::random_signal(1000, 3, 0.1f);
  std::vector<float> a(r.size()), b(r.size());
  for (size_t i = 0; i < r.size(); ++i) {
    a[i] = r[i] + noise[i];
    b[i] = 3.0f * (r[i] + noise[i]);
  }
  CHECK(si_sdr(a, r) == doctest::Approx(si_sdr(b, r)).epsilon(1e-6));
}

TEST_CASE("orthogonal noise of equal norm gives 0 dB") {
  // ref = first half ones; noise = second half ones: exactly orthogonal,
  // equal norm, so projection = ref and residual = noise.
  std::vector<float> ref(1000, 0.0f), est(1000, 0.0f);
  for (size_t i = 0; i < 500; ++i) ref[i] = 1.0f;
  for (size_t i = 0; i < 1000; ++i) est[i] = ref[i] + (i >= 500 ? 1.0f : 0.0f);
  CHECK(si_sdr(est, ref) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("known ratio: noise at half amplitude") {
  std::vector<float> ref(800, 0.0f), est(800, 0.0f);
  for (size_t i = 0; i < 400; ++i) ref[i] = 1.0f;
  for (size_t i = 0; i < 800; ++i) est[i] = ref[i] + (i >= 400 ? 0.5f : 0.0f);
  // energy ratio 400 / (400*0.25) = 4 -> 6.02 dB
  CHECK(si_sdr(est, ref) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-9));
}

TEST_CASE("zero reference is an error") {
  std::vector<float> ref(100, 0.0f);
  auto est = oracles::random_signal(100, 4);
  CHECK_THROWS_AS(si_sdr(est, ref), Error);
}

TEST_CASE("length mismatch is an error") {
  auto a = oracles::random_signal(100, 5);
  auto b = oracles::random_signal(101, 6);
  CHECK_THROWS_AS(si_sdr(a, b), Error);
}

TEST_CASE("multi-channel mean") {
  auto r1 = oracles::random_signal(500, 7);
  auto r2 = oracles::random_signal(500, 8);
  std::vector<float> e1(500), e2(500);
  for (size_t i = 0; i < 500; ++i) {
    e1[i] = r1[i];                     // perfect -> cap
    e2[i] = r2[i] + (i < 250 ? 0.3f : 0.0f);
  }
  std::vector<std::span<const float>> est{e1, e2}, ref{r1, r2};
  double v2 = si_sdr(e2, r2);
  CHECK(si_sdr_multi(est, ref) == doctest::Approx(0.5 * (kSiSdrCapDb + v2)));
}
