// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Test-only reference implementations. Deliberately independent of the
// library's computation paths: direct O(n^2) transforms and scalar loops in
// double precision.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace oracles {

// Direct DFT of a real segment; returns bins 0..n/2.
inline std::vector<std::complex<double>> naive_rdft(std::span<const double> x) {
  const size_t n = x.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (size_t k = 0; k < out.size(); ++k) {
    double re = 0.0, im = 0.0;
    for (size_t m = 0; m < n; ++m) {
      double ph = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(m) /
                  static_cast<double>(n);
      re += x[m] * std::cos(ph);
      im += x[m] * std::sin(ph);
    }
    out[k] = {re, im};
  }
  return out;
}

// Full-sequence causal depthwise convolution, tap k reads x_{t-k}.
inline std::vector<double> naive_causal_dconv(std::span<const double> x, int frames,
                                              int channels,
                                              std::span<const double> kernel,  // C x K
                                              std::span<const double> bias, int k_size) {
  std::vector<double> y(static_cast<size_t>(frames) * channels, 0.0);
  for (int t = 0; t < frames; ++t)
    for (int c = 0; c < channels; ++c) {
      double acc = bias[c];
      for (int k = 0; k < k_size; ++k)
        if (t - k >= 0) acc += kernel[c * k_size + k] * x[static_cast<size_t>(t - k) * channels + c];
      y[static_cast<size_t>(t) * channels + c] = acc;
    }
  return y;
}

// Scalar double-precision GRU step (gate order r, z, n; dual biases).
inline void naive_gru_step(int hidden, std::span<const double> w_ih,
                           std::span<const double> w_hh, std::span<const double> b_ih,
                           std::span<const double> b_hh, std::span<const double> x,
                           std::vector<double>& h) {
  auto matvec = [&](std::span<const double> w, std::span<const double> v, int row) {
    double acc = 0.0;
    for (int c = 0; c < hidden; ++c) acc += w[static_cast<size_t>(row) * hidden + c] * v[c];
    return acc;
  };
  std::vector<double> hn(hidden);
  for (int j = 0; j < hidden; ++j) {
    double gi_r = matvec(w_ih, x, j) + b_ih[j];
    double gh_r = matvec(w_hh, h, j) + b_hh[j];
    double gi_z = matvec(w_ih, x, hidden + j) + b_ih[hidden + j];
    double gh_z = matvec(w_hh, h, hidden + j) + b_hh[hidden + j];
    double gi_n = matvec(w_ih, x, 2 * hidden + j) + b_ih[2 * hidden + j];
    double gh_n = matvec(w_hh, h, 2 * hidden + j) + b_hh[2 * hidden + j];
    double r = 1.0 / (1.0 + std::exp(-(gi_r + gh_r)));
    double z = 1.0 / (1.0 + std::exp(-(gi_z + gh_z)));
    double n = std::tanh(gi_n + r * gh_n);
    hn[j] = (1.0 - z) * n + z * h[j];
  }
  h = hn;
}

// Independent cMSE: naive DFT, direct loop, summed over bins 0..160 once.
inline double naive_cmse(const std::vector<std::vector<float>>& est,
                         const std::vector<std::vector<float>>& tgt, double c,
                         double alpha, double eps, int window = 320, int shift = 160) {
  std::vector<double> win(window);
  for (int i = 0; i < window; ++i) win[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / window);

  auto compress = [&](std::complex<double> x) -> std::complex<double> {
    double z = std::abs(x);
    if (z == 0.0) return {0.0, 0.0};
    return std::pow(std::max(z, eps), c - 1.0) * x;
  };

  double loss = 0.0;
  for (size_t ch = 0; ch < est.size(); ++ch) {
    const auto& e = est[ch];
    const auto& t = tgt[ch];
    if (e.size() < static_cast<size_t>(window)) continue;
    int frames = static_cast<int>((e.size() - window) / shift) + 1;
    for (int f = 0; f < frames; ++f) {
      std::vector<double> se(window), st(window);
      for (int i = 0; i < window; ++i) {
        se[i] = win[i] * e[static_cast<size_t>(f) * shift + i];
        st[i] = win[i] * t[static_cast<size_t>(f) * shift + i];
      }
      auto xe = naive_rdft(se);
      auto xt = naive_rdft(st);
      for (size_t k = 0; k < xe.size(); ++k) {
        auto ce = compress(xe[k]);
        auto ct = compress(xt[k]);
        double md = std::abs(ce) - std::abs(ct);
        loss += (1.0 - alpha) * md * md + alpha * std::norm(ce - ct);
      }
    }
  }
  return loss;
}

inline std::vector<float> random_signal(size_t n, uint32_t seed, float amp = 0.5f) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<float> d(-amp, amp);
  std::vector<float> out(n);
  for (auto& v : out) v = d(gen);
  return out;
}

}  // namespace oracles
