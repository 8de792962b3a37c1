// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/layers.hpp"

#include <cmath>
#include <cstring>

#include "gcbf/errors.hpp"
#include "gcbf/kernels/kernels.hpp"

namespace gcbf {

void fc(const FcParams& p, const float* x, float* y) {
  kernels::active().matvec(y, p.weight.data(), p.bias.empty() ? nullptr : p.bias.data(),
                           x, p.out, p.in);
}

void prelu(const PreluParams& p, float* x, int n) {
  if (p.slopes.size() == 1) {
    const float a = p.slopes[0];
    for (int i = 0; i < n; ++i)
      if (x[i] < 0.0f) x[i] *= a;
  } else {
    if (static_cast<int>(p.slopes.size()) != n)
      raise(ErrorCode::kShapeMismatch, "prelu: slope count does not match width");
    for (int i = 0; i < n; ++i)
      if (x[i] < 0.0f) x[i] *= p.slopes[i];
  }
}

void dconv_step(const DepthwiseConvParams& p, ConvHistory& hist, const float* x, float* y) {
  if (hist.channels != p.channels || hist.depth != p.kernel - 1)
    raise(ErrorCode::kShapeMismatch, "dconv_step: history does not match kernel");
  for (int c = 0; c < p.channels; ++c) {
    const float* wc = p.weight.data() + static_cast<size_t>(c) * p.kernel;
    float acc = p.bias[c] + wc[0] * x[c];
    for (int k = 1; k < p.kernel; ++k) acc += wc[k] * hist.row(k - 1)[c];
    y[c] = acc;
  }
  if (hist.depth > 0) {
    std::memmove(hist.row(1), hist.row(0),
                 sizeof(float) * static_cast<size_t>(hist.depth - 1) * p.channels);
    std::memcpy(hist.row(0), x, sizeof(float) * p.channels);
  }
}

void dconv_full(const DepthwiseConvParams& p, const float* x, int frames, float* y) {
  for (int t = 0; t < frames; ++t) {
    const float* xt = x + static_cast<size_t>(t) * p.channels;
    float* yt = y + static_cast<size_t>(t) * p.channels;
    for (int c = 0; c < p.channels; ++c) {
      const float* wc = p.weight.data() + static_cast<size_t>(c) * p.kernel;
      float acc = p.bias[c] + wc[0] * xt[c];
      for (int k = 1; k < p.kernel; ++k)
        if (t - k >= 0) acc += wc[k] * x[static_cast<size_t>(t - k) * p.channels + c];
      yt[c] = acc;
    }
  }
}

void dsconv_step(const DepthwiseConvParams& dw, const FcParams& pw, ConvHistory& hist,
                 const float* x, float* y, float* scratch) {
  dconv_step(dw, hist, x, scratch);
  fc(pw, scratch, y);
}

namespace {
inline float sigmoid(float v) { return 1.0f / (1.0f + std::exp(-v)); }
}  // namespace

void gru_step(const GruParams& p, const float* x, float* h, float* scratch) {
  const int hid = p.hidden;
  for (int j = 0; j < hid; ++j)
    if (!std::isfinite(h[j]))
      raise(ErrorCode::kInvalidConfig, "gru_step: non-finite state");
  float* gi = scratch;            // Wx + b_ih, 3H
  float* gh = scratch + 3 * hid;  // Uh + b_hh, 3H
  const auto& k = kernels::active();
  k.matvec(gi, p.w_ih.data(), p.b_ih.data(), x, 3 * hid, hid);
  k.matvec(gh, p.w_hh.data(), p.b_hh.data(), h, 3 * hid, hid);
  for (int j = 0; j < hid; ++j) {
    float r = sigmoid(gi[j] + gh[j]);
    float z = sigmoid(gi[hid + j] + gh[hid + j]);
    float n = std::tanh(gi[2 * hid + j] + r * gh[2 * hid + j]);
    h[j] = (1.0f - z) * n + z * h[j];
  }
}

void gru_sequence(const GruParams& p, const float* x, int frames, float* h, float* y,
                  float* scratch) {
  for (int t = 0; t < frames; ++t) {
    gru_step(p, x + static_cast<size_t>(t) * p.hidden, h, scratch);
    std::memcpy(y + static_cast<size_t>(t) * p.hidden, h, sizeof(float) * p.hidden);
  }
}

}  // namespace gcbf
