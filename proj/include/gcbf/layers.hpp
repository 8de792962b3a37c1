// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

namespace gcbf {

// Layer primitives. Each comes in a stateless batch form (whole sequence)
// and a stateful single-frame streaming form; both accumulate in identical
// order so streaming and offline runs agree bit for bit.

struct FcParams {
  int in = 0;
  int out = 0;
  std::vector<float> weight;  // out x in, row-major
  std::vector<float> bias;    // out
};

// y = W x + b
void fc(const FcParams& p, const float* x, float* y);

struct PreluParams {
  // One slope shared across channels (size 1) or one per channel.
  std::vector<float> slopes;
};

void prelu(const PreluParams& p, float* x, int n);

struct DepthwiseConvParams {
  int channels = 0;
  int kernel = 0;             // taps over time; tap k reads the input k frames ago
  std::vector<float> weight;  // channels x kernel
  std::vector<float> bias;    // channels
};

// Rolling buffer of the last (kernel - 1) input frames, zero-initialized
// (silence before stream start). Row d holds the input (d + 1) frames ago.
struct ConvHistory {
  int channels = 0;
  int depth = 0;
  std::vector<float> data;  // depth x channels

  ConvHistory() = default;
  ConvHistory(int channels_, int kernel_size)
      : channels(channels_), depth(kernel_size - 1),
        data(static_cast<size_t>(channels_) * (kernel_size - 1), 0.0f) {}
  void reset() { std::fill(data.begin(), data.end(), 0.0f); }
  float* row(int d) { return data.data() + static_cast<size_t>(d) * channels; }
  const float* row(int d) const { return data.data() + static_cast<size_t>(d) * channels; }
};

// Strictly causal: y_c = bias_c + sum_k w[c][k] * x_{t-k},c. Advances hist.
void dconv_step(const DepthwiseConvParams& p, ConvHistory& hist, const float* x, float* y);

// Offline causal form over a T x channels sequence (zeros before t = 0).
void dconv_full(const DepthwiseConvParams& p, const float* x, int frames, float* y);

// Depthwise step followed by 1x1 pointwise mixing. scratch: channels floats.
void dsconv_step(const DepthwiseConvParams& dw, const FcParams& pw, ConvHistory& hist,
                 const float* x, float* y, float* scratch);

// GRU, gate order r, z, n; separate input-side and recurrent-side biases.
// The reset gate multiplies the post-affine recurrent candidate term:
//   r = sigm(Wr x + br_i + Ur h + br_h)
//   z = sigm(Wz x + bz_i + Uz h + bz_h)
//   n = tanh(Wn x + bn_i + r * (Un h + bn_h))
//   h' = (1 - z) * n + z * h
struct GruParams {
  int hidden = 0;
  std::vector<float> w_ih;  // 3H x H
  std::vector<float> w_hh;  // 3H x H
  std::vector<float> b_ih;  // 3H
  std::vector<float> b_hh;  // 3H
};

// Updates h in place; y == h after the call. scratch: 6H floats.
void gru_step(const GruParams& p, const float* x, float* h, float* scratch);

// Offline scan over T x H input; writes T x H outputs, leaves final h.
void gru_sequence(const GruParams& p, const float* x, int frames, float* h, float* y,
                  float* scratch);

}  // namespace gcbf
