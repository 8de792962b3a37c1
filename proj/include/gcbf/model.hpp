// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gcbf/filters.hpp"
#include "gcbf/layers.hpp"

namespace gcbf {

// Architecture hyperparameters. The filter estimator maps one spectral frame
// of all mics to per-speaker spatial filters W and per-channel post filters C:
// grouping FC -> shared Conv module -> TAC -> shared GRU module -> TAC ->
// ungrouping FC -> tanh filter heads. With groups == 1 the TAC stages do not
// exist (no weights, never evaluated).
struct ModelConfig {
  int groups = 1;         // G
  int hidden = 256;       // H, per-group width
  int latent = 256;       // P
  int mics_per_side = 2;  // M; engine input is 2M = 4 mics
  int bins = 17;          // F
  int speakers = 2;
  bool post_filter = true;  // C heads exist only when enabled
  float w_scale = 1.0f;     // multiplies W; sqrt(2) compensates a disabled post filter

  int num_mics() const { return 2 * mics_per_side; }
  int feature_dim() const { return 4 * bins * mics_per_side; }  // re+im of all mics
  int group_width() const { return latent / groups; }
  void validate() const;
};

struct TacParams {
  FcParams fc1, fc2, fc3;
  PreluParams act1, act2, act3;
};

// Every learned tensor. Weight sharing across groups means each module
// appears once here regardless of G.
struct WeightStore {
  ModelConfig config;

  FcParams grouping;

  FcParams conv_fc;
  PreluParams conv_act;
  DepthwiseConvParams conv_ds5_dw;
  FcParams conv_ds5_pw;
  PreluParams conv_ds5_act;
  DepthwiseConvParams conv_ds3_dw;
  FcParams conv_ds3_pw;
  PreluParams conv_ds3_act;
  DepthwiseConvParams conv_skip;  // kernel 1

  TacParams tac_a, tac_b;  // empty when groups == 1

  GruParams gru1, gru2;
  DepthwiseConvParams gru_skip;  // kernel 1

  FcParams ungroup;

  std::array<FcParams, 4> w_heads;  // (spk1,L), (spk1,R), (spk2,L), (spk2,R)
  std::array<FcParams, 2> c_heads;  // spk1, spk2; empty when post filter off

  size_t total_scalars() const;
};

// Canonical tensor naming, stable across versions; the weight file, shape
// validation and the complexity accountant all walk the same list.
struct TensorShape {
  std::string name;
  std::vector<uint32_t> dims;
  size_t count() const;
};
std::vector<TensorShape> tensor_shapes(const ModelConfig& cfg);

struct TensorRef {
  std::string name;
  std::vector<uint32_t> dims;
  std::span<float> data;
};
std::vector<TensorRef> tensor_refs(WeightStore& store);

// Zero-filled store with every tensor allocated to its canonical shape.
WeightStore make_empty_store(const ModelConfig& cfg);

// Deterministic seeded init: weights uniform in [-1/sqrt(fan_in),
// +1/sqrt(fan_in)], biases zero, PReLU slopes 0.25. Same seed, same bytes.
WeightStore init_weights(const ModelConfig& cfg, uint64_t seed);

struct ForwardStats {
  long tac_evaluations = 0;
};

// Per-stream recurrent state plus preallocated scratch; forward_frame does
// not allocate.
struct ModelState {
  std::vector<ConvHistory> ds5_hist, ds3_hist;  // one per group
  ConvHistory k1_hist;                          // shared, depth 0
  std::vector<float> h1, h2;                    // G x H each

  std::vector<float> features, latent_vec, group_out, ungrouped;
  std::vector<float> t0, t1, t2, skip;
  std::vector<float> tac_t, tac_mean, tac_post, tac_cat, tac_out;
  std::vector<float> gru_scratch, head_out;

  explicit ModelState(const ModelConfig& cfg);
  void reset();
};

class Model {
 public:
  // Validates every tensor against the canonical shapes; rejects TAC tensors
  // when groups == 1 and missing ones when groups > 1.
  explicit Model(WeightStore store);

  const ModelConfig& config() const { return store_.config; }
  const WeightStore& weights() const { return store_; }
  ModelState make_state() const { return ModelState(store_.config); }

  // y_frame: mic-major complex spectra (num_mics x bins).
  void forward_frame(ModelState& state, const std::complex<float>* y_frame,
                     FilterFrame& out, ForwardStats* stats = nullptr) const;

  // Batch path over a whole utterance: y is frame-major (frames x mics x
  // bins). Separate implementation from forward_frame (full-sequence conv and
  // GRU scans); the streaming/offline equivalence tests compare the two.
  void forward_sequence(const std::complex<float>* y, int frames,
                        std::vector<FilterFrame>& out,
                        ForwardStats* stats = nullptr) const;

 private:
  void features_from_frame(const std::complex<float>* y_frame, float* feat) const;
  void tac(const TacParams& p, float* groups_vec, std::vector<float>& t_buf,
           ModelState& state, ForwardStats* stats) const;
  void estimate_filters(const float* latent_vec, float* head_scratch,
                        FilterFrame& out) const;

  WeightStore store_;
};

}  // namespace gcbf
