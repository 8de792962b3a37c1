// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <memory>

#include "gcbf/audio.hpp"
#include "gcbf/model.hpp"
#include "gcbf/stft.hpp"

namespace gcbf {

// Input channel order, fixed: front-L, rear-L, front-R, rear-R.
// Output channel order: speaker1-L, speaker1-R, speaker2-L, speaker2-R.
// The separated signals are delayed by exactly kEngineLatencySamples (32)
// relative to the input; the block API emits one output sample per input
// sample from the first call.
class Stream {
 public:
  explicit Stream(const Model& model);

  int hop() const { return cfg_.shift; }

  // n must be a multiple of hop(); there is no internal sample queue beyond
  // the STFT state. in: 4 channel pointers; out: 4 channel pointers.
  void process_block(const float* const* in, int n, float* const* out);

  void reset();
  long frames_processed() const { return frames_; }
  const ForwardStats& stats() const { return stats_; }

 private:
  const Model& model_;
  StftConfig cfg_;
  std::shared_ptr<RealFft> fft_;
  std::vector<StftStream> analysis_;   // one per mic
  std::vector<IstftStream> synthesis_; // one per output channel
  ModelState state_;
  FilterFrame filters_;
  std::vector<std::complex<float>> y_;  // mics x bins
  std::vector<std::complex<float>> s_;  // 4 x bins
  ForwardStats stats_;
  long frames_ = 0;
};

// Streaming separation of a whole buffer (input padded to a hop multiple,
// output trimmed back to the input length). Returns 4 channels in output
// order. block_size must be a hop multiple.
AudioBuffer separate_streaming(const Model& model, const AudioBuffer& input,
                               int block_size = 160);

// Whole-utterance reference path built on the batch layer forms; the
// equivalence target for the streaming engine. Identical output layout and
// alignment.
AudioBuffer separate_offline(const Model& model, const AudioBuffer& input);

}  // namespace gcbf
