// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "gcbf/fft.hpp"

namespace gcbf {

// The filtering framework runs at 16 kHz with 2 ms frames and a 1 ms shift.
// NOTE: the sample rate is nowhere configurable on the model path — 32
// samples per 2 ms frame forces 16 kHz, and the WAV reader rejects anything
// else. See README ("Sample rate").
inline constexpr int kSampleRate = 16000;

struct StftConfig {
  int frame_len = 32;
  int shift = 16;
  int fft_len = 32;

  int bins() const { return fft_len / 2 + 1; }
  void validate() const;  // shift == frame_len/2 == fft_len/2 required
};

// Periodic (DFT-even) Hann raised to 1/2: w(n) = sqrt(0.5 - 0.5 cos(2*pi*n/N)).
// Squared copies at 50% overlap sum to exactly 1, which is what makes the
// analysis+synthesis pair below perfectly reconstructing.
std::vector<float> make_sqrt_hann(int length);
std::vector<double> make_sqrt_hann_d(int length);

// Single-channel spectrogram, frame-major: data[t * bins + f].
struct Spectrogram {
  int bins = 0;
  std::vector<std::complex<float>> data;

  int frames() const { return bins ? static_cast<int>(data.size()) / bins : 0; }
  std::complex<float>* frame(int t) { return data.data() + static_cast<size_t>(t) * bins; }
  const std::complex<float>* frame(int t) const { return data.data() + static_cast<size_t>(t) * bins; }
};

// Batch analysis. The signal is padded with (frame_len - shift) leading zeros
// so frame t covers input samples [t*shift - shift, t*shift + shift); one
// frame is produced per started hop: T = ceil(len / shift). Empty input
// yields an empty spectrogram.
Spectrogram stft(std::span<const float> signal, const StftConfig& cfg);

// Batch synthesis: conjugate mirroring, inverse FFT, synthesis window,
// overlap-add at the hop. Returns T*shift samples aligned with the original
// signal indices (the leading pad is dropped). The final hop sits under a
// partial window sum; everything before it reconstructs exactly.
// Imaginary parts of bin 0 and the Nyquist bin are ignored.
std::vector<float> istft(const Spectrogram& frames, const StftConfig& cfg);

// Streaming analysis for one channel: push one hop, get one frame.
class StftStream {
 public:
  StftStream(const StftConfig& cfg, std::shared_ptr<const RealFft> fft);
  void push_hop(const float* hop, std::complex<float>* out);
  void reset();

 private:
  StftConfig cfg_;
  std::shared_ptr<const RealFft> fft_;
  std::vector<float> window_;
  std::vector<float> ring_;     // last frame_len input samples
  std::vector<float> scratch_;  // windowed frame
};

// Streaming synthesis for one channel. Emission is delayed so that the
// overall analysis->synthesis chain has exactly one frame (32 samples) of
// algorithmic latency: the hop emitted alongside input hop t is the fully
// overlap-added reconstruction of input samples [t*shift - 2*shift,
// t*shift - shift).
class IstftStream {
 public:
  IstftStream(const StftConfig& cfg, std::shared_ptr<const RealFft> fft);
  void push_frame(const std::complex<float>* frame, float* out_hop);
  void reset();

 private:
  StftConfig cfg_;
  std::shared_ptr<const RealFft> fft_;
  std::vector<float> window_;
  std::vector<float> ola_;  // frame_len + shift accumulator
  std::vector<std::complex<float>> spec_scratch_;
  std::vector<float> time_scratch_;
};

// Algorithmic latency of the full streaming chain, in samples.
inline constexpr int kEngineLatencySamples = 32;

}  // namespace gcbf
