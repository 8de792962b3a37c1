// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/stft.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "gcbf/errors.hpp"

namespace gcbf {

void StftConfig::validate() const {
  if (frame_len < 2 || frame_len % 2 != 0)
    raise(ErrorCode::kInvalidConfig, "StftConfig: frame_len must be even and >= 2");
  if (shift * 2 != frame_len)
    raise(ErrorCode::kInvalidConfig, "StftConfig: shift must be frame_len/2");
  if (fft_len != frame_len)
    raise(ErrorCode::kInvalidConfig, "StftConfig: fft_len must equal frame_len");
}

std::vector<double> make_sqrt_hann_d(int length) {
  if (length < 2 || length % 2 != 0)
    raise(ErrorCode::kInvalidConfig, "sqrt-Hann window length must be even and >= 2");
  std::vector<double> w(length);
  for (int n = 0; n < length; ++n)
    w[n] = std::sqrt(0.5 - 0.5 * std::cos(2.0 * M_PI * n / length));
  return w;
}

std::vector<float> make_sqrt_hann(int length) {
  auto d = make_sqrt_hann_d(length);
  return std::vector<float>(d.begin(), d.end());
}

namespace {

// Number of frames for a given signal length (one per started hop).
int frame_count(size_t len, int shift) {
  return static_cast<int>((len + shift - 1) / shift);
}

}  // namespace

Spectrogram stft(std::span<const float> signal, const StftConfig& cfg) {
  cfg.validate();
  Spectrogram out;
  out.bins = cfg.bins();
  if (signal.empty()) return out;

  RealFft fft(cfg.fft_len);
  auto window = make_sqrt_hann(cfg.frame_len);
  int frames = frame_count(signal.size(), cfg.shift);
  out.data.resize(static_cast<size_t>(frames) * out.bins);

  std::vector<float> seg(cfg.frame_len);
  const int pad = cfg.frame_len - cfg.shift;
  for (int t = 0; t < frames; ++t) {
    for (int k = 0; k < cfg.frame_len; ++k) {
      long idx = static_cast<long>(t) * cfg.shift - pad + k;
      float v = (idx >= 0 && idx < static_cast<long>(signal.size()))
                    ? signal[static_cast<size_t>(idx)]
                    : 0.0f;
      seg[k] = v * window[k];
    }
    fft.forward(seg.data(), out.frame(t));
  }
  return out;
}

std::vector<float> istft(const Spectrogram& frames, const StftConfig& cfg) {
  cfg.validate();
  if (frames.bins != cfg.bins())
    raise(ErrorCode::kShapeMismatch,
          "istft: expected " + std::to_string(cfg.bins()) + " bins, got " +
              std::to_string(frames.bins));
  int t_count = frames.frames();
  std::vector<float> out(static_cast<size_t>(t_count) * cfg.shift, 0.0f);
  if (t_count == 0) return out;

  RealFft fft(cfg.fft_len);
  auto window = make_sqrt_hann(cfg.frame_len);
  std::vector<std::complex<float>> spec(cfg.bins());
  std::vector<float> seg(cfg.frame_len);
  const int pad = cfg.frame_len - cfg.shift;

  for (int t = 0; t < t_count; ++t) {
    std::copy_n(frames.frame(t), cfg.bins(), spec.begin());
    spec[0] = {spec[0].real(), 0.0f};
    spec[cfg.bins() - 1] = {spec[cfg.bins() - 1].real(), 0.0f};
    fft.inverse(spec.data(), seg.data());
    const float norm = 1.0f / cfg.fft_len;
    for (int k = 0; k < cfg.frame_len; ++k) {
      long idx = static_cast<long>(t) * cfg.shift - pad + k;
      if (idx >= 0 && idx < static_cast<long>(out.size()))
        out[static_cast<size_t>(idx)] += seg[k] * norm * window[k];
    }
  }
  return out;
}

StftStream::StftStream(const StftConfig& cfg, std::shared_ptr<const RealFft> fft)
    : cfg_(cfg), fft_(std::move(fft)) {
  cfg_.validate();
  window_ = make_sqrt_hann(cfg_.frame_len);
  ring_.assign(cfg_.frame_len, 0.0f);
  scratch_.resize(cfg_.frame_len);
}

void StftStream::push_hop(const float* hop, std::complex<float>* out) {
  std::memmove(ring_.data(), ring_.data() + cfg_.shift,
               sizeof(float) * (cfg_.frame_len - cfg_.shift));
  std::memcpy(ring_.data() + (cfg_.frame_len - cfg_.shift), hop,
              sizeof(float) * cfg_.shift);
  for (int k = 0; k < cfg_.frame_len; ++k) scratch_[k] = ring_[k] * window_[k];
  fft_->forward(scratch_.data(), out);
}

void StftStream::reset() { std::fill(ring_.begin(), ring_.end(), 0.0f); }

IstftStream::IstftStream(const StftConfig& cfg, std::shared_ptr<const RealFft> fft)
    : cfg_(cfg), fft_(std::move(fft)) {
  cfg_.validate();
  window_ = make_sqrt_hann(cfg_.frame_len);
  ola_.assign(cfg_.frame_len + cfg_.shift, 0.0f);
  spec_scratch_.resize(cfg_.bins());
  time_scratch_.resize(cfg_.frame_len);
}

void IstftStream::push_frame(const std::complex<float>* frame, float* out_hop) {
  std::copy_n(frame, cfg_.bins(), spec_scratch_.begin());
  spec_scratch_[0] = {spec_scratch_[0].real(), 0.0f};
  spec_scratch_.back() = {spec_scratch_.back().real(), 0.0f};
  fft_->inverse(spec_scratch_.data(), time_scratch_.data());

  // ola_[j] holds content time (t-2)*shift + j when frame t arrives.
  const float norm = 1.0f / cfg_.fft_len;
  for (int k = 0; k < cfg_.frame_len; ++k)
    ola_[cfg_.shift + k] += time_scratch_[k] * norm * window_[k];

  std::memcpy(out_hop, ola_.data(), sizeof(float) * cfg_.shift);
  std::memmove(ola_.data(), ola_.data() + cfg_.shift,
               sizeof(float) * cfg_.frame_len);
  std::fill(ola_.end() - cfg_.shift, ola_.end(), 0.0f);
}

void IstftStream::reset() { std::fill(ola_.begin(), ola_.end(), 0.0f); }

}  // namespace gcbf
