// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/stream.hpp"

#include <algorithm>
#include <cstring>

#include "gcbf/errors.hpp"
#include "gcbf/filters.hpp"

namespace gcbf {

Stream::Stream(const Model& model)
    : model_(model), state_(model.config()) {
  cfg_ = StftConfig{};
  fft_ = std::make_shared<RealFft>(cfg_.fft_len);
  for (int m = 0; m < kMics; ++m) analysis_.emplace_back(cfg_, fft_);
  for (int c = 0; c < kSpeakers * kOutChannels; ++c) synthesis_.emplace_back(cfg_, fft_);
  y_.resize(static_cast<size_t>(kMics) * kBins);
  s_.resize(static_cast<size_t>(kSpeakers * kOutChannels) * kBins);
}

void Stream::process_block(const float* const* in, int n, float* const* out) {
  if (n % cfg_.shift != 0)
    raise(ErrorCode::kInvalidConfig,
          "process_block: block size " + std::to_string(n) +
              " is not a multiple of the hop (" + std::to_string(cfg_.shift) + ")");
  const bool post = model_.config().post_filter;
  for (int off = 0; off < n; off += cfg_.shift) {
    for (int m = 0; m < kMics; ++m)
      analysis_[m].push_hop(in[m] + off, y_.data() + static_cast<size_t>(m) * kBins);
    model_.forward_frame(state_, y_.data(), filters_, &stats_);
    filter_and_sum(y_.data(), kMics, kBins, filters_, s_.data());
    if (post) apply_post_filter(s_.data(), filters_, kBins);
    for (int c = 0; c < kSpeakers * kOutChannels; ++c)
      synthesis_[c].push_frame(s_.data() + static_cast<size_t>(c) * kBins, out[c] + off);
    ++frames_;
  }
}

void Stream::reset() {
  for (auto& a : analysis_) a.reset();
  for (auto& s : synthesis_) s.reset();
  state_.reset();
  frames_ = 0;
  stats_ = ForwardStats{};
}

namespace {

void check_input(const AudioBuffer& input) {
  if (input.num_channels() != kMics)
    raise(ErrorCode::kShapeMismatch,
          "separation input must have " + std::to_string(kMics) + " channels, got " +
              std::to_string(input.num_channels()));
  if (input.sample_rate != kSampleRate)
    raise(ErrorCode::kInvalidConfig, "separation input must be 16 kHz");
}

AudioBuffer make_output(size_t n) {
  AudioBuffer out;
  out.sample_rate = kSampleRate;
  out.channels.assign(kSpeakers * kOutChannels, std::vector<float>(n, 0.0f));
  return out;
}

}  // namespace

AudioBuffer separate_streaming(const Model& model, const AudioBuffer& input,
                               int block_size) {
  check_input(input);
  StftConfig cfg;
  if (block_size <= 0 || block_size % cfg.shift != 0)
    raise(ErrorCode::kInvalidArgument, "block size must be a positive hop multiple");

  const size_t n = input.num_samples();
  const size_t padded = (n + block_size - 1) / block_size * block_size;
  std::vector<std::vector<float>> in_padded(kMics, std::vector<float>(padded, 0.0f));
  for (int m = 0; m < kMics; ++m)
    std::copy(input.channels[m].begin(), input.channels[m].end(), in_padded[m].begin());

  AudioBuffer out = make_output(padded);
  Stream stream(model);
  std::array<const float*, kMics> ins;
  std::array<float*, kMics> outs;
  for (size_t off = 0; off < padded; off += block_size) {
    for (int m = 0; m < kMics; ++m) ins[m] = in_padded[m].data() + off;
    for (int c = 0; c < 4; ++c) outs[c] = out.channels[c].data() + off;
    stream.process_block(ins.data(), block_size, outs.data());
  }
  for (auto& ch : out.channels) ch.resize(n);
  return out;
}

AudioBuffer separate_offline(const Model& model, const AudioBuffer& input) {
  check_input(input);
  StftConfig cfg;
  const size_t n = input.num_samples();
  AudioBuffer out = make_output(n);
  if (n == 0) return out;

  // Pad to a hop multiple so the frame count matches the streaming engine.
  const size_t padded = (n + cfg.shift - 1) / cfg.shift * cfg.shift;
  const int frames = static_cast<int>(padded / cfg.shift);

  // Batch analysis of all mics into frame-major (t, mic, bin) storage.
  std::vector<std::complex<float>> y(static_cast<size_t>(frames) * kMics * kBins);
  for (int m = 0; m < kMics; ++m) {
    std::vector<float> ch = input.channels[m];
    ch.resize(padded, 0.0f);
    Spectrogram spec = stft(ch, cfg);
    for (int t = 0; t < frames; ++t)
      std::copy_n(spec.frame(t), kBins,
                  y.begin() + (static_cast<size_t>(t) * kMics + m) * kBins);
  }

  std::vector<FilterFrame> filters;
  model.forward_sequence(y.data(), frames, filters);

  // Apply filters per frame, then batch synthesis per output channel.
  const bool post = model.config().post_filter;
  std::vector<Spectrogram> s(4);
  for (auto& spec : s) {
    spec.bins = kBins;
    spec.data.resize(static_cast<size_t>(frames) * kBins);
  }
  std::vector<std::complex<float>> frame_out(4 * kBins);
  for (int t = 0; t < frames; ++t) {
    filter_and_sum(y.data() + static_cast<size_t>(t) * kMics * kBins, kMics, kBins,
                   filters[t], frame_out.data());
    if (post) apply_post_filter(frame_out.data(), filters[t], kBins);
    for (int c = 0; c < 4; ++c)
      std::copy_n(frame_out.data() + static_cast<size_t>(c) * kBins, kBins,
                  s[c].frame(t));
  }

  // OLA including the leading pad region, shifted by the engine latency:
  // out[i] = content[i - 32], where content[-16..0) is the head of frame 0.
  RealFft fft(cfg.fft_len);
  auto window = make_sqrt_hann(cfg.frame_len);
  std::vector<std::complex<float>> spec_buf(cfg.bins());
  std::vector<float> seg(cfg.frame_len);
  const float norm = 1.0f / cfg.fft_len;
  for (int c = 0; c < 4; ++c) {
    std::vector<float> content(padded + cfg.shift, 0.0f);  // index j = time j - shift
    for (int t = 0; t < frames; ++t) {
      std::copy_n(s[c].frame(t), cfg.bins(), spec_buf.begin());
      spec_buf[0] = {spec_buf[0].real(), 0.0f};
      spec_buf.back() = {spec_buf.back().real(), 0.0f};
      fft.inverse(spec_buf.data(), seg.data());
      for (int k = 0; k < cfg.frame_len; ++k) {
        // frame t's sample k sits at input time t*shift - shift + k
        long j = static_cast<long>(t) * cfg.shift + k;
        if (j >= 0 && j < static_cast<long>(content.size()))
          content[static_cast<size_t>(j)] += seg[k] * norm * window[k];
      }
    }
    for (size_t i = 0; i < n; ++i) {
      long j = static_cast<long>(i) - kEngineLatencySamples + cfg.shift;
      out.channels[c][i] = (j >= 0 && j < static_cast<long>(content.size()))
                               ? content[static_cast<size_t>(j)]
                               : 0.0f;
    }
  }
  return out;
}

}  // namespace gcbf
