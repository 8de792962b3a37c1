// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <complex>

namespace gcbf {

inline constexpr int kSpeakers = 2;
inline constexpr int kOutChannels = 2;  // left, right
inline constexpr int kMics = 4;         // front-L, rear-L, front-R, rear-R
inline constexpr int kBins = 17;

// One frame of predicted filters. Spatial filters W are per
// (speaker, output channel, mic, bin); post filters C per
// (speaker, output channel, bin). tanh heads bound Re/Im of every entry to
// [-1, 1] (times the configured spatial-filter scale).
struct FilterFrame {
  std::array<std::complex<float>, kSpeakers * kOutChannels * kMics * kBins> w{};
  std::array<std::complex<float>, kSpeakers * kOutChannels * kBins> c{};

  std::complex<float>& w_at(int spk, int ch, int mic, int bin) {
    return w[((spk * kOutChannels + ch) * kMics + mic) * kBins + bin];
  }
  const std::complex<float>& w_at(int spk, int ch, int mic, int bin) const {
    return w[((spk * kOutChannels + ch) * kMics + mic) * kBins + bin];
  }
  std::complex<float>& c_at(int spk, int ch, int bin) {
    return c[(spk * kOutChannels + ch) * kBins + bin];
  }
  const std::complex<float>& c_at(int spk, int ch, int bin) const {
    return c[(spk * kOutChannels + ch) * kBins + bin];
  }
};

// Filter-and-sum: out[spk][ch][f] = sum_m y[m][f] * W[spk][ch][m][f].
// y_frame is mic-major (kMics x bins); out is (speaker, channel)-major
// (kSpeakers * kOutChannels x bins).
void filter_and_sum(const std::complex<float>* y_frame, int mics, int bins,
                    const FilterFrame& filters, std::complex<float>* out);

// In-place per-bin post filter: s[spk][ch][f] *= C[spk][ch][f].
void apply_post_filter(std::complex<float>* s, const FilterFrame& filters, int bins);

}  // namespace gcbf
