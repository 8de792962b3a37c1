// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/filters.hpp"

#include <algorithm>

#include "gcbf/errors.hpp"
#include "gcbf/kernels/kernels.hpp"

namespace gcbf {

void filter_and_sum(const std::complex<float>* y_frame, int mics, int bins,
                    const FilterFrame& filters, std::complex<float>* out) {
  if (mics != kMics || bins != kBins)
    raise(ErrorCode::kShapeMismatch, "filter_and_sum: expected " +
                                         std::to_string(kMics) + "x" +
                                         std::to_string(kBins) + " input frame");
  const auto& k = kernels::active();
  for (int spk = 0; spk < kSpeakers; ++spk) {
    for (int ch = 0; ch < kOutChannels; ++ch) {
      std::complex<float>* dst = out + (spk * kOutChannels + ch) * bins;
      std::fill(dst, dst + bins, std::complex<float>{0.0f, 0.0f});
      for (int m = 0; m < mics; ++m) {
        k.cmac(reinterpret_cast<float*>(dst),
               reinterpret_cast<const float*>(y_frame + m * bins),
               reinterpret_cast<const float*>(&filters.w_at(spk, ch, m, 0)), bins);
      }
    }
  }
}

void apply_post_filter(std::complex<float>* s, const FilterFrame& filters, int bins) {
  if (bins != kBins)
    raise(ErrorCode::kShapeMismatch, "apply_post_filter: expected " +
                                         std::to_string(kBins) + " bins");
  for (int spk = 0; spk < kSpeakers; ++spk)
    for (int ch = 0; ch < kOutChannels; ++ch)
      for (int f = 0; f < bins; ++f)
        s[(spk * kOutChannels + ch) * bins + f] *= filters.c_at(spk, ch, f);
}

}  // namespace gcbf
