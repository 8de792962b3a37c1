// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>

namespace gcbf {

// Scale-invariant source-to-distortion ratio in dB: the estimate is
// projected onto the reference (pure projection form, no mean removal) and
// the energy ratio of projection to residual is returned. Values are capped
// at +100 dB (the declared "perfect" score); a reference of all zeros is an
// error.
inline constexpr double kSiSdrCapDb = 100.0;

double si_sdr(std::span<const float> est, std::span<const float> ref);

// Mean over channel pairs (binaural convention).
double si_sdr_multi(std::span<const std::span<const float>> est,
                    std::span<const std::span<const float>> ref);

}  // namespace gcbf
