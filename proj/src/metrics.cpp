// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/metrics.hpp"

#include <cmath>

#include "gcbf/errors.hpp"

namespace gcbf {

double si_sdr(std::span<const float> est, std::span<const float> ref) {
  if (est.size() != ref.size() || est.empty())
    raise(ErrorCode::kShapeMismatch, "si_sdr: signals must have equal nonzero length");

  double dot = 0.0, rr = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    dot += static_cast<double>(est[i]) * ref[i];
    rr += static_cast<double>(ref[i]) * ref[i];
  }
  if (rr == 0.0) raise(ErrorCode::kInvalidConfig, "si_sdr: reference is identically zero");

  const double s = dot / rr;
  const double target_energy = s * s * rr;
  double resid = 0.0;
  for (size_t i = 0; i < ref.size(); ++i) {
    double e = est[i] - s * ref[i];
    resid += e * e;
  }
  if (resid <= target_energy * 1e-10) return kSiSdrCapDb;
  double v = 10.0 * std::log10(target_energy / resid);
  return std::min(v, kSiSdrCapDb);
}

double si_sdr_multi(std::span<const std::span<const float>> est,
                    std::span<const std::span<const float>> ref) {
  if (est.size() != ref.size() || est.empty())
    raise(ErrorCode::kShapeMismatch, "si_sdr_multi: channel counts differ");
  double sum = 0.0;
  for (size_t c = 0; c < est.size(); ++c) sum += si_sdr(est[c], ref[c]);
  return sum / static_cast<double>(est.size());
}

}  // namespace gcbf
