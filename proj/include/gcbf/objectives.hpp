// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gcbf {

// Loss-domain STFT: 20 ms plain (periodic) Hann window, 10 ms shift, FFT 320
// at 16 kHz. Deliberately independent of the 2 ms filtering framework. Frames
// lie fully inside the signal (no padding); bins 0..160 each counted once.
struct LossStftConfig {
  int window = 320;
  int shift = 160;
  int fft = 320;
  int bins() const { return fft / 2 + 1; }
};

struct LossParams {
  double c = 0.3;       // magnitude compression exponent
  double alpha = 0.3;   // blend between magnitude and complex term
  double eps = 1e-12;   // magnitude floor guarding |X| -> 0
  void validate() const;
};

// Magnitude compression with guarded zero: max(|x|, eps)^(c-1) * x.
// Phase preserved, |x|^c magnitude for |x| >= eps, exact zero stays zero.
std::complex<double> compress(std::complex<double> x, double c, double eps);

using Signal = std::vector<float>;
using MultiSignal = std::vector<Signal>;  // channels

// L = sum over frames, bins, channels of
//     (1-alpha) * (|Xe|^c - |Xt|^c)^2 + alpha * |Xe^c - Xt^c|^2
// evaluated in double precision.
double cmse(const MultiSignal& est, const MultiSignal& tgt, const LossParams& p,
            const LossStftConfig& cfg);

// Analytic gradient of cmse with respect to the estimate samples (chain rule
// through compression and the STFT; the STFT adjoint is windowed overlap-add
// of the per-bin spectral gradients).
std::vector<std::vector<double>> cmse_grad(const MultiSignal& est, const MultiSignal& tgt,
                                           const LossParams& p, const LossStftConfig& cfg);

// Permutation-invariant pairing of two stereo estimates to two stereo
// targets, left/right locked per speaker. Exhausts both permutations;
// permutation 0 pairs est[i] with tgt[i], permutation 1 swaps.
struct UpitResult {
  double loss;
  int permutation;  // 0 = identity, 1 = swapped
};
UpitResult upit_assign(const MultiSignal& est1, const MultiSignal& est2,
                       const MultiSignal& tgt1, const MultiSignal& tgt2,
                       const LossParams& p, const LossStftConfig& cfg);

}  // namespace gcbf
