// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#if defined(__aarch64__)

#include <arm_neon.h>

#include "gcbf/kernels/kernels.hpp"

namespace gcbf::kernels {
namespace {

void matvec_neon(float* y, const float* w, const float* bias, const float* x,
                 int rows, int cols) {
  int tail = cols & 7;
  int main_end = cols - tail;
  for (int r = 0; r < rows; ++r) {
    const float* wr = w + static_cast<long>(r) * cols;
    float32x4_t acc0 = vdupq_n_f32(0.0f);
    float32x4_t acc1 = vdupq_n_f32(0.0f);
    int c = 0;
    for (; c < main_end; c += 8) {
      acc0 = vfmaq_f32(acc0, vld1q_f32(wr + c), vld1q_f32(x + c));
      acc1 = vfmaq_f32(acc1, vld1q_f32(wr + c + 4), vld1q_f32(x + c + 4));
    }
    if (tail >= 4) {
      acc0 = vfmaq_f32(acc0, vld1q_f32(wr + c), vld1q_f32(x + c));
      c += 4;
    }
    float acc = vaddvq_f32(vaddq_f32(acc0, acc1));
    for (; c < cols; ++c) acc += wr[c] * x[c];
    y[r] = bias ? acc + bias[r] : acc;
  }
}

void cmac_neon(float* acc, const float* a, const float* b, int n) {
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    // 2 complex values per iteration: deinterleave, complex multiply, add.
    float32x4_t va = vld1q_f32(a + 2 * i);
    float32x4_t vb = vld1q_f32(b + 2 * i);
    float32x4_t ar = vtrn1q_f32(va, va);  // re duplicated
    float32x4_t ai = vtrn2q_f32(va, va);  // im duplicated
    float32x4_t bswap = vrev64q_f32(vb);  // (im, re) pairs
    static const float sgn[4] = {-1.0f, 1.0f, -1.0f, 1.0f};
    float32x4_t prod = vfmaq_f32(vmulq_f32(vmulq_f32(ai, bswap), vld1q_f32(sgn)), ar, vb);
    vst1q_f32(acc + 2 * i, vaddq_f32(vld1q_f32(acc + 2 * i), prod));
  }
  for (; i < n; ++i) {
    float ar = a[2 * i], aim = a[2 * i + 1];
    float br = b[2 * i], bim = b[2 * i + 1];
    acc[2 * i] += ar * br - aim * bim;
    acc[2 * i + 1] += ar * bim + aim * br;
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{"neon", &matvec_neon, &cmac_neon};
  return table;
}

}  // namespace gcbf::kernels

#endif  // aarch64
