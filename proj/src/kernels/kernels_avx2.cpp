// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// Compiled with -mavx2 -mfma (see src/CMakeLists.txt); only ever called after
// a runtime cpuid check in kernels.cpp.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "gcbf/kernels/kernels.hpp"

namespace gcbf::kernels {
namespace {

inline float hsum256(__m256 v) {
  __m128 lo = _mm256_castps256_ps128(v);
  __m128 hi = _mm256_extractf128_ps(v, 1);
  lo = _mm_add_ps(lo, hi);
  lo = _mm_add_ps(lo, _mm_movehl_ps(lo, lo));
  lo = _mm_add_ss(lo, _mm_shuffle_ps(lo, lo, 1));
  return _mm_cvtss_f32(lo);
}

void matvec_avx2(float* y, const float* w, const float* bias, const float* x,
                 int rows, int cols) {
  int tail = cols & 15;
  int main_end = cols - tail;
  for (int r = 0; r < rows; ++r) {
    const float* wr = w + static_cast<long>(r) * cols;
    __m256 acc0 = _mm256_setzero_ps();
    __m256 acc1 = _mm256_setzero_ps();
    int c = 0;
    for (; c < main_end; c += 16) {
      acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(wr + c), _mm256_loadu_ps(x + c), acc0);
      acc1 = _mm256_fmadd_ps(_mm256_loadu_ps(wr + c + 8), _mm256_loadu_ps(x + c + 8), acc1);
    }
    if (tail >= 8) {
      acc0 = _mm256_fmadd_ps(_mm256_loadu_ps(wr + c), _mm256_loadu_ps(x + c), acc0);
      c += 8;
    }
    float acc = hsum256(_mm256_add_ps(acc0, acc1));
    for (; c < cols; ++c) acc += wr[c] * x[c];
    y[r] = bias ? acc + bias[r] : acc;
  }
}

void cmac_avx2(float* acc, const float* a, const float* b, int n) {
  int i = 0;
  // 4 complex values = 8 floats per iteration.
  for (; i + 4 <= n; i += 4) {
    __m256 va = _mm256_loadu_ps(a + 2 * i);
    __m256 vb = _mm256_loadu_ps(b + 2 * i);
    __m256 ar = _mm256_moveldup_ps(va);                    // re duplicated
    __m256 ai = _mm256_movehdup_ps(va);                    // im duplicated
    __m256 bswap = _mm256_permute_ps(vb, 0xB1);            // (im, re) pairs
    __m256 prod = _mm256_fmaddsub_ps(ar, vb, _mm256_mul_ps(ai, bswap));
    _mm256_storeu_ps(acc + 2 * i, _mm256_add_ps(_mm256_loadu_ps(acc + 2 * i), prod));
  }
  for (; i < n; ++i) {
    float ar = a[2 * i], aim = a[2 * i + 1];
    float br = b[2 * i], bim = b[2 * i + 1];
    acc[2 * i] += ar * br - aim * bim;
    acc[2 * i + 1] += ar * bim + aim * br;
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", &matvec_avx2, &cmac_avx2};
  return table;
}

}  // namespace gcbf::kernels

#endif  // x86
