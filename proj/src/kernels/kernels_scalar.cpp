// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/kernels/kernels.hpp"

namespace gcbf::kernels {
namespace {

void matvec_scalar(float* y, const float* w, const float* bias, const float* x,
                   int rows, int cols) {
  for (int r = 0; r < rows; ++r) {
    const float* wr = w + static_cast<long>(r) * cols;
    float acc = 0.0f;
    for (int c = 0; c < cols; ++c) acc += wr[c] * x[c];
    y[r] = bias ? acc + bias[r] : acc;
  }
}

void cmac_scalar(float* acc, const float* a, const float* b, int n) {
  for (int i = 0; i < n; ++i) {
    float ar = a[2 * i], ai = a[2 * i + 1];
    float br = b[2 * i], bi = b[2 * i + 1];
    acc[2 * i] += ar * br - ai * bi;
    acc[2 * i + 1] += ar * bi + ai * br;
  }
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar", &matvec_scalar, &cmac_scalar};
  return table;
}

}  // namespace gcbf::kernels
