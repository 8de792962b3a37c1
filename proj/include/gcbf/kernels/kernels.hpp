// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

namespace gcbf::kernels {

// Data-parallel inner loops of the engine. One scalar reference table plus
// SIMD variants selected once at startup; every variant must agree with the
// scalar table within floating-point reassociation error (equivalence-tested
// in tests/test_kernels.cpp).
//
// Activation functions are intentionally NOT part of the table: they stay
// scalar everywhere so the selected variant cannot shift tanh/sigmoid
// rounding between machines.
struct KernelTable {
  const char* name;

  // y[r] = sum_c w[r*cols + c] * x[c] + (bias ? bias[r] : 0)
  void (*matvec)(float* y, const float* w, const float* bias, const float* x,
                 int rows, int cols);

  // acc[i] += a[i] * b[i] for n complex values, interleaved (re, im) pairs.
  void (*cmac)(float* acc, const float* a, const float* b, int n);
};

// Best table for this machine. Honors GCBF_KERNELS=scalar|avx2|neon once at
// first use; unknown or unavailable names fall back to the default choice.
const KernelTable& active();

const KernelTable& scalar();

// All tables compiled into this binary, scalar first.
const std::vector<const KernelTable*>& all();

}  // namespace gcbf::kernels
