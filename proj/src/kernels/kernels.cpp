// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace gcbf::kernels {

#if defined(__x86_64__) || defined(__i386__)
const KernelTable& avx2_table();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif

namespace {

bool simd_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#elif defined(__aarch64__)
  return true;  // NEON is baseline on aarch64
#else
  return false;
#endif
}

const KernelTable* simd_table() {
#if defined(__x86_64__) || defined(__i386__)
  return &avx2_table();
#elif defined(__aarch64__)
  return &neon_table();
#else
  return nullptr;
#endif
}

const KernelTable* select() {
  const KernelTable* best =
      simd_supported() ? simd_table() : &scalar();
  if (const char* env = std::getenv("GCBF_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &scalar();
    for (const KernelTable* t : all())
      if (std::strcmp(env, t->name) == 0) return t;
  }
  return best ? best : &scalar();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable* chosen = select();
  return *chosen;
}

const std::vector<const KernelTable*>& all() {
  static const std::vector<const KernelTable*> tables = [] {
    std::vector<const KernelTable*> v{&scalar()};
#if defined(__x86_64__) || defined(__i386__)
    if (simd_supported()) v.push_back(&avx2_table());
#endif
#if defined(__aarch64__)
    v.push_back(&neon_table());
#endif
    return v;
  }();
  return tables;
}

}  // namespace gcbf::kernels
