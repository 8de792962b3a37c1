// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "gcbf/errors.hpp"

namespace gcbf {
namespace {
// FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct RealFft::Impl {
  float* in;
  fftwf_complex* freq;
  float* out;
  fftwf_plan fwd;
  fftwf_plan inv;
};

RealFft::RealFft(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 2 || n % 2 != 0) raise(ErrorCode::kInvalidConfig, "RealFft: size must be even and >= 2");
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->in = fftwf_alloc_real(n);
  impl_->freq = fftwf_alloc_complex(n / 2 + 1);
  impl_->out = fftwf_alloc_real(n);
  impl_->fwd = fftwf_plan_dft_r2c_1d(n, impl_->in, impl_->freq, FFTW_ESTIMATE);
  impl_->inv = fftwf_plan_dft_c2r_1d(n, impl_->freq, impl_->out, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftwf_destroy_plan(impl_->fwd);
  fftwf_destroy_plan(impl_->inv);
  fftwf_free(impl_->in);
  fftwf_free(impl_->freq);
  fftwf_free(impl_->out);
}

void RealFft::forward(const float* in, std::complex<float>* out) const {
  std::memcpy(impl_->in, in, sizeof(float) * n_);
  fftwf_execute(impl_->fwd);
  std::memcpy(reinterpret_cast<float*>(out), impl_->freq, sizeof(fftwf_complex) * bins());
}

void RealFft::inverse(const std::complex<float>* in, float* out) const {
  std::memcpy(impl_->freq, in, sizeof(fftwf_complex) * bins());
  fftwf_execute(impl_->inv);
  std::memcpy(out, impl_->out, sizeof(float) * n_);
}

struct RealFftD::Impl {
  double* in;
  fftw_complex* freq;
  double* out;
  fftw_plan fwd;
  fftw_plan inv;
};

RealFftD::RealFftD(int n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n < 2 || n % 2 != 0) raise(ErrorCode::kInvalidConfig, "RealFftD: size must be even and >= 2");
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->in = fftw_alloc_real(n);
  impl_->freq = fftw_alloc_complex(n / 2 + 1);
  impl_->out = fftw_alloc_real(n);
  impl_->fwd = fftw_plan_dft_r2c_1d(n, impl_->in, impl_->freq, FFTW_ESTIMATE);
  impl_->inv = fftw_plan_dft_c2r_1d(n, impl_->freq, impl_->out, FFTW_ESTIMATE);
}

RealFftD::~RealFftD() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->inv);
  fftw_free(impl_->in);
  fftw_free(impl_->freq);
  fftw_free(impl_->out);
}

void RealFftD::forward(const double* in, std::complex<double>* out) const {
  std::memcpy(impl_->in, in, sizeof(double) * n_);
  fftw_execute(impl_->fwd);
  std::memcpy(reinterpret_cast<double*>(out), impl_->freq, sizeof(fftw_complex) * bins());
}

void RealFftD::inverse(const std::complex<double>* in, double* out) const {
  std::memcpy(impl_->freq, in, sizeof(fftw_complex) * bins());
  fftw_execute(impl_->inv);
  std::memcpy(out, impl_->out, sizeof(double) * n_);
}

}  // namespace gcbf
