// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <memory>

namespace gcbf {

// Fixed-size real FFT pair backed by FFTW. Unnormalized in both directions:
// inverse(forward(x)) == n * x. One instance owns its plans and scratch
// buffers; instances are not thread-safe, but distinct instances may be used
// concurrently (plan creation is serialized internally).
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  void forward(const float* in, std::complex<float>* out) const;
  void inverse(const std::complex<float>* in, float* out) const;

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

// Double-precision twin, used on the loss/metrics path.
class RealFftD {
 public:
  explicit RealFftD(int n);
  ~RealFftD();
  RealFftD(const RealFftD&) = delete;
  RealFftD& operator=(const RealFftD&) = delete;

  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  void forward(const double* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  struct Impl;
  int n_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gcbf
