// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/objectives.hpp"

#include <cmath>

#include "gcbf/errors.hpp"
#include "gcbf/fft.hpp"

namespace gcbf {

void LossParams::validate() const {
  if (!(c > 0.0 && c <= 1.0)) raise(ErrorCode::kInvalidConfig, "compression c must be in (0, 1]");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    raise(ErrorCode::kInvalidConfig, "alpha must be in [0, 1]");
  if (!(eps > 0.0)) raise(ErrorCode::kInvalidConfig, "eps must be positive");
}

std::complex<double> compress(std::complex<double> x, double c, double eps) {
  double z = std::abs(x);
  if (z == 0.0) return {0.0, 0.0};
  double zc = std::max(z, eps);
  return std::pow(zc, c - 1.0) * x;
}

namespace {

std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
  return w;
}

int loss_frames(size_t len, const LossStftConfig& cfg) {
  if (len < static_cast<size_t>(cfg.window)) return 0;
  return static_cast<int>((len - cfg.window) / cfg.shift) + 1;
}

// frames x bins, double precision
std::vector<std::complex<double>> loss_stft(std::span<const float> x,
                                            const LossStftConfig& cfg,
                                            const RealFftD& fft,
                                            const std::vector<double>& window) {
  int frames = loss_frames(x.size(), cfg);
  std::vector<std::complex<double>> out(static_cast<size_t>(frames) * cfg.bins());
  std::vector<double> seg(cfg.window);
  for (int t = 0; t < frames; ++t) {
    const size_t off = static_cast<size_t>(t) * cfg.shift;
    for (int k = 0; k < cfg.window; ++k) seg[k] = window[k] * x[off + k];
    fft.forward(seg.data(), out.data() + static_cast<size_t>(t) * cfg.bins());
  }
  return out;
}

void check_pair(const MultiSignal& est, const MultiSignal& tgt) {
  if (est.size() != tgt.size())
    raise(ErrorCode::kShapeMismatch, "cmse: channel counts differ");
  for (size_t ch = 0; ch < est.size(); ++ch)
    if (est[ch].size() != tgt[ch].size())
      raise(ErrorCode::kShapeMismatch, "cmse: signal lengths differ");
}

}  // namespace

double cmse(const MultiSignal& est, const MultiSignal& tgt, const LossParams& p,
            const LossStftConfig& cfg) {
  p.validate();
  check_pair(est, tgt);
  RealFftD fft(cfg.fft);
  auto window = hann_window(cfg.window);

  double loss = 0.0;
  for (size_t ch = 0; ch < est.size(); ++ch) {
    auto xe = loss_stft(est[ch], cfg, fft, window);
    auto xt = loss_stft(tgt[ch], cfg, fft, window);
    for (size_t i = 0; i < xe.size(); ++i) {
      auto ce = compress(xe[i], p.c, p.eps);
      auto ct = compress(xt[i], p.c, p.eps);
      double md = std::abs(ce) - std::abs(ct);
      double cr = ce.real() - ct.real();
      double ci = ce.imag() - ct.imag();
      loss += (1.0 - p.alpha) * md * md + p.alpha * (cr * cr + ci * ci);
    }
  }
  return loss;
}

std::vector<std::vector<double>> cmse_grad(const MultiSignal& est, const MultiSignal& tgt,
                                           const LossParams& p, const LossStftConfig& cfg) {
  p.validate();
  check_pair(est, tgt);
  RealFftD fft(cfg.fft);
  auto window = hann_window(cfg.window);
  const int bins = cfg.bins();

  std::vector<std::vector<double>> grad(est.size());
  std::vector<std::complex<double>> gspec(bins);
  std::vector<double> gtime(cfg.fft);

  for (size_t ch = 0; ch < est.size(); ++ch) {
    grad[ch].assign(est[ch].size(), 0.0);
    auto xe = loss_stft(est[ch], cfg, fft, window);
    auto xt = loss_stft(tgt[ch], cfg, fft, window);
    int frames = loss_frames(est[ch].size(), cfg);

    for (int t = 0; t < frames; ++t) {
      for (int k = 0; k < bins; ++k) {
        const std::complex<double> x = xe[static_cast<size_t>(t) * bins + k];
        const std::complex<double> xtc = compress(xt[static_cast<size_t>(t) * bins + k], p.c, p.eps);
        const double a = x.real(), b = x.imag();
        const double z = std::abs(x);

        double da = 0.0, db = 0.0;
        if (z > p.eps) {
          const double zc1 = std::pow(z, p.c - 1.0);        // z^(c-1)
          const double zc2 = std::pow(z, p.c - 2.0);        // z^(c-2)
          const double zc3 = std::pow(z, p.c - 3.0);        // z^(c-3)
          const double m = zc1 * z;                         // z^c
          const double mdiff = m - std::abs(xtc);
          // magnitude term
          da += 2.0 * (1.0 - p.alpha) * mdiff * p.c * zc2 * a;
          db += 2.0 * (1.0 - p.alpha) * mdiff * p.c * zc2 * b;
          // complex term, U = z^(c-1) * x
          const double dre = zc1 * a - xtc.real();
          const double dim = zc1 * b - xtc.imag();
          const double du_rr = zc1 + (p.c - 1.0) * zc3 * a * a;  // dU_re/da
          const double du_x = (p.c - 1.0) * zc3 * a * b;         // cross terms
          const double du_ii = zc1 + (p.c - 1.0) * zc3 * b * b;  // dU_im/db
          da += 2.0 * p.alpha * (dre * du_rr + dim * du_x);
          db += 2.0 * p.alpha * (dre * du_x + dim * du_ii);
        } else if (z > 0.0) {
          // Guarded region: compression is the linear map eps^(c-1) * x.
          const double s = std::pow(p.eps, p.c - 1.0);
          const double m = s * z;
          const double mdiff = m - std::abs(xtc);
          da += 2.0 * (1.0 - p.alpha) * mdiff * s * (a / z);
          db += 2.0 * (1.0 - p.alpha) * mdiff * s * (b / z);
          const double dre = s * a - xtc.real();
          const double dim = s * b - xtc.imag();
          da += 2.0 * p.alpha * dre * s;
          db += 2.0 * p.alpha * dim * s;
        }
        // z == 0: subgradient 0
        gspec[k] = {da, db};
      }

      // Adjoint of the real FFT over bins counted once each: halve the
      // interior bins, drop the (structurally zero) imaginary parts of DC
      // and Nyquist, then an unnormalized inverse transform.
      gspec[0] = {gspec[0].real(), 0.0};
      gspec[bins - 1] = {gspec[bins - 1].real(), 0.0};
      for (int k = 1; k < bins - 1; ++k) gspec[k] *= 0.5;
      fft.inverse(gspec.data(), gtime.data());

      const size_t off = static_cast<size_t>(t) * cfg.shift;
      for (int k = 0; k < cfg.window; ++k)
        grad[ch][off + k] += gtime[k] * window[k];
    }
  }
  return grad;
}

UpitResult upit_assign(const MultiSignal& est1, const MultiSignal& est2,
                       const MultiSignal& tgt1, const MultiSignal& tgt2,
                       const LossParams& p, const LossStftConfig& cfg) {
  double identity = cmse(est1, tgt1, p, cfg) + cmse(est2, tgt2, p, cfg);
  double swapped = cmse(est1, tgt2, p, cfg) + cmse(est2, tgt1, p, cfg);
  if (swapped < identity) return {swapped, 1};
  return {identity, 0};
}

}  // namespace gcbf
