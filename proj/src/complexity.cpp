// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/complexity.hpp"

#include <array>
#include <cstdio>

namespace gcbf {

ComplexityReport count_params(const ModelConfig& cfg) {
  cfg.validate();
  ComplexityReport rep;
  rep.config = cfg;
  rep.tensors = tensor_shapes(cfg);

  for (const auto& t : rep.tensors) {
    size_t n = t.count();
    rep.total_params += n;
    if (t.name.rfind("grouping", 0) == 0)
      rep.grouping_params += n;
    else if (t.name.rfind("conv.", 0) == 0)
      rep.conv_params += n;
    else if (t.name.rfind("tac_", 0) == 0)
      rep.tac_params += n;
    else if (t.name.rfind("gru", 0) == 0)
      rep.gru_params += n;
    else if (t.name.rfind("ungroup", 0) == 0)
      rep.ungroup_params += n;
    else if (t.name.rfind("head.", 0) == 0)
      rep.filter_params += n;
  }

  rep.macs_per_frame = static_cast<size_t>(count_macs(cfg, 1));
  rep.frames_per_second = 1000;
  rep.macs_per_second = count_macs(cfg, 1000);
  return rep;
}

double count_macs(const ModelConfig& cfg, int frames_per_second) {
  cfg.validate();
  const size_t G = cfg.groups, H = cfg.hidden, P = cfg.latent, W = cfg.group_width();
  const size_t FEAT = cfg.feature_dim(), CDIM = 4 * static_cast<size_t>(cfg.bins);

  auto fc_macs = [](size_t in, size_t out) { return in * out + out; };
  auto dconv_macs = [&](size_t kernel) { return kernel * H + H; };

  size_t m = fc_macs(FEAT, P);  // grouping, once per frame

  size_t conv = fc_macs(W, H) + dconv_macs(5) + fc_macs(H, H) + dconv_macs(3) +
                fc_macs(H, H) + dconv_macs(1);
  m += G * conv;

  if (G > 1) {
    size_t tac = G * fc_macs(H, 2 * H) + fc_macs(2 * H, 2 * H) + G * fc_macs(4 * H, H);
    m += 2 * tac;
  }

  size_t gru = 2 * (6 * H * H + 6 * H) + dconv_macs(1);
  m += G * gru;

  m += G * fc_macs(H, W);  // ungrouping

  m += 4 * fc_macs(P, FEAT);
  if (cfg.post_filter) m += 2 * fc_macs(P, CDIM);

  return static_cast<double>(m) * frames_per_second;
}

std::span<const ReferenceRow> reference_rows() {
  static const std::array<ReferenceRow, 10> rows{{
      {1, 256, 1.27e6, 1.27e9},
      {1, 128, 508.7e3, 0.51e9},
      {2, 128, 804.8e3, 1.27e9},
      {4, 128, 788.3e3, 2.14e9},
      {4, 64, 359.9e3, 0.71e9},
      {8, 64, 355.7e3, 1.15e9},
      {8, 32, 248.0e3, 0.46e9},
      {16, 32, 246.9e3, 0.68e9},
      {16, 16, 219.7e3, 0.34e9},
      {32, 16, 219.4e3, 0.46e9},
  }};
  return rows;
}

const ReferenceRow* find_reference(int groups, int hidden) {
  for (const auto& r : reference_rows())
    if (r.groups == groups && r.hidden == hidden) return &r;
  return nullptr;
}

namespace {

std::string human(double v) {
  char buf[32];
  if (v >= 1e9)
    std::snprintf(buf, sizeof(buf), "%.2fG", v / 1e9);
  else if (v >= 1e6)
    std::snprintf(buf, sizeof(buf), "%.2fM", v / 1e6);
  else
    std::snprintf(buf, sizeof(buf), "%.1fK", v / 1e3);
  return buf;
}

}  // namespace

std::string report_table(std::span<const ModelConfig> configs) {
  std::string out =
      "   G     H    params     ref    d%     MACs/s     ref    d%\n";
  char line[160];
  for (const auto& cfg : configs) {
    ComplexityReport rep = count_params(cfg);
    const ReferenceRow* ref = find_reference(cfg.groups, cfg.hidden);
    if (ref) {
      double dp = 100.0 * (static_cast<double>(rep.total_params) - ref->size_ref) / ref->size_ref;
      double dm = 100.0 * (rep.macs_per_second - ref->macs_ref) / ref->macs_ref;
      std::snprintf(line, sizeof(line), "%4d  %4d  %8s  %6s %+5.2f  %9s  %6s %+5.2f\n",
                    cfg.groups, cfg.hidden,
                    human(static_cast<double>(rep.total_params)).c_str(),
                    human(ref->size_ref).c_str(), dp, human(rep.macs_per_second).c_str(),
                    human(ref->macs_ref).c_str(), dm);
    } else {
      std::snprintf(line, sizeof(line), "%4d  %4d  %8s       -     -  %9s       -     -\n",
                    cfg.groups, cfg.hidden,
                    human(static_cast<double>(rep.total_params)).c_str(),
                    human(rep.macs_per_second).c_str());
    }
    out += line;
  }
  return out;
}

}  // namespace gcbf
