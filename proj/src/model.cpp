// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/model.hpp"

#include <cmath>
#include <cstring>
#include <functional>
#include <numeric>

#include "gcbf/errors.hpp"
#include "gcbf/rng.hpp"

namespace gcbf {

void ModelConfig::validate() const {
  if (groups < 1) raise(ErrorCode::kInvalidConfig, "groups must be >= 1");
  if (hidden < 1) raise(ErrorCode::kInvalidConfig, "hidden size must be >= 1");
  if (latent < 1) raise(ErrorCode::kInvalidConfig, "latent size must be >= 1");
  if (latent % groups != 0)
    raise(ErrorCode::kInvalidConfig,
          "latent size " + std::to_string(latent) + " not divisible by " +
              std::to_string(groups) + " groups");
  if (mics_per_side != 2 || bins != 17 || speakers != 2)
    raise(ErrorCode::kInvalidConfig,
          "engine is fixed at 2 mics per side, 17 bins, 2 speakers");
  if (!(w_scale > 0.0f) || !std::isfinite(w_scale))
    raise(ErrorCode::kInvalidConfig, "w_scale must be positive and finite");
}

size_t TensorShape::count() const {
  size_t n = 1;
  for (uint32_t d : dims) n *= d;
  return n;
}

namespace {

// Single walk defining canonical tensor names, order and shapes. `store`
// may be null (shape-only enumeration for the complexity accountant).
void walk_tensors(
    const ModelConfig& cfg, WeightStore* store,
    const std::function<void(const char*, std::vector<uint32_t>, std::vector<float>*)>& fn) {
  const uint32_t P = cfg.latent, H = cfg.hidden, W = cfg.group_width();
  const uint32_t FEAT = cfg.feature_dim();          // 4FM
  const uint32_t CDIM = 4 * cfg.bins;               // 4F

  auto fc_t = [&](const char* base, FcParams* p, uint32_t out, uint32_t in) {
    fn((std::string(base) + ".weight").c_str(), {out, in}, p ? &p->weight : nullptr);
    fn((std::string(base) + ".bias").c_str(), {out}, p ? &p->bias : nullptr);
  };
  auto prelu_t = [&](const char* name, PreluParams* p) {
    fn(name, {1}, p ? &p->slopes : nullptr);
  };
  auto dconv_t = [&](const char* base, DepthwiseConvParams* p, uint32_t kernel) {
    fn((std::string(base) + ".weight").c_str(), {H, kernel}, p ? &p->weight : nullptr);
    fn((std::string(base) + ".bias").c_str(), {H}, p ? &p->bias : nullptr);
  };
  auto gru_t = [&](const char* base, GruParams* p) {
    fn((std::string(base) + ".w_ih").c_str(), {3 * H, H}, p ? &p->w_ih : nullptr);
    fn((std::string(base) + ".w_hh").c_str(), {3 * H, H}, p ? &p->w_hh : nullptr);
    fn((std::string(base) + ".b_ih").c_str(), {3 * H}, p ? &p->b_ih : nullptr);
    fn((std::string(base) + ".b_hh").c_str(), {3 * H}, p ? &p->b_hh : nullptr);
  };
  auto tac_t = [&](const char* base, TacParams* p) {
    std::string b(base);
    fc_t((b + ".fc1").c_str(), p ? &p->fc1 : nullptr, 2 * H, H);
    prelu_t((b + ".fc1.prelu").c_str(), p ? &p->act1 : nullptr);
    fc_t((b + ".fc2").c_str(), p ? &p->fc2 : nullptr, 2 * H, 2 * H);
    prelu_t((b + ".fc2.prelu").c_str(), p ? &p->act2 : nullptr);
    fc_t((b + ".fc3").c_str(), p ? &p->fc3 : nullptr, H, 4 * H);
    prelu_t((b + ".fc3.prelu").c_str(), p ? &p->act3 : nullptr);
  };

  fc_t("grouping", store ? &store->grouping : nullptr, P, FEAT);

  fc_t("conv.fc", store ? &store->conv_fc : nullptr, H, W);
  prelu_t("conv.fc.prelu", store ? &store->conv_act : nullptr);
  dconv_t("conv.ds5.dw", store ? &store->conv_ds5_dw : nullptr, 5);
  fc_t("conv.ds5.pw", store ? &store->conv_ds5_pw : nullptr, H, H);
  prelu_t("conv.ds5.prelu", store ? &store->conv_ds5_act : nullptr);
  dconv_t("conv.ds3.dw", store ? &store->conv_ds3_dw : nullptr, 3);
  fc_t("conv.ds3.pw", store ? &store->conv_ds3_pw : nullptr, H, H);
  prelu_t("conv.ds3.prelu", store ? &store->conv_ds3_act : nullptr);
  dconv_t("conv.skip", store ? &store->conv_skip : nullptr, 1);

  if (cfg.groups > 1) tac_t("tac_a", store ? &store->tac_a : nullptr);

  gru_t("gru1", store ? &store->gru1 : nullptr);
  gru_t("gru2", store ? &store->gru2 : nullptr);
  dconv_t("gru.skip", store ? &store->gru_skip : nullptr, 1);

  if (cfg.groups > 1) tac_t("tac_b", store ? &store->tac_b : nullptr);

  fc_t("ungroup", store ? &store->ungroup : nullptr, W, H);

  static const char* w_names[4] = {"head.w1l", "head.w1r", "head.w2l", "head.w2r"};
  for (int i = 0; i < 4; ++i)
    fc_t(w_names[i], store ? &store->w_heads[i] : nullptr, FEAT, P);
  if (cfg.post_filter) {
    static const char* c_names[2] = {"head.c1", "head.c2"};
    for (int i = 0; i < 2; ++i)
      fc_t(c_names[i], store ? &store->c_heads[i] : nullptr, CDIM, P);
  }
}

void set_struct_dims(WeightStore& s) {
  const ModelConfig& cfg = s.config;
  const int P = cfg.latent, H = cfg.hidden, W = cfg.group_width();
  const int FEAT = cfg.feature_dim(), CDIM = 4 * cfg.bins;

  auto fc_dims = [](FcParams& p, int out, int in) { p.out = out; p.in = in; };
  auto dw_dims = [&](DepthwiseConvParams& p, int kernel) {
    p.channels = H;
    p.kernel = kernel;
  };
  fc_dims(s.grouping, P, FEAT);
  fc_dims(s.conv_fc, H, W);
  dw_dims(s.conv_ds5_dw, 5);
  fc_dims(s.conv_ds5_pw, H, H);
  dw_dims(s.conv_ds3_dw, 3);
  fc_dims(s.conv_ds3_pw, H, H);
  dw_dims(s.conv_skip, 1);
  if (cfg.groups > 1) {
    for (TacParams* t : {&s.tac_a, &s.tac_b}) {
      fc_dims(t->fc1, 2 * H, H);
      fc_dims(t->fc2, 2 * H, 2 * H);
      fc_dims(t->fc3, H, 4 * H);
    }
  }
  s.gru1.hidden = H;
  s.gru2.hidden = H;
  dw_dims(s.gru_skip, 1);
  fc_dims(s.ungroup, W, H);
  for (auto& h : s.w_heads) fc_dims(h, FEAT, P);
  if (cfg.post_filter)
    for (auto& h : s.c_heads) fc_dims(h, CDIM, P);
}

}  // namespace

std::vector<TensorShape> tensor_shapes(const ModelConfig& cfg) {
  std::vector<TensorShape> out;
  walk_tensors(cfg, nullptr,
               [&](const char* name, std::vector<uint32_t> dims, std::vector<float>*) {
                 out.push_back({name, std::move(dims)});
               });
  return out;
}

std::vector<TensorRef> tensor_refs(WeightStore& store) {
  std::vector<TensorRef> out;
  walk_tensors(store.config, &store,
               [&](const char* name, std::vector<uint32_t> dims, std::vector<float>* v) {
                 out.push_back({name, std::move(dims), std::span<float>(*v)});
               });
  return out;
}

WeightStore make_empty_store(const ModelConfig& cfg) {
  cfg.validate();
  WeightStore s;
  s.config = cfg;
  set_struct_dims(s);
  walk_tensors(cfg, &s,
               [&](const char*, std::vector<uint32_t> dims, std::vector<float>* v) {
                 size_t n = 1;
                 for (uint32_t d : dims) n *= d;
                 v->assign(n, 0.0f);
               });
  return s;
}

size_t WeightStore::total_scalars() const {
  size_t n = 0;
  auto refs = tensor_refs(const_cast<WeightStore&>(*this));
  for (const auto& r : refs) n += r.data.size();
  return n;
}

WeightStore init_weights(const ModelConfig& cfg, uint64_t seed) {
  WeightStore s = make_empty_store(cfg);
  Rng rng(seed);
  for (auto& ref : tensor_refs(s)) {
    const std::string& name = ref.name;
    auto ends_with = [&](const char* suf) {
      size_t l = std::strlen(suf);
      return name.size() >= l && name.compare(name.size() - l, l, suf) == 0;
    };
    if (ends_with(".weight") || ends_with(".w_ih") || ends_with(".w_hh")) {
      float bound = 1.0f / std::sqrt(static_cast<float>(ref.dims.back()));
      for (float& v : ref.data) v = rng.uniform_f(-bound, bound);
    } else if (ends_with(".prelu")) {
      for (float& v : ref.data) v = 0.25f;
    }  // biases stay zero
  }
  return s;
}

ModelState::ModelState(const ModelConfig& cfg) {
  const int G = cfg.groups, H = cfg.hidden;
  ds5_hist.assign(G, ConvHistory(H, 5));
  ds3_hist.assign(G, ConvHistory(H, 3));
  k1_hist = ConvHistory(H, 1);
  h1.assign(static_cast<size_t>(G) * H, 0.0f);
  h2.assign(static_cast<size_t>(G) * H, 0.0f);

  features.resize(cfg.feature_dim());
  latent_vec.resize(cfg.latent);
  group_out.resize(static_cast<size_t>(G) * H);
  ungrouped.resize(cfg.latent);
  t0.resize(H);
  t1.resize(H);
  t2.resize(H);
  skip.resize(H);
  tac_t.resize(static_cast<size_t>(G) * 2 * H);
  tac_mean.resize(2 * H);
  tac_post.resize(2 * H);
  tac_cat.resize(4 * H);
  tac_out.resize(H);
  gru_scratch.resize(6 * H);
  head_out.resize(cfg.feature_dim());
}

void ModelState::reset() {
  for (auto& h : ds5_hist) h.reset();
  for (auto& h : ds3_hist) h.reset();
  std::fill(h1.begin(), h1.end(), 0.0f);
  std::fill(h2.begin(), h2.end(), 0.0f);
}

Model::Model(WeightStore store) : store_(std::move(store)) {
  store_.config.validate();
  const ModelConfig& cfg = store_.config;

  if (cfg.groups == 1) {
    if (!store_.tac_a.fc1.weight.empty() || !store_.tac_b.fc1.weight.empty())
      raise(ErrorCode::kInvalidConfig,
            "TAC weights present but groups == 1 deactivates TAC");
  }
  if (!cfg.post_filter) {
    if (!store_.c_heads[0].weight.empty() || !store_.c_heads[1].weight.empty())
      raise(ErrorCode::kInvalidConfig,
            "post-filter heads present but post filter is disabled");
  }

  auto expected = tensor_shapes(cfg);
  auto refs = tensor_refs(store_);
  for (size_t i = 0; i < expected.size(); ++i) {
    if (refs[i].data.size() != expected[i].count())
      raise(ErrorCode::kShapeMismatch,
            "tensor " + expected[i].name + ": expected " +
                std::to_string(expected[i].count()) + " values, got " +
                std::to_string(refs[i].data.size()));
    for (float v : refs[i].data)
      if (!std::isfinite(v))
        raise(ErrorCode::kInvalidConfig,
              "tensor " + expected[i].name + " contains non-finite values");
  }
}

void Model::features_from_frame(const std::complex<float>* y, float* feat) const {
  const int mics = store_.config.num_mics(), bins = store_.config.bins;
  const int half = mics * bins;
  for (int m = 0; m < mics; ++m) {
    for (int f = 0; f < bins; ++f) {
      feat[m * bins + f] = y[m * bins + f].real();
      feat[half + m * bins + f] = y[m * bins + f].imag();
    }
  }
}

void Model::tac(const TacParams& p, float* groups_vec, std::vector<float>& t_buf,
                ModelState& st, ForwardStats* stats) const {
  const int G = store_.config.groups, H = store_.config.hidden;
  for (int g = 0; g < G; ++g) {
    fc(p.fc1, groups_vec + static_cast<size_t>(g) * H, t_buf.data() + static_cast<size_t>(g) * 2 * H);
    prelu(p.act1, t_buf.data() + static_cast<size_t>(g) * 2 * H, 2 * H);
  }
  std::fill(st.tac_mean.begin(), st.tac_mean.end(), 0.0f);
  for (int g = 0; g < G; ++g)  // fixed summation order, reproducible
    for (int j = 0; j < 2 * H; ++j) st.tac_mean[j] += t_buf[static_cast<size_t>(g) * 2 * H + j];
  const float inv_g = 1.0f / static_cast<float>(G);
  for (int j = 0; j < 2 * H; ++j) st.tac_mean[j] *= inv_g;
  fc(p.fc2, st.tac_mean.data(), st.tac_post.data());
  prelu(p.act2, st.tac_post.data(), 2 * H);
  for (int g = 0; g < G; ++g) {
    std::memcpy(st.tac_cat.data(), t_buf.data() + static_cast<size_t>(g) * 2 * H,
                sizeof(float) * 2 * H);
    std::memcpy(st.tac_cat.data() + 2 * H, st.tac_post.data(), sizeof(float) * 2 * H);
    fc(p.fc3, st.tac_cat.data(), st.tac_out.data());
    prelu(p.act3, st.tac_out.data(), H);
    float* xg = groups_vec + static_cast<size_t>(g) * H;
    for (int j = 0; j < H; ++j) xg[j] += st.tac_out[j];
  }
  if (stats) ++stats->tac_evaluations;
}

void Model::estimate_filters(const float* latent_vec, float* head_scratch,
                             FilterFrame& out) const {
  const ModelConfig& cfg = store_.config;
  const int bins = cfg.bins, mics = cfg.num_mics();
  const int half = mics * bins;
  const float ws = cfg.w_scale;
  for (int i = 0; i < 4; ++i) {
    fc(store_.w_heads[i], latent_vec, head_scratch);
    const int spk = i / 2, ch = i % 2;
    for (int m = 0; m < mics; ++m) {
      for (int f = 0; f < bins; ++f) {
        out.w_at(spk, ch, m, f) = {ws * std::tanh(head_scratch[m * bins + f]),
                                   ws * std::tanh(head_scratch[half + m * bins + f])};
      }
    }
  }
  if (cfg.post_filter) {
    const int chalf = 2 * bins;
    for (int s = 0; s < 2; ++s) {
      fc(store_.c_heads[s], latent_vec, head_scratch);
      for (int ch = 0; ch < 2; ++ch)
        for (int f = 0; f < bins; ++f)
          out.c_at(s, ch, f) = {std::tanh(head_scratch[ch * bins + f]),
                                std::tanh(head_scratch[chalf + ch * bins + f])};
    }
  } else {
    out.c.fill({1.0f, 0.0f});
  }
}

void Model::forward_frame(ModelState& st, const std::complex<float>* y_frame,
                          FilterFrame& out, ForwardStats* stats) const {
  const ModelConfig& cfg = store_.config;
  const int G = cfg.groups, H = cfg.hidden, W = cfg.group_width();

  features_from_frame(y_frame, st.features.data());
  fc(store_.grouping, st.features.data(), st.latent_vec.data());

  // Conv module, weights shared across groups.
  for (int g = 0; g < G; ++g) {
    const float* xg = st.latent_vec.data() + static_cast<size_t>(g) * W;
    fc(store_.conv_fc, xg, st.t0.data());
    prelu(store_.conv_act, st.t0.data(), H);  // u
    dconv_step(store_.conv_ds5_dw, st.ds5_hist[g], st.t0.data(), st.t1.data());
    fc(store_.conv_ds5_pw, st.t1.data(), st.t2.data());
    prelu(store_.conv_ds5_act, st.t2.data(), H);
    dconv_step(store_.conv_ds3_dw, st.ds3_hist[g], st.t2.data(), st.t1.data());
    fc(store_.conv_ds3_pw, st.t1.data(), st.t2.data());
    prelu(store_.conv_ds3_act, st.t2.data(), H);  // main
    dconv_step(store_.conv_skip, st.k1_hist, st.t0.data(), st.t1.data());
    float* og = st.group_out.data() + static_cast<size_t>(g) * H;
    for (int j = 0; j < H; ++j) og[j] = st.t2[j] + st.t1[j];
  }

  if (G > 1) tac(store_.tac_a, st.group_out.data(), st.tac_t, st, stats);

  // GRU module.
  for (int g = 0; g < G; ++g) {
    float* xg = st.group_out.data() + static_cast<size_t>(g) * H;
    dconv_step(store_.gru_skip, st.k1_hist, xg, st.skip.data());
    float* h1g = st.h1.data() + static_cast<size_t>(g) * H;
    float* h2g = st.h2.data() + static_cast<size_t>(g) * H;
    gru_step(store_.gru1, xg, h1g, st.gru_scratch.data());
    gru_step(store_.gru2, h1g, h2g, st.gru_scratch.data());
    for (int j = 0; j < H; ++j) xg[j] = h2g[j] + st.skip[j];
  }

  if (G > 1) tac(store_.tac_b, st.group_out.data(), st.tac_t, st, stats);

  for (int g = 0; g < G; ++g)
    fc(store_.ungroup, st.group_out.data() + static_cast<size_t>(g) * H,
       st.ungrouped.data() + static_cast<size_t>(g) * W);

  estimate_filters(st.ungrouped.data(), st.head_out.data(), out);
}

void Model::forward_sequence(const std::complex<float>* y, int frames,
                             std::vector<FilterFrame>& out, ForwardStats* stats) const {
  const ModelConfig& cfg = store_.config;
  const int G = cfg.groups, H = cfg.hidden, W = cfg.group_width(), P = cfg.latent;
  const int mics = cfg.num_mics(), bins = cfg.bins;

  out.assign(frames, FilterFrame{});
  if (frames == 0) return;

  ModelState st(cfg);  // scratch + zeroed GRU state
  const size_t T = static_cast<size_t>(frames);

  std::vector<float> lat(T * P);
  for (size_t t = 0; t < T; ++t) {
    features_from_frame(y + t * mics * bins, st.features.data());
    fc(store_.grouping, st.features.data(), lat.data() + t * P);
  }

  std::vector<float> gbuf(T * G * H);  // frame-major (t, g, H)
  std::vector<float> u(T * H), a(T * H), b(T * H);

  for (int g = 0; g < G; ++g) {
    for (size_t t = 0; t < T; ++t)
      fc(store_.conv_fc, lat.data() + t * P + static_cast<size_t>(g) * W, u.data() + t * H);
    prelu(store_.conv_act, u.data(), static_cast<int>(T) * H);
    dconv_full(store_.conv_ds5_dw, u.data(), frames, a.data());
    for (size_t t = 0; t < T; ++t)
      fc(store_.conv_ds5_pw, a.data() + t * H, b.data() + t * H);
    prelu(store_.conv_ds5_act, b.data(), static_cast<int>(T) * H);
    dconv_full(store_.conv_ds3_dw, b.data(), frames, a.data());
    for (size_t t = 0; t < T; ++t)
      fc(store_.conv_ds3_pw, a.data() + t * H, b.data() + t * H);
    prelu(store_.conv_ds3_act, b.data(), static_cast<int>(T) * H);
    dconv_full(store_.conv_skip, u.data(), frames, a.data());
    for (size_t t = 0; t < T; ++t) {
      float* dst = gbuf.data() + (t * G + g) * H;
      const float* main = b.data() + t * H;
      const float* skip = a.data() + t * H;
      for (int j = 0; j < H; ++j) dst[j] = main[j] + skip[j];
    }
  }

  if (G > 1)
    for (size_t t = 0; t < T; ++t)
      tac(store_.tac_a, gbuf.data() + t * G * H, st.tac_t, st, stats);

  std::vector<float> seq(T * H);
  for (int g = 0; g < G; ++g) {
    for (size_t t = 0; t < T; ++t)
      std::memcpy(seq.data() + t * H, gbuf.data() + (t * G + g) * H, sizeof(float) * H);
    dconv_full(store_.gru_skip, seq.data(), frames, a.data());
    float* h1g = st.h1.data() + static_cast<size_t>(g) * H;
    float* h2g = st.h2.data() + static_cast<size_t>(g) * H;
    gru_sequence(store_.gru1, seq.data(), frames, h1g, b.data(), st.gru_scratch.data());
    gru_sequence(store_.gru2, b.data(), frames, h2g, u.data(), st.gru_scratch.data());
    for (size_t t = 0; t < T; ++t) {
      float* dst = gbuf.data() + (t * G + g) * H;
      for (int j = 0; j < H; ++j) dst[j] = u[t * H + j] + a[t * H + j];
    }
  }

  if (G > 1)
    for (size_t t = 0; t < T; ++t)
      tac(store_.tac_b, gbuf.data() + t * G * H, st.tac_t, st, stats);

  for (size_t t = 0; t < T; ++t) {
    for (int g = 0; g < G; ++g)
      fc(store_.ungroup, gbuf.data() + (t * G + g) * H,
         st.ungrouped.data() + static_cast<size_t>(g) * W);
    estimate_filters(st.ungrouped.data(), st.head_out.data(), out[t]);
  }
}

}  // namespace gcbf
