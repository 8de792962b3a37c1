// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gcbf/audio.hpp"
#include "gcbf/complexity.hpp"
#include "gcbf/errors.hpp"
#include "gcbf/metrics.hpp"
#include "gcbf/model.hpp"
#include "gcbf/objectives.hpp"
#include "gcbf/scene.hpp"
#include "gcbf/stream.hpp"
#include "gcbf/weights_io.hpp"
#include "json.hpp"

namespace gcbf::cli {
namespace {

struct Report {
  bool json = false;
  nlohmann::json obj;
  std::string text;

  void add(const std::string& key, double v) {
    obj[key] = v;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    text += key + "=" + buf + "\n";
  }
  void add(const std::string& key, const std::string& v) {
    obj[key] = v;
    text += key + "=" + v + "\n";
  }
  void print() const {
    if (json)
      std::cout << obj.dump(2) << "\n";
    else
      std::cout << text;
  }
};

ModelConfig config_from_flags(int groups, int hidden, int latent, bool no_post_filter,
                              double w_scale) {
  ModelConfig cfg;
  cfg.groups = groups;
  cfg.hidden = hidden;
  cfg.latent = latent;
  cfg.post_filter = !no_post_filter;
  cfg.w_scale = static_cast<float>(w_scale);
  cfg.validate();
  return cfg;
}

int cmd_separate(const std::string& weights_path, const std::string& input_path,
                 const std::string& out_dir, int block, bool json) {
  StftConfig stft_cfg;
  if (block <= 0 || block % stft_cfg.shift != 0)
    raise(ErrorCode::kInvalidArgument, "--block must be a positive multiple of 16");

  Model model(load_weights(weights_path));
  AudioBuffer input = read_wav(input_path);

  auto start = std::chrono::steady_clock::now();
  AudioBuffer out = separate_streaming(model, input, block);
  auto stop = std::chrono::steady_clock::now();
  double wall = std::chrono::duration<double>(stop - start).count();
  double duration = static_cast<double>(input.num_samples()) / kSampleRate;

  AudioBuffer spk1, spk2;
  spk1.channels = {out.channels[0], out.channels[1]};
  spk2.channels = {out.channels[2], out.channels[3]};
  write_wav(out_dir + "/speaker1.wav", spk1);
  write_wav(out_dir + "/speaker2.wav", spk2);

  Report rep;
  rep.json = json;
  rep.add("speaker1", out_dir + "/speaker1.wav");
  rep.add("speaker2", out_dir + "/speaker2.wav");
  rep.add("samples", static_cast<double>(input.num_samples()));
  rep.add("rtf", duration > 0 ? wall / duration : 0.0);
  rep.print();
  return 0;
}

int cmd_info(int groups, int hidden, int latent, bool no_post_filter, double w_scale,
             bool table, bool json) {
  if (table) {
    std::vector<ModelConfig> configs;
    for (const auto& row : reference_rows()) {
      ModelConfig cfg;
      cfg.groups = row.groups;
      cfg.hidden = row.hidden;
      configs.push_back(cfg);
    }
    std::cout << report_table(configs);
    return 0;
  }
  ModelConfig cfg = config_from_flags(groups, hidden, latent, no_post_filter, w_scale);
  ComplexityReport rep = count_params(cfg);

  Report out;
  out.json = json;
  out.add("groups", static_cast<double>(cfg.groups));
  out.add("hidden", static_cast<double>(cfg.hidden));
  out.add("latent", static_cast<double>(cfg.latent));
  out.add("params_total", static_cast<double>(rep.total_params));
  out.add("params_grouping", static_cast<double>(rep.grouping_params));
  out.add("params_conv", static_cast<double>(rep.conv_params));
  out.add("params_tac", static_cast<double>(rep.tac_params));
  out.add("params_gru", static_cast<double>(rep.gru_params));
  out.add("params_ungroup", static_cast<double>(rep.ungroup_params));
  out.add("params_filter_heads", static_cast<double>(rep.filter_params));
  out.add("macs_per_frame", static_cast<double>(rep.macs_per_frame));
  out.add("macs_per_second", rep.macs_per_second);
  if (const ReferenceRow* ref = find_reference(cfg.groups, cfg.hidden)) {
    out.add("size_ref", ref->size_ref);
    out.add("size_delta_pct",
            100.0 * (static_cast<double>(rep.total_params) - ref->size_ref) / ref->size_ref);
    out.add("macs_ref", ref->macs_ref);
    out.add("macs_delta_pct", 100.0 * (rep.macs_per_second - ref->macs_ref) / ref->macs_ref);
  }
  out.print();
  return 0;
}

int cmd_simulate(const std::string& s1_path, const std::string& s2_path,
                 const std::string& noise_path, SceneSpec spec,
                 const std::string& out_dir, bool json) {
  spec.validate();
  AudioBuffer s1 = read_wav(s1_path);
  AudioBuffer s2 = read_wav(s2_path);
  AudioBuffer noise = read_wav(noise_path);
  if (s1.num_channels() != 1 || s2.num_channels() != 1 || noise.num_channels() != 1)
    raise(ErrorCode::kBadFormat, "simulate: sources must be mono");
  size_t n = std::min({s1.num_samples(), s2.num_samples(), noise.num_samples()});
  if (n == 0) raise(ErrorCode::kBadFormat, "simulate: empty source");
  for (auto* b : {&s1, &s2, &noise}) b->channels[0].resize(n);

  RenderedScene scene = render_scene(spec, s1.channels[0], s2.channels[0], noise.channels[0]);
  ScaledScene scaled = scale_sources(scene, spec.seed);

  write_wav(out_dir + "/mixture.wav", scaled.mixture);
  write_wav(out_dir + "/target1.wav", scaled.target1);
  write_wav(out_dir + "/target2.wav", scaled.target2);

  SceneManifest manifest;
  manifest.set("speaker1_azimuth_deg", spec.speaker1.azimuth_deg);
  manifest.set("speaker1_distance_m", spec.speaker1.distance_m);
  manifest.set("speaker2_azimuth_deg", spec.speaker2.azimuth_deg);
  manifest.set("speaker2_distance_m", spec.speaker2.distance_m);
  manifest.set("noise_azimuth_deg", spec.noise.azimuth_deg);
  manifest.set("noise_distance_m", spec.noise.distance_m);
  manifest.set("t60_s", spec.t60);
  for (auto& e : scaled.manifest.entries) manifest.entries.push_back(e);
  std::ofstream mf(out_dir + "/scene.txt");
  if (!mf) raise(ErrorCode::kIoFailure, "cannot create " + out_dir + "/scene.txt");
  mf << manifest.to_text();

  Report rep;
  rep.json = json;
  for (const auto& [k, v] : manifest.entries) rep.add(k, v);
  rep.add("mixture", out_dir + "/mixture.wav");
  rep.print();
  return 0;
}

int cmd_eval(const std::string& est1_path, const std::string& est2_path,
             const std::string& ref1_path, const std::string& ref2_path, bool upit,
             bool reference_align, bool json) {
  auto load_stereo = [](const std::string& path) {
    AudioBuffer b = read_wav(path);
    if (b.num_channels() != 2)
      raise(ErrorCode::kBadFormat, path + ": expected stereo");
    return b;
  };
  AudioBuffer e1 = load_stereo(est1_path), e2 = load_stereo(est2_path);
  AudioBuffer r1 = load_stereo(ref1_path), r2 = load_stereo(ref2_path);

  size_t n = std::min({e1.num_samples(), e2.num_samples(), r1.num_samples(), r2.num_samples()});
  if (reference_align && n <= static_cast<size_t>(kEngineLatencySamples))
    raise(ErrorCode::kBadFormat, "eval: signals shorter than the engine latency");
  auto trim = [&](AudioBuffer& b, size_t lead) {
    for (auto& ch : b.channels) {
      ch.erase(ch.begin(), ch.begin() + static_cast<long>(lead));
      ch.resize(n - (reference_align ? kEngineLatencySamples : 0));
    }
  };
  if (reference_align) {
    // estimates are delayed by the engine latency relative to the references
    trim(e1, kEngineLatencySamples);
    trim(e2, kEngineLatencySamples);
    trim(r1, 0);
    trim(r2, 0);
  } else {
    trim(e1, 0);
    trim(e2, 0);
    trim(r1, 0);
    trim(r2, 0);
  }

  auto as_multi = [](const AudioBuffer& b) {
    return MultiSignal{b.channels[0], b.channels[1]};
  };
  int perm = 0;
  double upit_loss = 0.0;
  if (upit) {
    LossParams lp;
    LossStftConfig lc;
    UpitResult r = upit_assign(as_multi(e1), as_multi(e2), as_multi(r1), as_multi(r2), lp, lc);
    perm = r.permutation;
    upit_loss = r.loss;
  }
  const AudioBuffer& m1 = perm == 0 ? r1 : r2;
  const AudioBuffer& m2 = perm == 0 ? r2 : r1;

  auto stereo_sisdr = [](const AudioBuffer& est, const AudioBuffer& ref) {
    return 0.5 * (si_sdr(est.channels[0], ref.channels[0]) +
                  si_sdr(est.channels[1], ref.channels[1]));
  };
  double v1 = stereo_sisdr(e1, m1);
  double v2 = stereo_sisdr(e2, m2);

  Report rep;
  rep.json = json;
  rep.add("si_sdr_speaker1_db", v1);
  rep.add("si_sdr_speaker2_db", v2);
  rep.add("si_sdr_mean_db", 0.5 * (v1 + v2));
  if (upit) {
    rep.add("upit_permutation", static_cast<double>(perm));
    rep.add("upit_loss", upit_loss);
  }
  rep.print();
  return 0;
}

int cmd_init_weights(int groups, int hidden, int latent, bool no_post_filter,
                     double w_scale, uint64_t seed, const std::string& out_path) {
  ModelConfig cfg = config_from_flags(groups, hidden, latent, no_post_filter, w_scale);
  WeightStore store = init_weights(cfg, seed);
  save_weights(store, out_path);
  std::cout << "wrote " << out_path << " (" << store.total_scalars() << " values)\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"binaural two-speaker separation via predicted filter-and-sum beamforming"};
  app.require_subcommand(1);

  // separate
  std::string weights_path, input_path, out_dir = ".";
  int block = 160;
  bool json = false;
  auto* sep = app.add_subcommand("separate", "separate a 4-channel 16 kHz WAV into two stereo WAVs");
  sep->add_option("weights", weights_path, "weight file")->required();
  sep->add_option("input", input_path, "4-channel input WAV")->required();
  sep->add_option("--out-dir", out_dir, "output directory");
  sep->add_option("--block", block, "block size in samples (multiple of 16)");
  sep->add_flag("--json", json, "machine-readable output");

  // info
  int groups = 1, hidden = 256, latent = 256;
  bool no_post_filter = false, table = false;
  double w_scale = 1.0;
  auto* info = app.add_subcommand("info", "parameter and MAC accounting for a configuration");
  info->add_option("--groups", groups, "number of parallel groups");
  info->add_option("--hidden", hidden, "per-group hidden size");
  info->add_option("--latent", latent, "latent size P");
  info->add_flag("--no-post-filter", no_post_filter, "drop the post-filter heads");
  info->add_option("--w-scale", w_scale, "spatial filter scale");
  info->add_flag("--table", table, "print all standard configurations");
  info->add_flag("--json", json, "machine-readable output");

  // simulate
  std::string s1_path, s2_path, noise_path;
  SceneSpec spec;
  uint64_t seed = 0;
  auto* sim = app.add_subcommand("simulate", "render a synthetic spatial scene");
  sim->add_option("speech1", s1_path, "mono speech WAV")->required();
  sim->add_option("speech2", s2_path, "mono speech WAV")->required();
  sim->add_option("noise", noise_path, "mono noise WAV")->required();
  sim->add_option("--az1", spec.speaker1.azimuth_deg, "speaker1 azimuth (deg, +90 = left)");
  sim->add_option("--dist1", spec.speaker1.distance_m, "speaker1 distance (m)");
  sim->add_option("--az2", spec.speaker2.azimuth_deg, "speaker2 azimuth (deg)");
  sim->add_option("--dist2", spec.speaker2.distance_m, "speaker2 distance (m)");
  sim->add_option("--az-noise", spec.noise.azimuth_deg, "noise azimuth (deg)");
  sim->add_option("--dist-noise", spec.noise.distance_m, "noise distance (m)");
  sim->add_option("--t60", spec.t60, "reverberation time (s)");
  sim->add_option("--seed", seed, "random seed");
  sim->add_option("--out-dir", out_dir, "output directory");
  sim->add_flag("--json", json, "machine-readable output");

  // eval
  std::string est1_path, est2_path, ref1_path, ref2_path;
  bool upit = false, reference_align = false;
  auto* ev = app.add_subcommand("eval", "SI-SDR evaluation of separated outputs");
  ev->add_option("est1", est1_path, "speaker1 estimate (stereo WAV)")->required();
  ev->add_option("est2", est2_path, "speaker2 estimate (stereo WAV)")->required();
  ev->add_option("ref1", ref1_path, "speaker1 reference (stereo WAV)")->required();
  ev->add_option("ref2", ref2_path, "speaker2 reference (stereo WAV)")->required();
  ev->add_flag("--upit", upit, "choose the speaker pairing by permutation-invariant loss");
  ev->add_flag("--reference-align", reference_align,
               "trim the 32-sample engine latency before scoring");
  ev->add_flag("--json", json, "machine-readable output");

  // init-weights
  std::string out_path = "weights.gcbf";
  auto* init = app.add_subcommand("init-weights", "write a seeded random weight file");
  init->add_option("--groups", groups, "number of parallel groups")->required();
  init->add_option("--hidden", hidden, "per-group hidden size")->required();
  init->add_option("--latent", latent, "latent size P");
  init->add_flag("--no-post-filter", no_post_filter, "drop the post-filter heads");
  init->add_option("--w-scale", w_scale, "spatial filter scale");
  init->add_option("--seed", seed, "random seed");
  init->add_option("--out", out_path, "output path");

  try {
    app.parse(argc, argv);
    if (sep->parsed()) return cmd_separate(weights_path, input_path, out_dir, block, json);
    if (info->parsed())
      return cmd_info(groups, hidden, latent, no_post_filter, w_scale, table, json);
    if (sim->parsed()) {
      spec.seed = seed;
      return cmd_simulate(s1_path, s2_path, noise_path, spec, out_dir, json);
    }
    if (ev->parsed())
      return cmd_eval(est1_path, est2_path, ref1_path, ref2_path, upit, reference_align, json);
    if (init->parsed())
      return cmd_init_weights(groups, hidden, latent, no_post_filter, w_scale, seed, out_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace gcbf::cli
