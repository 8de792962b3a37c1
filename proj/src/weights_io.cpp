// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/weights_io.hpp"

#include <cstring>
#include <fstream>
#include <map>

#include "gcbf/errors.hpp"

namespace gcbf {
namespace {

constexpr char kMagic[4] = {'G', 'C', 'B', 'F'};
constexpr uint32_t kVersion = 1;

void wr_u16(std::ostream& os, uint16_t v) {
  uint8_t b[2] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}
void wr_u32(std::ostream& os, uint32_t v) {
  uint8_t b[4] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8),
                  static_cast<uint8_t>(v >> 16), static_cast<uint8_t>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}
void wr_u64(std::ostream& os, uint64_t v) {
  wr_u32(os, static_cast<uint32_t>(v));
  wr_u32(os, static_cast<uint32_t>(v >> 32));
}
void wr_f32(std::ostream& os, float v) {
  uint32_t u;
  std::memcpy(&u, &v, 4);
  wr_u32(os, u);
}
void wr_f64(std::ostream& os, double v) {
  uint64_t u;
  std::memcpy(&u, &v, 8);
  wr_u64(os, u);
}

class Reader {
 public:
  Reader(std::istream& is, const std::string& path) : is_(is), path_(path) {}

  void bytes(void* dst, size_t n) {
    is_.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (is_.gcount() != static_cast<std::streamsize>(n))
      raise(ErrorCode::kTruncated, path_ + ": unexpected end of file");
  }
  uint16_t u16() {
    uint8_t b[2];
    bytes(b, 2);
    return static_cast<uint16_t>(b[0] | (b[1] << 8));
  }
  uint32_t u32() {
    uint8_t b[4];
    bytes(b, 4);
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
  }
  float f32() {
    uint32_t u = u32();
    float v;
    std::memcpy(&v, &u, 4);
    return v;
  }
  double f64() {
    uint64_t u = u32();
    u |= static_cast<uint64_t>(u32()) << 32;
    double v;
    std::memcpy(&v, &u, 8);
    return v;
  }
  bool at_eof() {
    is_.peek();
    return is_.eof();
  }

 private:
  std::istream& is_;
  const std::string& path_;
};

}  // namespace

void save_weights(const WeightStore& store, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) raise(ErrorCode::kIoFailure, "cannot create " + path);

  const ModelConfig& cfg = store.config;
  f.write(kMagic, 4);
  wr_u32(f, kVersion);
  wr_u32(f, static_cast<uint32_t>(cfg.groups));
  wr_u32(f, static_cast<uint32_t>(cfg.hidden));
  wr_u32(f, static_cast<uint32_t>(cfg.latent));
  wr_u32(f, static_cast<uint32_t>(cfg.mics_per_side));
  wr_u32(f, static_cast<uint32_t>(cfg.bins));
  wr_u32(f, static_cast<uint32_t>(cfg.speakers));
  wr_u32(f, cfg.post_filter ? 1 : 0);
  wr_f64(f, static_cast<double>(cfg.w_scale));

  auto refs = tensor_refs(const_cast<WeightStore&>(store));
  wr_u32(f, static_cast<uint32_t>(refs.size()));
  for (const auto& r : refs) {
    wr_u16(f, static_cast<uint16_t>(r.name.size()));
    f.write(r.name.data(), static_cast<std::streamsize>(r.name.size()));
    f.put(static_cast<char>(r.dims.size()));
    for (uint32_t d : r.dims) wr_u32(f, d);
    for (float v : r.data) wr_f32(f, v);
  }
  if (!f) raise(ErrorCode::kIoFailure, "write failed for " + path);
}

WeightStore load_weights(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) raise(ErrorCode::kIoFailure, "cannot open " + path);
  Reader rd(f, path);

  char magic[4];
  rd.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0)
    raise(ErrorCode::kBadMagic, path + ": not a weight file (bad magic)");
  uint32_t version = rd.u32();
  if (version != kVersion)
    raise(ErrorCode::kBadVersion,
          path + ": unsupported format version " + std::to_string(version));

  ModelConfig cfg;
  cfg.groups = static_cast<int>(rd.u32());
  cfg.hidden = static_cast<int>(rd.u32());
  cfg.latent = static_cast<int>(rd.u32());
  cfg.mics_per_side = static_cast<int>(rd.u32());
  cfg.bins = static_cast<int>(rd.u32());
  cfg.speakers = static_cast<int>(rd.u32());
  cfg.post_filter = rd.u32() != 0;
  cfg.w_scale = static_cast<float>(rd.f64());
  cfg.validate();

  WeightStore store = make_empty_store(cfg);
  auto refs = tensor_refs(store);
  std::map<std::string, TensorRef*> by_name;
  for (auto& r : refs) by_name[r.name] = &r;

  uint32_t count = rd.u32();
  if (count != refs.size())
    raise(ErrorCode::kBadFormat, path + ": expected " + std::to_string(refs.size()) +
                                     " tensors for this config, file has " +
                                     std::to_string(count));
  std::map<std::string, bool> seen;
  for (uint32_t i = 0; i < count; ++i) {
    uint16_t name_len = rd.u16();
    std::string name(name_len, '\0');
    rd.bytes(name.data(), name_len);
    uint8_t rank;
    rd.bytes(&rank, 1);
    std::vector<uint32_t> dims(rank);
    size_t n = 1;
    for (auto& d : dims) {
      d = rd.u32();
      n *= d;
    }
    auto it = by_name.find(name);
    if (it == by_name.end())
      raise(ErrorCode::kBadFormat, path + ": unknown tensor \"" + name + "\"");
    if (seen[name])
      raise(ErrorCode::kBadFormat, path + ": duplicate tensor \"" + name + "\"");
    seen[name] = true;
    TensorRef* ref = it->second;
    if (dims != ref->dims) {
      std::string want, got;
      for (uint32_t d : ref->dims) want += (want.empty() ? "" : "x") + std::to_string(d);
      for (uint32_t d : dims) got += (got.empty() ? "" : "x") + std::to_string(d);
      raise(ErrorCode::kShapeMismatch,
            path + ": tensor \"" + name + "\": expected shape " + want + ", file has " + got);
    }
    for (size_t j = 0; j < n; ++j) ref->data[j] = rd.f32();
  }
  return store;
}

}  // namespace gcbf
