// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "gcbf/errors.hpp"
#include "gcbf/stft.hpp"

namespace gcbf {
namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t rd_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
uint16_t rd_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void wr_u32(std::ostream& os, uint32_t v) {
  uint8_t b[4] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8),
                  static_cast<uint8_t>(v >> 16), static_cast<uint8_t>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}
void wr_u16(std::ostream& os, uint16_t v) {
  uint8_t b[2] = {static_cast<uint8_t>(v), static_cast<uint8_t>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) raise(ErrorCode::kIoFailure, "cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    raise(ErrorCode::kBadMagic, path + ": not a RIFF/WAVE file");

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  bool have_fmt = false;
  const uint8_t* data = nullptr;
  size_t data_size = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* hdr = bytes.data() + pos;
    uint32_t chunk_size = rd_u32(hdr + 4);
    size_t body = pos + 8;
    if (body + chunk_size > bytes.size())
      raise(ErrorCode::kTruncated, path + ": chunk extends past end of file");
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_size < 16) raise(ErrorCode::kBadFormat, path + ": fmt chunk too small");
      const uint8_t* p = bytes.data() + body;
      format = rd_u16(p);
      channels = rd_u16(p + 2);
      rate = rd_u32(p + 4);
      bits = rd_u16(p + 14);
      if (format == kFormatExtensible) {
        if (chunk_size < 40) raise(ErrorCode::kBadFormat, path + ": extensible fmt chunk too small");
        format = rd_u16(p + 24);  // first word of the SubFormat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = chunk_size;
    }
    pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt || !data) raise(ErrorCode::kBadFormat, path + ": missing fmt or data chunk");
  if (rate != static_cast<uint32_t>(kSampleRate))
    raise(ErrorCode::kBadFormat, path + ": sample rate " + std::to_string(rate) +
                                     " not supported (engine runs at 16 kHz only)");
  if (channels < 1 || channels > 6)
    raise(ErrorCode::kBadFormat, path + ": " + std::to_string(channels) +
                                     " channels outside supported range 1..6");

  size_t bytes_per_sample;
  if (format == kFormatPcm && bits == 16) {
    bytes_per_sample = 2;
  } else if (format == kFormatFloat && bits == 32) {
    bytes_per_sample = 4;
  } else {
    raise(ErrorCode::kBadFormat, path + ": unsupported sample format (PCM16 and float32 only)");
  }

  size_t frame_bytes = bytes_per_sample * channels;
  size_t n = data_size / frame_bytes;
  AudioBuffer out;
  out.sample_rate = static_cast<int>(rate);
  out.channels.assign(channels, std::vector<float>(n));
  for (size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      const uint8_t* p = data + (i * channels + c) * bytes_per_sample;
      if (bytes_per_sample == 2) {
        int16_t v = static_cast<int16_t>(rd_u16(p));
        out.channels[c][i] = static_cast<float>(v) / 32768.0f;
      } else {
        uint32_t u = rd_u32(p);
        float v;
        std::memcpy(&v, &u, 4);
        out.channels[c][i] = v;
      }
    }
  }
  return out;
}

void write_wav(const std::string& path, const AudioBuffer& audio, WavFormat format) {
  for (const auto& ch : audio.channels)
    if (ch.size() != audio.num_samples())
      raise(ErrorCode::kShapeMismatch, "write_wav: channel lengths differ");

  const uint16_t channels = static_cast<uint16_t>(audio.num_channels());
  if (channels < 1 || channels > 6)
    raise(ErrorCode::kInvalidConfig, "write_wav: 1..6 channels supported");
  const size_t n = audio.num_samples();
  const bool pcm = format == WavFormat::kPcm16;
  const uint16_t bytes_per_sample = pcm ? 2 : 4;
  const uint32_t data_size = static_cast<uint32_t>(n * channels * bytes_per_sample);
  const uint32_t fact_size = pcm ? 0 : 12;  // non-PCM carries a fact chunk
  const uint32_t riff_size = 4 + 24 + fact_size + 8 + data_size;

  std::ofstream f(path, std::ios::binary);
  if (!f) raise(ErrorCode::kIoFailure, "cannot create " + path);
  f.write("RIFF", 4);
  wr_u32(f, riff_size);
  f.write("WAVE", 4);
  f.write("fmt ", 4);
  wr_u32(f, 16);
  wr_u16(f, pcm ? kFormatPcm : kFormatFloat);
  wr_u16(f, channels);
  wr_u32(f, static_cast<uint32_t>(audio.sample_rate));
  wr_u32(f, static_cast<uint32_t>(audio.sample_rate) * channels * bytes_per_sample);
  wr_u16(f, static_cast<uint16_t>(channels * bytes_per_sample));
  wr_u16(f, pcm ? 16 : 32);
  if (!pcm) {
    f.write("fact", 4);
    wr_u32(f, 4);
    wr_u32(f, static_cast<uint32_t>(n));
  }
  f.write("data", 4);
  wr_u32(f, data_size);

  for (size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      float v = audio.channels[c][i];
      if (pcm) {
        long q = std::lrintf(v * 32768.0f);
        q = std::clamp(q, -32768L, 32767L);
        wr_u16(f, static_cast<uint16_t>(static_cast<int16_t>(q)));
      } else {
        uint32_t u;
        std::memcpy(&u, &v, 4);
        wr_u32(f, u);
      }
    }
  }
  if (!f) raise(ErrorCode::kIoFailure, "write failed for " + path);
}

}  // namespace gcbf
