// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>
#include <vector>

namespace gcbf {

struct AudioBuffer {
  int sample_rate = 16000;
  std::vector<std::vector<float>> channels;  // equal lengths, nominal [-1, 1]

  int num_channels() const { return static_cast<int>(channels.size()); }
  size_t num_samples() const { return channels.empty() ? 0 : channels[0].size(); }
};

enum class WavFormat { kPcm16, kFloat32 };

// RIFF reader for PCM 16-bit and IEEE float 32-bit, mono to 6 channels.
// Rejects any sample rate other than 16 kHz — there is no resampling in this
// engine. WAVE_FORMAT_EXTENSIBLE headers are unwrapped.
AudioBuffer read_wav(const std::string& path);

void write_wav(const std::string& path, const AudioBuffer& audio,
               WavFormat format = WavFormat::kFloat32);

}  // namespace gcbf
