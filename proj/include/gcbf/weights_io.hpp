// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>

#include "gcbf/model.hpp"

namespace gcbf {

// Weight file, little-endian throughout:
//   magic "GCBF" | u32 version = 1
//   config block: u32 G, H, P, M, F, speakers, post_filter; f64 w_scale
//   u32 tensor count
//   per tensor: u16 name length, UTF-8 name, u8 rank, u32 dims[rank],
//               f32 payload, row-major
// Tensors are written in canonical order (see tensor_shapes) and the loader
// requires exactly that set, so a file for one config cannot silently load
// into another.
void save_weights(const WeightStore& store, const std::string& path);
WeightStore load_weights(const std::string& path);

}  // namespace gcbf
