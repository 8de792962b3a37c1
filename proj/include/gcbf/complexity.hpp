// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <span>
#include <string>
#include <vector>

#include "gcbf/model.hpp"

namespace gcbf {

// Exact per-tensor parameter and MAC accounting.
//
// Conventions (auditable via the per-tensor list):
//  - every weight multiply and every bias add is one MAC; activation
//    functions cost zero MACs, PReLU slopes count as parameters only;
//  - group-shared modules are evaluated once per group and frame, TAC fc2
//    once per frame, grouping/ungrouping/filter heads per their evaluation
//    counts;
//  - with G = 1 this makes per-frame MACs equal params minus PReLU slopes.
struct ComplexityReport {
  ModelConfig config;
  std::vector<TensorShape> tensors;  // names + shapes; count() = params

  size_t grouping_params = 0;
  size_t conv_params = 0;
  size_t tac_params = 0;  // both TAC stages
  size_t gru_params = 0;
  size_t ungroup_params = 0;
  size_t filter_params = 0;  // W + C heads
  size_t total_params = 0;

  size_t macs_per_frame = 0;
  int frames_per_second = 1000;
  double macs_per_second = 0.0;
};

ComplexityReport count_params(const ModelConfig& cfg);
double count_macs(const ModelConfig& cfg, int frames_per_second = 1000);

// The ten standard configurations of the model family with their nominal
// size/MAC reference figures.
struct ReferenceRow {
  int groups;
  int hidden;
  double size_ref;
  double macs_ref;
};
std::span<const ReferenceRow> reference_rows();
const ReferenceRow* find_reference(int groups, int hidden);

// Side-by-side table of computed values and reference deltas, one line per
// config; header only for an empty list.
std::string report_table(std::span<const ModelConfig> configs);

}  // namespace gcbf
