// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "gcbf/complexity.hpp"

#include <cmath>

#include "doctest.h"
#include "gcbf/errors.hpp"

using namespace gcbf;

namespace {
ModelConfig cfg(int g, int h) {
  ModelConfig c;
  c.groups = g;
  c.hidden = h;
  return c;
}
}  // namespace

TEST_CASE("parameter counts match the reference figures within 2%") {
  for (const auto& row : reference_rows()) {
    auto rep = count_params(cfg(row.groups, row.hidden));
    double delta = std::abs(static_cast<double>(rep.total_params) - row.size_ref) / row.size_ref;
    INFO("G=", row.groups, " H=", row.hidden, " params=", rep.total_params);
    CHECK(delta <= 0.02);
  }
}

TEST_CASE("MAC counts match the reference figures within 5%") {
  for (const auto& row : reference_rows()) {
    double macs = count_macs(cfg(row.groups, row.hidden));
    double delta = std::abs(macs - row.macs_ref) / row.macs_ref;
    INFO("G=", row.groups, " H=", row.hidden, " macs=", macs);
    CHECK(delta <= 0.05);
  }
}

TEST_CASE("spot values") {
  CHECK(count_params(cfg(1, 256)).total_params == 1266091);
  CHECK(count_params(cfg(8, 32)).total_params == 247985);
  CHECK(count_params(cfg(16, 16)).total_params == 219697);
  CHECK(count_macs(cfg(8, 32)) == doctest::Approx(456744e3));
}

TEST_CASE("filter-head subtotal is constant across configs") {
  const size_t expected = 174760;  // 4x(256*136+136) + 2x(256*68+68)
  for (const auto& row : reference_rows()) {
    auto rep = count_params(cfg(row.groups, row.hidden));
    CHECK(rep.filter_params == expected);
    CHECK(std::abs(static_cast<double>(rep.filter_params) - 175e3) / 175e3 <= 0.01);
  }
}

TEST_CASE("non-filter remainder for G=16,H=16 is ~45K") {
  auto rep = count_params(cfg(16, 16));
  size_t rest = rep.total_params - rep.filter_params;
  CHECK(rest >= 44000);
  CHECK(rest <= 46000);
}

TEST_CASE("subtotals add up") {
  for (auto [g, h] : {std::pair{1, 256}, {4, 64}, {32, 16}}) {
    auto rep = count_params(cfg(g, h));
    CHECK(rep.grouping_params + rep.conv_params + rep.tac_params + rep.gru_params +
              rep.ungroup_params + rep.filter_params ==
          rep.total_params);
    size_t from_tensors = 0;
    for (const auto& t : rep.tensors) from_tensors += t.count();
    CHECK(from_tensors == rep.total_params);
  }
}

TEST_CASE("count equals the scalars in an actual weight store") {
  for (auto [g, h] : {std::pair{1, 16}, {4, 32}, {16, 16}}) {
    auto rep = count_params(cfg(g, h));
    WeightStore s = init_weights(cfg(g, h), 0);
    CHECK(rep.total_params == s.total_scalars());
  }
}

TEST_CASE("params and MACs are monotone in H for fixed G") {
  for (int g : {1, 4, 16}) {
    auto a = count_params(cfg(g, 16)), b = count_params(cfg(g, 32)),
         c = count_params(cfg(g, 64));
    CHECK(a.total_params < b.total_params);
    CHECK(b.total_params < c.total_params);
    CHECK(count_macs(cfg(g, 16)) < count_macs(cfg(g, 32)));
    CHECK(count_macs(cfg(g, 32)) < count_macs(cfg(g, 64)));
  }
}

TEST_CASE("for G=1 the per-frame MACs equal params minus PReLU slopes") {
  for (int h : {16, 64, 256}) {
    auto rep = count_params(cfg(1, h));
    size_t prelu = 0;
    for (const auto& t : rep.tensors)
      if (t.name.find(".prelu") != std::string::npos) prelu += t.count();
    CHECK(rep.macs_per_frame == rep.total_params - prelu);
  }
}

TEST_CASE("MACs per second is per-frame times the frame rate") {
  auto rep = count_params(cfg(8, 32));
  CHECK(rep.macs_per_second == doctest::Approx(1000.0 * rep.macs_per_frame));
  CHECK(count_macs(cfg(8, 32), 500) == doctest::Approx(500.0 * rep.macs_per_frame));
}

TEST_CASE("report table") {
  std::vector<ModelConfig> configs;
  for (const auto& row : reference_rows()) configs.push_back(cfg(row.groups, row.hidden));
  std::string table = report_table(configs);
  size_t lines = std::count(table.begin(), table.end(), '\n');
  CHECK(lines == 11);  // header + 10 rows

  std::string empty_table = report_table({});
  CHECK(std::count(empty_table.begin(), empty_table.end(), '\n') == 1);
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(count_params(cfg(3, 16)), Error);
  CHECK_THROWS_AS(count_macs(cfg(0, 16)), Error);
}
