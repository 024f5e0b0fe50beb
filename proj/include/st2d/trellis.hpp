// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace st2d {

// L x M_bit bit matrix: rows are spatial layers, columns are bit positions
// in time. Row-major storage.
struct CodewordTrellis {
  int layers_l = 0;
  int width_mbit = 0;
  std::vector<std::uint8_t> bits;

  CodewordTrellis() = default;
  CodewordTrellis(int layers, int width)
      : layers_l(layers), width_mbit(width), bits(size_t(layers) * width, 0) {}

  void reset(int layers, int width) {
    layers_l = layers;
    width_mbit = width;
    bits.assign(size_t(layers) * width, 0);
  }

  std::uint8_t& at(int layer, int pos) {
    return bits[size_t(layer) * width_mbit + pos];
  }
  std::uint8_t at(int layer, int pos) const {
    return bits[size_t(layer) * width_mbit + pos];
  }
};

// Same geometry carrying per-bit LLRs, log P(0)/P(1).
struct LlrTrellis {
  int layers_l = 0;
  int width_mbit = 0;
  std::vector<double> llrs;

  LlrTrellis() = default;
  LlrTrellis(int layers, int width)
      : layers_l(layers), width_mbit(width), llrs(size_t(layers) * width, 0.0) {}

  void reset(int layers, int width) {
    layers_l = layers;
    width_mbit = width;
    llrs.assign(size_t(layers) * width, 0.0);
  }

  double& at(int layer, int pos) {
    return llrs[size_t(layer) * width_mbit + pos];
  }
  double at(int layer, int pos) const {
    return llrs[size_t(layer) * width_mbit + pos];
  }
};

}  // namespace st2d
