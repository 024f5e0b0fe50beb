// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "st2d/harness.hpp"

namespace st2d {

// A named experiment bundle: every curve of the corresponding result figure
// as a labeled simulation config. Labels become the CSV label column.
struct PresetRun {
  std::string label;
  SimConfig config;
};

const std::vector<std::string>& preset_names();

// Throws invalid_argument for unknown names. All presets share the running
// setup: 64x128 antennas (unless the sweep itself varies the array), 16-QAM,
// one codeword per trellis row/column.
std::vector<PresetRun> make_preset(const std::string& name);

}  // namespace st2d
