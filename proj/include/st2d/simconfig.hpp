// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "st2d/harness.hpp"

namespace st2d {

// Flat key = value configuration, one pair per line, '#' comments.
// Unknown or duplicate keys are rejected; anything not set keeps the
// SimConfig default. Transmit antennas always equal the layer count.
//
// Keys: mode, layers, mbit, n_time, k_time, n_space, k_space, time_profile
// (comma list of n:k), design_ebn0_db, scan_iterations, stage_llr,
// node_update, q, rx_antennas, fading, fading_unit, tx_power, demap, ebn0_db (comma
// list), min_frame_errors, max_frames, fer_floor, master_seed, workers,
// noiseless.
SimConfig parse_sim_config(std::istream& is);
SimConfig parse_sim_config_text(const std::string& text);

}  // namespace st2d
