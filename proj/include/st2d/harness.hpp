// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "st2d/coding2d.hpp"
#include "st2d/phy.hpp"

namespace st2d {

struct StopRule {
  long min_frame_errors = 100;
  long max_frames = 1000000;
};

struct SimConfig {
  St2dConfig st2d;
  MimoConfig mimo;
  std::vector<double> ebn0_points_db;
  StopRule stop;
  double fer_floor = 0.0;  // abort the sweep below this FER; 0 disables
  std::uint64_t master_seed = 1;
  int worker_count = 1;
  bool noiseless_debug = false;  // bypass the channel, feed saturated LLRs
};

struct FerRecord {
  double ebn0_db = 0.0;
  long frames = 0;
  long frame_errors = 0;
  long bit_errors = 0;
  double fer = 0.0;
  double ber = 0.0;
  double seconds = 0.0;
};

// Throws invalid_argument on any inconsistency (geometry, modulation,
// stop rule, empty sweep).
void validate(const SimConfig& cfg);

// Worker count actually used: the ST2D_WORKERS environment variable
// overrides the hint; at least one.
int resolve_workers(int hint);

// Monte-Carlo at one operating point. A frame is one codeword trellis;
// a frame error is any wrongly decoded stream. Frames are seeded
// individually from (seed, frame index), so the outcome is identical for
// any worker count; the stop rule is checked at batch boundaries and can
// overshoot min_frame_errors by at most one batch.
FerRecord run_point(const SimConfig& cfg, double ebn0_db, std::uint64_t seed);

// Sweep over ebn0_points_db in ascending order with per-point seeds derived
// from master_seed and the point's rank.
std::vector<FerRecord> run_sweep(const SimConfig& cfg);

}  // namespace st2d
