// SPDX-License-Identifier: Apache-2.0
#include "st2d/presets.hpp"

#include <stdexcept>

namespace st2d {

namespace {

std::vector<double> db_range(double lo, double hi) {
  std::vector<double> v;
  for (double x = lo; x <= hi + 1e-9; x += 1.0) v.push_back(x);
  return v;
}

// 1-D parallel mapping: one codeword per layer row, trellis width = N_s.
SimConfig one_d(int n_s, int k_s, double lo, double hi) {
  SimConfig cfg;
  cfg.st2d.mode = St2dMode::TimeOnlyParallel;
  cfg.st2d.layers_l = 64;
  cfg.st2d.width_mbit = n_s;
  cfg.st2d.n_time = n_s;
  cfg.st2d.k_time = k_s;
  cfg.mimo.tx_antennas = 64;
  cfg.mimo.rx_antennas = 128;
  cfg.ebn0_points_db = db_range(lo, hi);
  return cfg;
}

SimConfig two_d(St2dMode mode, int layers, int n_time, int k_time, int k_space,
                double lo, double hi) {
  SimConfig cfg;
  cfg.st2d.mode = mode;
  cfg.st2d.layers_l = layers;
  cfg.st2d.width_mbit = n_time;
  cfg.st2d.n_time = n_time;
  cfg.st2d.k_time = k_time;
  cfg.st2d.n_space = layers;
  cfg.st2d.k_space = k_space;
  cfg.mimo.tx_antennas = layers;
  cfg.mimo.rx_antennas = 2 * layers;
  cfg.ebn0_points_db = db_range(lo, hi);
  return cfg;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig_1d_lengths", "fig_2d_gain", "fig_nspace_sweep", "fig_rspace_sweep",
      "fig_ts_vs_st"};
  return names;
}

std::vector<PresetRun> make_preset(const std::string& name) {
  if (name == "fig_1d_lengths") {
    // Time-domain coding only, overall rate 1/4, shrinking codewords.
    return {
        {"1d_n16", one_d(16, 4, 10, 20)},
        {"1d_n32", one_d(32, 8, 10, 20)},
        {"1d_n64", one_d(64, 16, 10, 19)},
        {"1d_n128", one_d(128, 32, 10, 18)},
    };
  }
  if (name == "fig_2d_gain") {
    // 1-D against 2-D at equal time-domain length and overall rate 1/4.
    return {
        {"1d_n16", one_d(16, 4, 10, 20)},
        {"1d_n32", one_d(32, 8, 10, 20)},
        {"1d_n64", one_d(64, 16, 10, 19)},
        {"2d_t16_s64", two_d(St2dMode::TimeSpace, 64, 16, 8, 32, 10, 19)},
        {"2d_t32_s64", two_d(St2dMode::TimeSpace, 64, 32, 16, 32, 10, 18)},
        {"2d_t64_s64", two_d(St2dMode::TimeSpace, 64, 64, 32, 32, 10, 18)},
    };
  }
  if (name == "fig_nspace_sweep") {
    // The array grows with the space code: N_t = N^space, N_r = 2 N_t.
    return {
        {"2d_t16_s32", two_d(St2dMode::TimeSpace, 32, 16, 8, 16, 10, 20)},
        {"2d_t16_s64", two_d(St2dMode::TimeSpace, 64, 16, 8, 32, 10, 19)},
        {"2d_t16_s128", two_d(St2dMode::TimeSpace, 128, 16, 8, 64, 10, 17)},
    };
  }
  if (name == "fig_rspace_sweep") {
    // Constant overall rate 1/4 split differently across the dimensions;
    // fractional K rounds to the nearest integer (16/3 -> 5, 32/3 -> 11).
    return {
        {"2d_rt13_rs34", two_d(St2dMode::TimeSpace, 64, 16, 5, 48, 10, 20)},
        {"2d_rt12_rs12", two_d(St2dMode::TimeSpace, 64, 16, 8, 32, 10, 19)},
        {"2d_rt23_rs38", two_d(St2dMode::TimeSpace, 64, 16, 11, 24, 10, 18)},
    };
  }
  if (name == "fig_ts_vs_st") {
    return {
        {"2d_ts_t16_s64", two_d(St2dMode::TimeSpace, 64, 16, 8, 32, 10, 19)},
        {"2d_st_t16_s64", two_d(St2dMode::SpaceTime, 64, 16, 8, 32, 10, 19)},
    };
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

}  // namespace st2d
