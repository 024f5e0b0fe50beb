// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>

#include "st2d/coding2d.hpp"

namespace st2d {

// Decoding-latency model: the two stages pipeline across the trellis, so the
// delay is set by the slowest codeword of each dimension, gamma time units
// per codeword bit.
struct LatencyModel {
  double gamma = 1.0;
};

inline double decoding_latency(std::span<const int> time_lens,
                               std::span<const int> space_lens,
                               const LatencyModel& model = {}) {
  if (time_lens.empty()) {
    throw std::invalid_argument("decoding_latency: no time codewords");
  }
  const int t = *std::max_element(time_lens.begin(), time_lens.end());
  const int s = space_lens.empty()
                    ? 0
                    : *std::max_element(space_lens.begin(), space_lens.end());
  return model.gamma * double(t + s);
}

// Lower bound for a two-dimensional trellis: no codeword can be shorter than
// one row or one column.
inline double min_latency(int width_mbit, int layers_l,
                          const LatencyModel& model = {}) {
  return model.gamma * double(width_mbit + layers_l);
}

// One codeword per layer row, no second stage: rows finish independently.
inline double parallel_latency(int n_time, const LatencyModel& model = {}) {
  return model.gamma * double(n_time);
}

// A single folded stream serializes the whole trellis.
inline double folded_latency(int layers_l, int width_mbit,
                             const LatencyModel& model = {}) {
  return model.gamma * double(layers_l) * double(width_mbit);
}

inline double latency_for(const St2dConfig& cfg, const LatencyModel& model = {}) {
  switch (cfg.mode) {
    case St2dMode::TimeOnlyParallel:
      return parallel_latency(cfg.n_time, model);
    case St2dMode::TimeOnlyFolded:
      return folded_latency(cfg.layers_l, cfg.width_mbit, model);
    case St2dMode::TimeSpace: {
      int t = cfg.n_time;
      if (!cfg.time_code_profile.empty()) {
        t = 0;
        for (auto [n, k] : cfg.time_code_profile) t = std::max(t, n);
      }
      const int lens[2] = {t, cfg.n_space};
      return decoding_latency({lens, 1}, {lens + 1, 1}, model);
    }
    case St2dMode::SpaceTime: {
      const int lens[2] = {cfg.n_time, cfg.n_space};
      return decoding_latency({lens, 1}, {lens + 1, 1}, model);
    }
  }
  return 0.0;
}

}  // namespace st2d
