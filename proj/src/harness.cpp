// SPDX-License-Identifier: Apache-2.0
#include "st2d/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "st2d/polar.hpp"

namespace st2d {

void validate(const SimConfig& cfg) {
  St2dCodec probe(cfg.st2d);  // throws on inconsistent code geometry
  if (cfg.mimo.tx_antennas != cfg.st2d.layers_l) {
    throw std::invalid_argument("sim: tx antennas must equal trellis layers");
  }
  if (cfg.mimo.rx_antennas < cfg.mimo.tx_antennas) {
    throw std::invalid_argument("sim: rx antennas < tx antennas");
  }
  make_qam_table(cfg.mimo.mod_q);  // throws on unsupported modulation
  if (cfg.st2d.width_mbit % cfg.mimo.mod_q != 0) {
    throw std::invalid_argument("sim: trellis width not a symbol multiple");
  }
  if (cfg.st2d.mode == St2dMode::TimeOnlyFolded &&
      cfg.st2d.modulation_q != cfg.mimo.mod_q) {
    throw std::invalid_argument("sim: folded mapping disagrees on bits/symbol");
  }
  if (cfg.stop.min_frame_errors <= 0 || cfg.stop.max_frames <= 0) {
    throw std::invalid_argument("sim: stop rule counts must be positive");
  }
  if (cfg.ebn0_points_db.empty()) {
    throw std::invalid_argument("sim: empty Eb/N0 list");
  }
  (void)probe;
}

int resolve_workers(int hint) {
  if (const char* env = std::getenv("ST2D_WORKERS")) {
    try {
      hint = std::stoi(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("ST2D_WORKERS is not an integer");
    }
  }
  return std::max(1, hint);
}

namespace {

struct WorkerState {
  St2dWorkspace code;
  TransmitScratch phy;
  BitStreams info, decoded;
  CodewordTrellis tx;
  LlrTrellis rx;
  long frame_errors = 0;
  long bit_errors = 0;
};

void run_frame(const St2dCodec& codec, const SimConfig& cfg, double sigma2,
               std::uint64_t frame_seed, WorkerState& ws) {
  Xoshiro256pp rng(frame_seed);
  for (auto& s : ws.info.streams) random_bits(rng, s);
  codec.encode_into(ws.info, ws.tx, ws.code);

  if (cfg.noiseless_debug) {
    ws.rx.reset(ws.tx.layers_l, ws.tx.width_mbit);
    for (size_t i = 0; i < ws.tx.bits.size(); ++i) {
      ws.rx.llrs[i] = ws.tx.bits[i] ? -kLlrSaturation : kLlrSaturation;
    }
  } else {
    transmit_frame(ws.tx, cfg.mimo, sigma2, rng, ws.rx, ws.phy);
  }

  codec.decode_into(ws.rx, ws.decoded, ws.code);

  bool any = false;
  for (size_t s = 0; s < ws.info.streams.size(); ++s) {
    const auto& a = ws.info.streams[s];
    const auto& b = ws.decoded.streams[s];
    for (size_t i = 0; i < a.size(); ++i) {
      const bool diff = a[i] != b[i];
      ws.bit_errors += long(diff);
      any |= diff;
    }
  }
  ws.frame_errors += long(any);
}

}  // namespace

FerRecord run_point(const SimConfig& cfg, double ebn0_db, std::uint64_t seed) {
  validate(cfg);
  const St2dCodec codec(cfg.st2d);
  const double sigma2 =
      ebn0_to_sigma2(ebn0_db, codec.overall_rate(), cfg.mimo.mod_q);
  const int workers = resolve_workers(cfg.worker_count);
  constexpr long kBatch = 256;

  std::vector<WorkerState> states(workers);
  for (auto& ws : states) {
    ws.info = codec.make_streams();
    ws.decoded = codec.make_streams();
  }

  const auto t0 = std::chrono::steady_clock::now();
  long frames = 0, frame_errors = 0, bit_errors = 0;
  while (frames < cfg.stop.max_frames &&
         frame_errors < cfg.stop.min_frame_errors) {
    const long todo = std::min(kBatch, cfg.stop.max_frames - frames);
    auto chunk = [&](int w) {
      auto& ws = states[w];
      ws.frame_errors = 0;
      ws.bit_errors = 0;
      for (long f = w; f < todo; f += workers) {
        run_frame(codec, cfg, sigma2, derive_seed(seed, frames + f), ws);
      }
    };
    if (workers == 1) {
      chunk(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
      for (auto& t : pool) t.join();
    }
    for (const auto& ws : states) {
      frame_errors += ws.frame_errors;
      bit_errors += ws.bit_errors;
    }
    frames += todo;
  }
  const auto t1 = std::chrono::steady_clock::now();

  FerRecord r;
  r.ebn0_db = ebn0_db;
  r.frames = frames;
  r.frame_errors = frame_errors;
  r.bit_errors = bit_errors;
  r.fer = double(frame_errors) / double(frames);
  r.ber = double(bit_errors) / (double(frames) * codec.total_info_bits());
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

std::vector<FerRecord> run_sweep(const SimConfig& cfg) {
  validate(cfg);
  std::vector<double> points = cfg.ebn0_points_db;
  std::sort(points.begin(), points.end());
  std::vector<FerRecord> out;
  out.reserve(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    out.push_back(run_point(cfg, points[i], derive_seed(cfg.master_seed, i)));
    if (cfg.fer_floor > 0.0 && out.back().fer < cfg.fer_floor) break;
  }
  return out;
}

}  // namespace st2d
