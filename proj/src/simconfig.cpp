// SPDX-License-Identifier: Apache-2.0
#include "st2d/simconfig.hpp"

#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace st2d {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw std::invalid_argument("config: " + what + " for key '" + key + "'");
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    fail(key, "expected an integer, got '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    fail(key, "expected an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (const std::exception&) {
    fail(key, "expected a number, got '" + v + "'");
  }
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(v);
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

SimConfig parse_sim_config(std::istream& is) {
  SimConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty()) {
      throw std::invalid_argument("config: empty key or value at line " +
                                  std::to_string(lineno));
    }
    if (!seen.insert(key).second) fail(key, "duplicate key");

    if (key == "mode") {
      if (val == "time_space") cfg.st2d.mode = St2dMode::TimeSpace;
      else if (val == "space_time") cfg.st2d.mode = St2dMode::SpaceTime;
      else if (val == "parallel") cfg.st2d.mode = St2dMode::TimeOnlyParallel;
      else if (val == "folded") cfg.st2d.mode = St2dMode::TimeOnlyFolded;
      else fail(key, "unknown mode '" + val + "'");
    } else if (key == "layers") {
      cfg.st2d.layers_l = to_int(key, val);
      cfg.mimo.tx_antennas = cfg.st2d.layers_l;
    } else if (key == "mbit") {
      cfg.st2d.width_mbit = to_int(key, val);
    } else if (key == "n_time") {
      cfg.st2d.n_time = to_int(key, val);
    } else if (key == "k_time") {
      cfg.st2d.k_time = to_int(key, val);
    } else if (key == "n_space") {
      cfg.st2d.n_space = to_int(key, val);
    } else if (key == "k_space") {
      cfg.st2d.k_space = to_int(key, val);
    } else if (key == "time_profile") {
      for (const auto& pair : split(val, ',')) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) fail(key, "expected n:k, got '" + pair + "'");
        cfg.st2d.time_code_profile.emplace_back(
            to_int(key, trim(pair.substr(0, colon))),
            to_int(key, trim(pair.substr(colon + 1))));
      }
    } else if (key == "design_ebn0_db") {
      cfg.st2d.design_ebn0_db = to_double(key, val);
    } else if (key == "scan_iterations") {
      cfg.st2d.scan_iterations = to_int(key, val);
    } else if (key == "stage_llr") {
      if (val == "posterior") cfg.st2d.stage_llr = StageLlr::Posterior;
      else if (val == "extrinsic") cfg.st2d.stage_llr = StageLlr::Extrinsic;
      else fail(key, "unknown stage llr '" + val + "'");
    } else if (key == "node_update") {
      if (val == "min_sum") cfg.st2d.node_update = NodeUpdate::MinSum;
      else if (val == "exact") cfg.st2d.node_update = NodeUpdate::Exact;
      else fail(key, "unknown node update '" + val + "'");
    } else if (key == "q") {
      cfg.mimo.mod_q = to_int(key, val);
      cfg.st2d.modulation_q = cfg.mimo.mod_q;
    } else if (key == "rx_antennas") {
      cfg.mimo.rx_antennas = to_int(key, val);
    } else if (key == "fading") {
      if (val == "iid") cfg.mimo.fading = FadingModel::IidRayleigh;
      else if (val == "identity") cfg.mimo.fading = FadingModel::Identity;
      else fail(key, "unknown fading model '" + val + "'");
    } else if (key == "fading_unit") {
      if (val == "per_use") cfg.mimo.fading_unit = FadingUnit::PerChannelUse;
      else if (val == "per_frame") cfg.mimo.fading_unit = FadingUnit::PerFrame;
      else fail(key, "unknown fading unit '" + val + "'");
    } else if (key == "tx_power") {
      if (val == "total_unit") cfg.mimo.tx_power = TxPowerNorm::TotalUnit;
      else if (val == "per_layer_unit") cfg.mimo.tx_power = TxPowerNorm::PerLayerUnit;
      else fail(key, "unknown power normalization '" + val + "'");
    } else if (key == "demap") {
      if (val == "max_log") cfg.mimo.demap = DemapRule::MaxLog;
      else if (val == "exact") cfg.mimo.demap = DemapRule::Exact;
      else fail(key, "unknown demap rule '" + val + "'");
    } else if (key == "ebn0_db") {
      cfg.ebn0_points_db.clear();
      for (const auto& item : split(val, ',')) {
        cfg.ebn0_points_db.push_back(to_double(key, item));
      }
    } else if (key == "min_frame_errors") {
      cfg.stop.min_frame_errors = to_long(key, val);
    } else if (key == "max_frames") {
      cfg.stop.max_frames = to_long(key, val);
    } else if (key == "fer_floor") {
      cfg.fer_floor = to_double(key, val);
    } else if (key == "master_seed") {
      cfg.master_seed = std::uint64_t(to_long(key, val));
    } else if (key == "workers") {
      cfg.worker_count = to_int(key, val);
    } else if (key == "noiseless") {
      const int v = to_int(key, val);
      if (v != 0 && v != 1) fail(key, "expected 0 or 1");
      cfg.noiseless_debug = v == 1;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

SimConfig parse_sim_config_text(const std::string& text) {
  std::istringstream ss(text);
  return parse_sim_config(ss);
}

}  // namespace st2d
