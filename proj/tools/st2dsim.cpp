// SPDX-License-Identifier: Apache-2.0
//
// st2dsim: run FER sweeps for spatiotemporal 2-D coded massive-MIMO links.
//
//   sweep    --config link.cfg --out fer.csv [--seed N]
//   preset   --name fig_2d_gain --out fer.csv
//   latency  --gamma 1 --time-lens 16 --space-lens 64
//   plotdata --in fer.csv --out fer.dat
//
// Exit codes: 0 success, 1 validation/usage error, 2 I/O error.
// Output files are byte-identical for the same argv and seed; wall-clock
// timing goes to stderr only.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "st2d/csvio.hpp"
#include "st2d/harness.hpp"
#include "st2d/latency.hpp"
#include "st2d/presets.hpp"
#include "st2d/simconfig.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

void report_point(const std::string& label, const st2d::FerRecord& r) {
  std::fprintf(stderr, "%-16s %6.2f dB  fer %-12.4g (%ld/%ld)  %.1fs\n",
               label.c_str(), r.ebn0_db, r.fer, r.frame_errors, r.frames,
               r.seconds);
}

// The seconds column is wall-clock noise; zero it so reruns are
// byte-identical.
st2d::FerRecord strip_timing(st2d::FerRecord r) {
  r.seconds = 0.0;
  return r;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path,
                  std::uint64_t seed, bool seed_given) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot read config: " << config_path << "\n";
    return kExitIo;
  }
  st2d::SimConfig cfg = st2d::parse_sim_config(in);
  if (seed_given) cfg.master_seed = seed;
  st2d::validate(cfg);

  std::vector<st2d::FerRecord> records = st2d::run_sweep(cfg);
  for (const auto& r : records) report_point("sweep", r);
  for (auto& r : records) r = strip_timing(r);

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write: " << out_path << "\n";
    return kExitIo;
  }
  st2d::write_fer_csv(out, records);
  return out ? kExitOk : kExitIo;
}

int run_preset_cmd(const std::string& name, const std::string& out_path) {
  const std::vector<st2d::PresetRun> runs = st2d::make_preset(name);
  for (const auto& run : runs) st2d::validate(run.config);  // before any work

  st2d::LabeledRecords records;
  for (const auto& run : runs) {
    for (const auto& r : st2d::run_sweep(run.config)) {
      report_point(run.label, r);
      records.emplace_back(run.label, strip_timing(r));
    }
  }

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write: " << out_path << "\n";
    return kExitIo;
  }
  st2d::write_fer_csv_labeled(out, records);
  return out ? kExitOk : kExitIo;
}

int run_latency_cmd(double gamma, const std::vector<int>& time_lens,
                    const std::vector<int>& space_lens) {
  const st2d::LatencyModel model{gamma};
  const double d = st2d::decoding_latency(time_lens, space_lens, model);
  // Bound for a uniform partition of the same trellis: the shortest time
  // codeword is one row (M_bit symbols) and the shortest space codeword one
  // column (L symbols).
  const int mbit = *std::min_element(time_lens.begin(), time_lens.end());
  const int l = space_lens.empty()
                    ? 0
                    : *std::min_element(space_lens.begin(), space_lens.end());
  const double dmin = gamma * (mbit + l);
  std::ostringstream os;
  os << "D=" << d << "\n" << "D_min=" << dmin << "\n";
  std::cout << os.str();
  return kExitOk;
}

int run_plotdata_cmd(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "cannot read: " << in_path << "\n";
    return kExitIo;
  }
  const st2d::LabeledRecords records = st2d::read_fer_csv(in);

  // One two-column block per label, blank-line separated, label order as
  // first encountered.
  std::vector<std::string> order;
  for (const auto& [label, r] : records) {
    if (std::find(order.begin(), order.end(), label) == order.end()) {
      order.push_back(label);
    }
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write: " << out_path << "\n";
    return kExitIo;
  }
  out.precision(9);
  for (size_t i = 0; i < order.size(); ++i) {
    if (i) out << "\n";
    out << "# " << (order[i].empty() ? "series" : order[i]) << "\n";
    for (const auto& [label, r] : records) {
      if (label == order[i]) out << r.ebn0_db << " " << r.fer << "\n";
    }
  }
  return out ? kExitOk : kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatiotemporal 2-D channel-coding link simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, preset_name, in_path;
  std::uint64_t seed = 0;
  double gamma = 1.0;
  std::vector<int> time_lens, space_lens;

  CLI::App* sweep = app.add_subcommand("sweep", "run a config-file FER sweep");
  sweep->add_option("--config", config_path, "key=value link config")
      ->required();
  sweep->add_option("--out", out_path, "output CSV")->required();
  CLI::Option* seed_opt =
      sweep->add_option("--seed", seed, "override master_seed");

  CLI::App* preset = app.add_subcommand("preset", "run a named curve bundle");
  preset->add_option("--name", preset_name, "preset name")->required();
  preset->add_option("--out", out_path, "output CSV (labeled)")->required();

  CLI::App* latency =
      app.add_subcommand("latency", "evaluate the two-stage decoding delay");
  latency->add_option("--gamma", gamma, "seconds per symbol slot");
  latency->add_option("--time-lens", time_lens, "time codeword lengths")
      ->required()
      ->delimiter(',');
  latency->add_option("--space-lens", space_lens, "space codeword lengths")
      ->delimiter(',');

  CLI::App* plotdata =
      app.add_subcommand("plotdata", "reshape a FER CSV into plot columns");
  plotdata->add_option("--in", in_path, "input CSV")->required();
  plotdata->add_option("--out", out_path, "output column file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sweep->parsed()) {
      return run_sweep_cmd(config_path, out_path, seed, !seed_opt->empty());
    }
    if (preset->parsed()) return run_preset_cmd(preset_name, out_path);
    if (latency->parsed())
      return run_latency_cmd(gamma, time_lens, space_lens);
    if (plotdata->parsed()) return run_plotdata_cmd(in_path, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  return kExitValidation;
}
