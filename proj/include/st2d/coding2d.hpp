// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "st2d/polar.hpp"
#include "st2d/trellis.hpp"

namespace st2d {

// Layer-mapping helpers, element-type agnostic (symbols, bits, LLRs).
// Parallel: one stream per layer. Folded: a single stream is split
// column-major, element i -> layer i % L, position i / L.
template <typename T>
std::vector<std::vector<T>> map_parallel(std::vector<std::vector<T>> streams,
                                         int layers_l) {
  if (int(streams.size()) != layers_l) {
    throw std::invalid_argument("map_parallel: stream count must equal layers");
  }
  return streams;
}

template <typename T>
std::vector<std::vector<T>> map_folded(const std::vector<T>& stream,
                                       int layers_l) {
  if (layers_l <= 0 || stream.size() % size_t(layers_l) != 0) {
    throw std::invalid_argument(
        "map_folded: stream length must be a positive multiple of layers");
  }
  const size_t per_layer = stream.size() / layers_l;
  std::vector<std::vector<T>> out(layers_l, std::vector<T>(per_layer));
  for (size_t i = 0; i < stream.size(); ++i) {
    out[i % layers_l][i / layers_l] = stream[i];
  }
  return out;
}

template <typename T>
std::vector<T> unmap_folded(const std::vector<std::vector<T>>& layers) {
  if (layers.empty()) return {};
  const size_t per_layer = layers.front().size();
  std::vector<T> out(layers.size() * per_layer);
  for (size_t l = 0; l < layers.size(); ++l) {
    for (size_t p = 0; p < per_layer; ++p) {
      out[p * layers.size() + l] = layers[l][p];
    }
  }
  return out;
}

enum class St2dMode { TimeSpace, SpaceTime, TimeOnlyParallel, TimeOnlyFolded };
enum class StageLlr { Posterior, Extrinsic };

std::string to_string(St2dMode mode);

struct St2dConfig {
  St2dMode mode = St2dMode::TimeSpace;
  int layers_l = 64;
  int width_mbit = 16;
  // Uniform component codes; (n_time, k_time) is the time-domain code and
  // (n_space, k_space) the space-domain code. A non-empty time_code_profile
  // overrides the uniform time code with per-stream (N, K) pairs.
  int n_time = 16;
  int k_time = 8;
  int n_space = 64;
  int k_space = 32;
  std::vector<std::pair<int, int>> time_code_profile;
  // Bits per modulated symbol; only the folded mapping depends on it, since
  // folding interleaves symbols (not bits) across layers.
  int modulation_q = 4;
  double design_ebn0_db = 5.0;
  int scan_iterations = 1;
  StageLlr stage_llr = StageLlr::Posterior;
  NodeUpdate node_update = NodeUpdate::MinSum;
};

struct BitStreams {
  std::vector<BitVec> streams;
};

struct DecodeResult {
  BitStreams streams;
  // One flag per stream; filled against a reference by flag_stream_errors.
  std::vector<std::uint8_t> stream_errors;
};

std::vector<std::uint8_t> flag_stream_errors(const BitStreams& decoded,
                                             const BitStreams& reference);

class St2dWorkspace {
 public:
  PolarWorkspace polar;
  LlrVec vec_a, vec_b;
  BitVec bits_a, bits_b, bits_c;
  ScResult sc;
  ScanResult scan;
  std::vector<double> stage1;  // soft stage output, cover-region geometry
};

// Two-dimensional encoder/decoder over the codeword trellis.
//
// Time-space: per-stream time codewords fill the first K_space rows row-major,
// then every column is extended to all L rows by the space code. Space-time is
// the transpose construction: space codewords fill the first K_time columns
// column-major, then every row is extended to width M_bit by the time code.
// The second-stage code is applied in systematic form with its info positions
// moved to the front, so the stage-one region is carried verbatim and both
// row and column codeword membership hold simultaneously.
//
// Decoding runs the soft stage (soft-cancellation) across the second-stage
// code and hands per-bit LLRs of the stage-one region to hard successive
// cancellation.
class St2dCodec {
 public:
  explicit St2dCodec(const St2dConfig& cfg);

  const St2dConfig& config() const { return cfg_; }
  int stream_count() const { return int(stream_codes_.size()); }
  const std::vector<int>& stream_info_lens() const { return stream_info_lens_; }
  int total_info_bits() const { return total_info_bits_; }
  double overall_rate() const;
  // Codewords of the stage-one dimension per stream (folded mode can carry
  // several consecutive codewords in its single stream).
  int codewords_per_stream() const { return codewords_per_stream_; }

  void encode_into(const BitStreams& in, CodewordTrellis& out,
                   St2dWorkspace& ws) const;
  CodewordTrellis encode(const BitStreams& in) const;

  void decode_into(const LlrTrellis& in, BitStreams& out,
                   St2dWorkspace& ws) const;
  BitStreams decode(const LlrTrellis& in) const;

  BitStreams make_streams() const;  // zero-filled streams of the right shape

 private:
  void encode_time_space(const BitStreams& in, CodewordTrellis& out,
                         St2dWorkspace& ws) const;
  void encode_space_time(const BitStreams& in, CodewordTrellis& out,
                         St2dWorkspace& ws) const;
  void encode_parallel(const BitStreams& in, CodewordTrellis& out,
                       St2dWorkspace& ws) const;
  void encode_folded(const BitStreams& in, CodewordTrellis& out,
                     St2dWorkspace& ws) const;
  void decode_time_space(const LlrTrellis& in, BitStreams& out,
                         St2dWorkspace& ws) const;
  void decode_space_time(const LlrTrellis& in, BitStreams& out,
                         St2dWorkspace& ws) const;
  void decode_parallel(const LlrTrellis& in, BitStreams& out,
                       St2dWorkspace& ws) const;
  void decode_folded(const LlrTrellis& in, BitStreams& out,
                     St2dWorkspace& ws) const;

  St2dConfig cfg_;
  std::vector<PolarCode> stream_codes_;      // stage-one code per stream
  std::optional<PolarCode> cover_code_;      // uniform second-stage code
  std::vector<int> cover_perm_;              // front-systematic coordinate order
  std::vector<int> stream_start_;            // first row (T-S) / column (S-T)
  std::vector<int> stream_span_;             // rows (T-S) / columns (S-T)
  std::vector<int> stream_info_lens_;
  int cover_info_len_ = 0;                   // K_space (T-S) or K_time (S-T)
  int total_info_bits_ = 0;
  int codewords_per_stream_ = 1;
};

// Convenience wrappers matching the mode names; the codec must be built with
// the corresponding mode.
DecodeResult decode_with_reference(const St2dCodec& codec, const LlrTrellis& in,
                                   const BitStreams* reference);

}  // namespace st2d
