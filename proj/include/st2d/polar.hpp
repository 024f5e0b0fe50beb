// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace st2d {

using BitVec = std::vector<std::uint8_t>;
using LlrVec = std::vector<double>;

// LLR convention throughout: log P(bit=0) / P(bit=1), natural log.
// Magnitudes are saturated before arithmetic so known bits stay finite.
inline constexpr double kLlrSaturation = 300.0;

inline double clamp_llr(double v) {
  if (v > kLlrSaturation) return kLlrSaturation;
  if (v < -kLlrSaturation) return -kLlrSaturation;
  return v;
}

enum class NodeUpdate { MinSum, Exact };

struct PolarDecodeOptions {
  NodeUpdate node_update = NodeUpdate::MinSum;
};

struct ScResult {
  BitVec info_bits;  // hard decisions at info positions, u-domain order
  BitVec codeword;   // re-encoded decisions, rate-matched to target_len
};

struct ScanResult {
  LlrVec info_llrs;          // posterior LLRs of the info bits (u-domain)
  LlrVec codebit_llrs;       // posterior LLRs of code bits, length target_len
  LlrVec codebit_extrinsic;  // extrinsic part only, length target_len
};

// Scratch buffers reused across decode calls; one instance per thread.
class PolarWorkspace {
 public:
  void prepare(int mother_len);

  std::vector<double> mother_llrs;
  std::vector<double> llr_arena;  // successive-cancellation level buffers
  BitVec u_bits;
  BitVec x_bits;
  std::vector<std::vector<double>> scan_l;  // per-stage left-going messages
  std::vector<std::vector<double>> scan_r;  // per-stage right-going messages

 private:
  int mother_len_ = 0;
};

// Gaussian-approximation density evolution over the BI-AWGN channel.
namespace ga {
double phi(double x);
double phi_inv(double y);
// LLR mean of the design channel for BPSK at the given code rate.
double design_channel_mean(double ebn0_db, double rate);
// Mean LLR of every synthetic channel; positions >= target_len enter as
// known bits (infinite mean) to model shortening.
std::vector<double> synthetic_means(int mother_len, double channel_mean,
                                    int target_len);
}  // namespace ga

class PolarCode {
 public:
  // mother_len must be a power of two; target_len <= mother_len selects
  // shortening (codeword bits >= target_len are dropped and forced to zero
  // by freezing the same u-positions). design_ebn0_db fixes the construction
  // operating point; the frozen set is deterministic given the arguments.
  PolarCode(int mother_len, int info_len, int target_len, double design_ebn0_db);

  int mother_len() const { return mother_len_; }
  int info_len() const { return info_len_; }
  int target_len() const { return target_len_; }
  double rate() const { return double(info_len_) / double(target_len_); }
  double design_ebn0_db() const { return design_ebn0_db_; }
  const std::vector<int>& frozen_set() const { return frozen_set_; }
  const std::vector<int>& info_set() const { return info_set_; }
  const BitVec& frozen_mask() const { return frozen_mask_; }

  // u-domain encoding: info bits land on the info set, frozen bits are zero,
  // then x = u F^{(x)n} over GF(2), rate-matched to target_len.
  BitVec encode(const BitVec& info) const;
  void encode_into(const BitVec& info, BitVec& out, BitVec& scratch) const;

  // Systematic variant: the codeword carries the info bits verbatim at the
  // info-set positions (double-transform construction).
  BitVec encode_systematic(const BitVec& info) const;
  void encode_systematic_into(const BitVec& info, BitVec& out,
                              BitVec& scratch) const;

  ScResult sc_decode(const LlrVec& llrs, PolarDecodeOptions opts = {},
                     PolarWorkspace* ws = nullptr) const;
  void sc_decode_into(const LlrVec& llrs, ScResult& out, PolarWorkspace& ws,
                      PolarDecodeOptions opts = {}) const;

  // Soft-cancellation decoding; iterations >= 1. Outputs are posteriors
  // (channel input plus extrinsic) saturated to +-kLlrSaturation.
  ScanResult scan_decode(const LlrVec& llrs, int iterations = 1,
                         PolarDecodeOptions opts = {},
                         PolarWorkspace* ws = nullptr) const;
  void scan_decode_into(const LlrVec& llrs, int iterations, ScanResult& out,
                        PolarWorkspace& ws, PolarDecodeOptions opts = {}) const;

  // Brute-force posterior of every info bit by codebook enumeration.
  // Exponential in info_len; restricted to mother_len <= 16.
  LlrVec exact_bit_posteriors(const LlrVec& llrs) const;

  // In-place GF(2) polar transform, natural order; self-inverse.
  static void polar_transform(std::span<std::uint8_t> bits);

 private:
  int mother_len_;
  int info_len_;
  int target_len_;
  double design_ebn0_db_;
  std::vector<int> frozen_set_;
  std::vector<int> info_set_;
  BitVec frozen_mask_;
};

// Drop mother-codeword bits past target_len.
BitVec rate_match(const BitVec& mother_bits, int target_len);
// Restore a received LLR vector to mother length; dropped positions are known
// zeros and enter as +saturation.
LlrVec rate_dematch(const LlrVec& llrs, int mother_len);

}  // namespace st2d
