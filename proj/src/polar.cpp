// SPDX-License-Identifier: Apache-2.0
#include "st2d/polar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace st2d {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_int(int n) {
  int k = 0;
  while ((1 << k) < n) ++k;
  return k;
}

double f_minsum(double a, double b) {
  const double m = std::min(std::fabs(a), std::fabs(b));
  return ((a < 0) == (b < 0)) ? m : -m;
}

// Exact check-node update 2*atanh(tanh(a/2)tanh(b/2)) in a stable form.
double f_exact(double a, double b) {
  return f_minsum(a, b) + std::log1p(std::exp(-std::fabs(a + b))) -
         std::log1p(std::exp(-std::fabs(a - b)));
}

inline double f_node(double a, double b, NodeUpdate nu) {
  return nu == NodeUpdate::MinSum ? f_minsum(a, b) : f_exact(a, b);
}

inline double g_node(double a, double b, std::uint8_t u) {
  return u ? b - a : b + a;
}

void sc_rec(const double* llr, int len, const std::uint8_t* frozen,
            std::uint8_t* u, std::uint8_t* x, double* scratch, NodeUpdate nu) {
  if (len == 1) {
    u[0] = frozen[0] ? 0 : std::uint8_t(llr[0] < 0.0);
    x[0] = u[0];
    return;
  }
  const int h = len / 2;
  for (int i = 0; i < h; ++i) scratch[i] = f_node(llr[i], llr[i + h], nu);
  sc_rec(scratch, h, frozen, u, x, scratch + h, nu);
  for (int i = 0; i < h; ++i) scratch[i] = g_node(llr[i], llr[i + h], x[i]);
  sc_rec(scratch, h, frozen + h, u + h, x + h, scratch + h, nu);
  for (int i = 0; i < h; ++i) x[i] ^= x[i + h];
}

struct ScanState {
  std::vector<std::vector<double>>* l;
  std::vector<std::vector<double>>* r;
  const std::uint8_t* frozen;
  NodeUpdate nu;
};

// One soft-cancellation pass; right-going messages persist across passes.
void scan_rec(ScanState& st, int d, int off, int len) {
  auto& l = *st.l;
  auto& r = *st.r;
  if (len == 1) {
    r[d][off] = st.frozen[off] ? kLlrSaturation : 0.0;
    return;
  }
  const int h = len / 2;
  for (int j = 0; j < h; ++j) {
    l[d + 1][off + j] =
        f_node(l[d][off + j], l[d][off + h + j] + r[d + 1][off + h + j], st.nu);
  }
  scan_rec(st, d + 1, off, h);
  for (int j = 0; j < h; ++j) {
    l[d + 1][off + h + j] =
        l[d][off + h + j] + f_node(l[d][off + j], r[d + 1][off + j], st.nu);
  }
  scan_rec(st, d + 1, off + h, h);
  for (int j = 0; j < h; ++j) {
    r[d][off + j] =
        f_node(r[d + 1][off + j], l[d][off + h + j] + r[d + 1][off + h + j],
               st.nu);
    r[d][off + h + j] =
        r[d + 1][off + h + j] + f_node(r[d + 1][off + j], l[d][off + j], st.nu);
  }
}

}  // namespace

void PolarWorkspace::prepare(int mother_len) {
  if (mother_len_ == mother_len) return;
  mother_len_ = mother_len;
  mother_llrs.assign(mother_len, 0.0);
  llr_arena.assign(mother_len, 0.0);
  u_bits.assign(mother_len, 0);
  x_bits.assign(mother_len, 0);
  const int stages = log2_int(mother_len) + 1;
  scan_l.assign(stages, std::vector<double>(mother_len, 0.0));
  scan_r.assign(stages, std::vector<double>(mother_len, 0.0));
}

namespace ga {

double phi(double x) {
  if (std::isinf(x)) return 0.0;
  if (x <= 0.0) return 1.0;
  if (x < 10.0) {
    return std::min(1.0, std::exp(-0.4527 * std::pow(x, 0.86) + 0.0218));
  }
  return std::sqrt(std::numbers::pi / x) * std::exp(-x / 4.0) *
         (1.0 - 10.0 / (7.0 * x));
}

double phi_inv(double y) {
  if (y >= 1.0) return 0.0;
  if (y <= 0.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = 1.0;
  while (phi(hi) > y && hi < 1e9) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double design_channel_mean(double ebn0_db, double rate) {
  return 4.0 * rate * std::pow(10.0, ebn0_db / 10.0);
}

namespace {

double check_mean(double a, double b) {
  if (std::isinf(a)) return b;
  if (std::isinf(b)) return a;
  const double pa = phi(a);
  const double pb = phi(b);
  return phi_inv(pa + pb - pa * pb);
}

void evolve(std::vector<double>& m) {
  const int n = int(m.size());
  if (n == 1) return;
  const int h = n / 2;
  std::vector<double> up(h), low(h);
  for (int i = 0; i < h; ++i) {
    up[i] = check_mean(m[i], m[i + h]);
    low[i] = m[i] + m[i + h];
  }
  evolve(up);
  evolve(low);
  for (int i = 0; i < h; ++i) {
    m[i] = up[i];
    m[i + h] = low[i];
  }
}

}  // namespace

std::vector<double> synthetic_means(int mother_len, double channel_mean,
                                    int target_len) {
  std::vector<double> m(mother_len, channel_mean);
  for (int i = target_len; i < mother_len; ++i) {
    m[i] = std::numeric_limits<double>::infinity();
  }
  evolve(m);
  return m;
}

}  // namespace ga

PolarCode::PolarCode(int mother_len, int info_len, int target_len,
                     double design_ebn0_db)
    : mother_len_(mother_len),
      info_len_(info_len),
      target_len_(target_len),
      design_ebn0_db_(design_ebn0_db) {
  if (!is_pow2(mother_len_)) {
    throw std::invalid_argument("polar: mother length must be a power of two");
  }
  if (target_len_ <= 0 || target_len_ > mother_len_) {
    throw std::invalid_argument("polar: target length out of range");
  }
  if (info_len_ <= 0 || info_len_ > target_len_) {
    throw std::invalid_argument("polar: info length out of range");
  }
  const double m0 =
      ga::design_channel_mean(design_ebn0_db_, double(info_len_) / target_len_);
  const auto means = ga::synthetic_means(mother_len_, m0, target_len_);

  std::vector<int> order(target_len_);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (means[a] != means[b]) return means[a] < means[b];
    return a < b;
  });

  frozen_mask_.assign(mother_len_, 0);
  for (int i = target_len_; i < mother_len_; ++i) frozen_mask_[i] = 1;
  for (int i = 0; i < target_len_ - info_len_; ++i) frozen_mask_[order[i]] = 1;

  for (int i = 0; i < mother_len_; ++i) {
    (frozen_mask_[i] ? frozen_set_ : info_set_).push_back(i);
  }
}

void PolarCode::polar_transform(std::span<std::uint8_t> bits) {
  const int n = int(bits.size());
  for (int h = 1; h < n; h <<= 1) {
    for (int i = 0; i < n; i += 2 * h) {
      for (int j = i; j < i + h; ++j) bits[j] ^= bits[j + h];
    }
  }
}

BitVec rate_match(const BitVec& mother_bits, int target_len) {
  if (target_len > int(mother_bits.size())) {
    throw std::invalid_argument("rate_match: target exceeds mother length");
  }
  return BitVec(mother_bits.begin(), mother_bits.begin() + target_len);
}

LlrVec rate_dematch(const LlrVec& llrs, int mother_len) {
  if (int(llrs.size()) > mother_len) {
    throw std::invalid_argument("rate_dematch: input exceeds mother length");
  }
  LlrVec out(llrs);
  out.resize(mother_len, kLlrSaturation);
  return out;
}

void PolarCode::encode_into(const BitVec& info, BitVec& out,
                            BitVec& scratch) const {
  if (int(info.size()) != info_len_) {
    throw std::invalid_argument("polar encode: wrong info length");
  }
  scratch.assign(mother_len_, 0);
  for (int i = 0; i < info_len_; ++i) scratch[info_set_[i]] = info[i];
  polar_transform(scratch);
  out.assign(scratch.begin(), scratch.begin() + target_len_);
}

BitVec PolarCode::encode(const BitVec& info) const {
  BitVec out, scratch;
  encode_into(info, out, scratch);
  return out;
}

void PolarCode::encode_systematic_into(const BitVec& info, BitVec& out,
                                       BitVec& scratch) const {
  if (int(info.size()) != info_len_) {
    throw std::invalid_argument("polar encode: wrong info length");
  }
  scratch.assign(mother_len_, 0);
  for (int i = 0; i < info_len_; ++i) scratch[info_set_[i]] = info[i];
  polar_transform(scratch);
  for (int i : frozen_set_) scratch[i] = 0;
  polar_transform(scratch);
  out.assign(scratch.begin(), scratch.begin() + target_len_);
}

BitVec PolarCode::encode_systematic(const BitVec& info) const {
  BitVec out, scratch;
  encode_systematic_into(info, out, scratch);
  return out;
}

void PolarCode::sc_decode_into(const LlrVec& llrs, ScResult& out,
                               PolarWorkspace& ws,
                               PolarDecodeOptions opts) const {
  if (int(llrs.size()) != target_len_) {
    throw std::invalid_argument("sc_decode: wrong LLR length");
  }
  ws.prepare(mother_len_);
  for (int i = 0; i < target_len_; ++i) ws.mother_llrs[i] = clamp_llr(llrs[i]);
  for (int i = target_len_; i < mother_len_; ++i) {
    ws.mother_llrs[i] = kLlrSaturation;
  }
  sc_rec(ws.mother_llrs.data(), mother_len_, frozen_mask_.data(),
         ws.u_bits.data(), ws.x_bits.data(), ws.llr_arena.data(),
         opts.node_update);
  out.info_bits.resize(info_len_);
  for (int i = 0; i < info_len_; ++i) out.info_bits[i] = ws.u_bits[info_set_[i]];
  out.codeword.assign(ws.x_bits.begin(), ws.x_bits.begin() + target_len_);
}

ScResult PolarCode::sc_decode(const LlrVec& llrs, PolarDecodeOptions opts,
                              PolarWorkspace* ws) const {
  PolarWorkspace local;
  ScResult out;
  sc_decode_into(llrs, out, ws ? *ws : local, opts);
  return out;
}

void PolarCode::scan_decode_into(const LlrVec& llrs, int iterations,
                                 ScanResult& out, PolarWorkspace& ws,
                                 PolarDecodeOptions opts) const {
  if (int(llrs.size()) != target_len_) {
    throw std::invalid_argument("scan_decode: wrong LLR length");
  }
  if (iterations < 1) {
    throw std::invalid_argument("scan_decode: iterations must be >= 1");
  }
  ws.prepare(mother_len_);
  const int stages = log2_int(mother_len_) + 1;
  for (int d = 0; d < stages; ++d) {
    std::fill(ws.scan_r[d].begin(), ws.scan_r[d].end(), 0.0);
  }
  for (int i = 0; i < target_len_; ++i) ws.scan_l[0][i] = clamp_llr(llrs[i]);
  for (int i = target_len_; i < mother_len_; ++i) {
    ws.scan_l[0][i] = kLlrSaturation;
  }
  ScanState st{&ws.scan_l, &ws.scan_r, frozen_mask_.data(), opts.node_update};
  for (int it = 0; it < iterations; ++it) scan_rec(st, 0, 0, mother_len_);

  const int n = stages - 1;
  out.info_llrs.resize(info_len_);
  for (int i = 0; i < info_len_; ++i) {
    const int p = info_set_[i];
    out.info_llrs[i] = clamp_llr(ws.scan_l[n][p] + ws.scan_r[n][p]);
  }
  out.codebit_llrs.resize(target_len_);
  out.codebit_extrinsic.resize(target_len_);
  for (int i = 0; i < target_len_; ++i) {
    out.codebit_llrs[i] = clamp_llr(ws.scan_l[0][i] + ws.scan_r[0][i]);
    out.codebit_extrinsic[i] = clamp_llr(ws.scan_r[0][i]);
  }
}

ScanResult PolarCode::scan_decode(const LlrVec& llrs, int iterations,
                                  PolarDecodeOptions opts,
                                  PolarWorkspace* ws) const {
  PolarWorkspace local;
  ScanResult out;
  scan_decode_into(llrs, iterations, out, ws ? *ws : local, opts);
  return out;
}

LlrVec PolarCode::exact_bit_posteriors(const LlrVec& llrs) const {
  if (mother_len_ > 16) {
    throw std::invalid_argument("exact_bit_posteriors: mother length > 16");
  }
  if (int(llrs.size()) != target_len_) {
    throw std::invalid_argument("exact_bit_posteriors: wrong LLR length");
  }
  // Running log-sum-exp accumulators (max, scaled sum) per hypothesis.
  struct Lse {
    double m = -std::numeric_limits<double>::infinity();
    double s = 0.0;
    void add(double v) {
      if (v > m) {
        s = s * std::exp(m - v) + 1.0;
        m = v;
      } else {
        s += std::exp(v - m);
      }
    }
    double value() const { return m + std::log(s); }
  };
  std::vector<Lse> acc0(info_len_), acc1(info_len_);
  BitVec u(mother_len_);
  for (std::uint32_t word = 0; word < (1u << info_len_); ++word) {
    std::fill(u.begin(), u.end(), 0);
    for (int i = 0; i < info_len_; ++i) {
      u[info_set_[i]] = std::uint8_t((word >> i) & 1u);
    }
    BitVec x = u;
    polar_transform(x);
    double metric = 0.0;
    for (int i = 0; i < target_len_; ++i) {
      if (x[i]) metric -= llrs[i];
    }
    for (int i = 0; i < info_len_; ++i) {
      ((word >> i) & 1u ? acc1[i] : acc0[i]).add(metric);
    }
  }
  LlrVec out(info_len_);
  for (int i = 0; i < info_len_; ++i) {
    out[i] = acc0[i].value() - acc1[i].value();
  }
  return out;
}

}  // namespace st2d
