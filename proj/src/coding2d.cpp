// SPDX-License-Identifier: Apache-2.0
#include "st2d/coding2d.hpp"

#include <stdexcept>

namespace st2d {

namespace {

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::string to_string(St2dMode mode) {
  switch (mode) {
    case St2dMode::TimeSpace: return "time_space";
    case St2dMode::SpaceTime: return "space_time";
    case St2dMode::TimeOnlyParallel: return "time_only_parallel";
    case St2dMode::TimeOnlyFolded: return "time_only_folded";
  }
  return "?";
}

std::vector<std::uint8_t> flag_stream_errors(const BitStreams& decoded,
                                             const BitStreams& reference) {
  if (decoded.streams.size() != reference.streams.size()) {
    throw std::invalid_argument("flag_stream_errors: stream count mismatch");
  }
  std::vector<std::uint8_t> flags(decoded.streams.size(), 0);
  for (size_t s = 0; s < flags.size(); ++s) {
    flags[s] = std::uint8_t(decoded.streams[s] != reference.streams[s]);
  }
  return flags;
}

St2dCodec::St2dCodec(const St2dConfig& cfg) : cfg_(cfg) {
  if (cfg_.layers_l <= 0 || cfg_.width_mbit <= 0) {
    throw std::invalid_argument("st2d: layers and width must be positive");
  }
  const int l = cfg_.layers_l;
  const int m = cfg_.width_mbit;

  auto add_stream_code = [&](int n, int k, int span_unit) {
    if (n % span_unit != 0) {
      throw std::invalid_argument(
          "st2d: stage-one code length must be a multiple of the trellis side");
    }
    stream_codes_.emplace_back(next_pow2(n), k, n, cfg_.design_ebn0_db);
    stream_start_.push_back(stream_start_.empty()
                                ? 0
                                : stream_start_.back() + stream_span_.back());
    stream_span_.push_back(n / span_unit);
    stream_info_lens_.push_back(k);
  };

  switch (cfg_.mode) {
    case St2dMode::TimeSpace: {
      if (cfg_.n_space != l) {
        throw std::invalid_argument(
            "st2d: time-space mode needs a space code spanning one column");
      }
      if (!cfg_.time_code_profile.empty()) {
        for (auto [n, k] : cfg_.time_code_profile) add_stream_code(n, k, m);
      } else {
        if ((cfg_.k_space * m) % cfg_.n_time != 0) {
          throw std::invalid_argument(
              "st2d: time codewords must tile the space-info region");
        }
        const int s = cfg_.k_space * m / cfg_.n_time;
        for (int i = 0; i < s; ++i) add_stream_code(cfg_.n_time, cfg_.k_time, m);
      }
      int rows = 0;
      for (int sp : stream_span_) rows += sp;
      if (rows != cfg_.k_space) {
        throw std::invalid_argument(
            "st2d: time codewords must fill exactly k_space rows");
      }
      cover_code_.emplace(next_pow2(l), cfg_.k_space, l, cfg_.design_ebn0_db);
      cover_info_len_ = cfg_.k_space;
      break;
    }
    case St2dMode::SpaceTime: {
      if (cfg_.n_time != m) {
        throw std::invalid_argument(
            "st2d: space-time mode needs a time code spanning one row");
      }
      if ((cfg_.k_time * l) % cfg_.n_space != 0) {
        throw std::invalid_argument(
            "st2d: space codewords must tile the time-info region");
      }
      const int s = cfg_.k_time * l / cfg_.n_space;
      for (int i = 0; i < s; ++i) add_stream_code(cfg_.n_space, cfg_.k_space, l);
      int cols = 0;
      for (int sp : stream_span_) cols += sp;
      if (cols != cfg_.k_time) {
        throw std::invalid_argument(
            "st2d: space codewords must fill exactly k_time columns");
      }
      cover_code_.emplace(next_pow2(m), cfg_.k_time, m, cfg_.design_ebn0_db);
      cover_info_len_ = cfg_.k_time;
      break;
    }
    case St2dMode::TimeOnlyParallel: {
      if (cfg_.n_time != m) {
        throw std::invalid_argument(
            "st2d: parallel mapping carries one codeword per layer row");
      }
      for (int i = 0; i < l; ++i) add_stream_code(cfg_.n_time, cfg_.k_time, m);
      break;
    }
    case St2dMode::TimeOnlyFolded: {
      if ((l * m) % cfg_.n_time != 0) {
        throw std::invalid_argument(
            "st2d: folded stream must hold a whole number of codewords");
      }
      if (cfg_.modulation_q <= 0 || m % cfg_.modulation_q != 0) {
        throw std::invalid_argument(
            "st2d: folded mapping needs width divisible by bits per symbol");
      }
      codewords_per_stream_ = l * m / cfg_.n_time;
      stream_codes_.emplace_back(next_pow2(cfg_.n_time), cfg_.k_time,
                                 cfg_.n_time, cfg_.design_ebn0_db);
      stream_start_.push_back(0);
      stream_span_.push_back(l);
      stream_info_lens_.push_back(codewords_per_stream_ * cfg_.k_time);
      break;
    }
  }

  if (cover_code_) {
    const auto& info = cover_code_->info_set();
    cover_perm_.assign(info.begin(), info.end());
    std::vector<std::uint8_t> in_info(cover_code_->target_len(), 0);
    for (int p : info) in_info[p] = 1;
    for (int p = 0; p < cover_code_->target_len(); ++p) {
      if (!in_info[p]) cover_perm_.push_back(p);
    }
  }

  total_info_bits_ = 0;
  for (int k : stream_info_lens_) total_info_bits_ += k;
}

double St2dCodec::overall_rate() const {
  return double(total_info_bits_) /
         (double(cfg_.layers_l) * double(cfg_.width_mbit));
}

BitStreams St2dCodec::make_streams() const {
  BitStreams out;
  out.streams.reserve(stream_info_lens_.size());
  for (int k : stream_info_lens_) out.streams.emplace_back(k, 0);
  return out;
}

void St2dCodec::encode_into(const BitStreams& in, CodewordTrellis& out,
                            St2dWorkspace& ws) const {
  if (in.streams.size() != stream_codes_.size()) {
    throw std::invalid_argument("st2d encode: wrong stream count");
  }
  out.reset(cfg_.layers_l, cfg_.width_mbit);
  switch (cfg_.mode) {
    case St2dMode::TimeSpace: return encode_time_space(in, out, ws);
    case St2dMode::SpaceTime: return encode_space_time(in, out, ws);
    case St2dMode::TimeOnlyParallel: return encode_parallel(in, out, ws);
    case St2dMode::TimeOnlyFolded: return encode_folded(in, out, ws);
  }
}

CodewordTrellis St2dCodec::encode(const BitStreams& in) const {
  CodewordTrellis out;
  St2dWorkspace ws;
  encode_into(in, out, ws);
  return out;
}

void St2dCodec::encode_time_space(const BitStreams& in, CodewordTrellis& out,
                                  St2dWorkspace& ws) const {
  const int m = cfg_.width_mbit;
  for (size_t s = 0; s < stream_codes_.size(); ++s) {
    stream_codes_[s].encode_into(in.streams[s], ws.bits_a, ws.bits_b);
    const int row0 = stream_start_[s];
    for (int j = 0; j < int(ws.bits_a.size()); ++j) {
      out.at(row0 + j / m, j % m) = ws.bits_a[j];
    }
  }
  const int k = cover_info_len_;
  for (int t = 0; t < m; ++t) {
    ws.bits_c.resize(k);
    for (int i = 0; i < k; ++i) ws.bits_c[i] = out.at(i, t);
    cover_code_->encode_systematic_into(ws.bits_c, ws.bits_a, ws.bits_b);
    for (int r = 0; r < cfg_.layers_l; ++r) {
      out.at(r, t) = ws.bits_a[cover_perm_[r]];
    }
  }
}

void St2dCodec::encode_space_time(const BitStreams& in, CodewordTrellis& out,
                                  St2dWorkspace& ws) const {
  const int l = cfg_.layers_l;
  for (size_t s = 0; s < stream_codes_.size(); ++s) {
    stream_codes_[s].encode_into(in.streams[s], ws.bits_a, ws.bits_b);
    const int col0 = stream_start_[s];
    for (int j = 0; j < int(ws.bits_a.size()); ++j) {
      out.at(j % l, col0 + j / l) = ws.bits_a[j];
    }
  }
  const int k = cover_info_len_;
  for (int r = 0; r < l; ++r) {
    ws.bits_c.resize(k);
    for (int i = 0; i < k; ++i) ws.bits_c[i] = out.at(r, i);
    cover_code_->encode_systematic_into(ws.bits_c, ws.bits_a, ws.bits_b);
    for (int t = 0; t < cfg_.width_mbit; ++t) {
      out.at(r, t) = ws.bits_a[cover_perm_[t]];
    }
  }
}

void St2dCodec::encode_parallel(const BitStreams& in, CodewordTrellis& out,
                                St2dWorkspace& ws) const {
  const int m = cfg_.width_mbit;
  for (size_t s = 0; s < stream_codes_.size(); ++s) {
    stream_codes_[s].encode_into(in.streams[s], ws.bits_a, ws.bits_b);
    for (int j = 0; j < m; ++j) out.at(int(s), j) = ws.bits_a[j];
  }
}

void St2dCodec::encode_folded(const BitStreams& in, CodewordTrellis& out,
                              St2dWorkspace& ws) const {
  const int l = cfg_.layers_l;
  const int q = cfg_.modulation_q;
  const int n = stream_codes_[0].target_len();
  const int k = stream_codes_[0].info_len();
  const auto& stream = in.streams[0];
  if (int(stream.size()) != codewords_per_stream_ * k) {
    throw std::invalid_argument("st2d encode: wrong folded stream length");
  }
  int bit_index = 0;
  for (int c = 0; c < codewords_per_stream_; ++c) {
    ws.bits_c.assign(stream.begin() + size_t(c) * k,
                     stream.begin() + size_t(c + 1) * k);
    stream_codes_[0].encode_into(ws.bits_c, ws.bits_a, ws.bits_b);
    for (int j = 0; j < n; ++j, ++bit_index) {
      const int sym = bit_index / q;
      out.at(sym % l, (sym / l) * q + bit_index % q) = ws.bits_a[j];
    }
  }
}

void St2dCodec::decode_into(const LlrTrellis& in, BitStreams& out,
                            St2dWorkspace& ws) const {
  if (in.layers_l != cfg_.layers_l || in.width_mbit != cfg_.width_mbit) {
    throw std::invalid_argument("st2d decode: wrong trellis shape");
  }
  if (out.streams.size() != stream_info_lens_.size()) out = make_streams();
  switch (cfg_.mode) {
    case St2dMode::TimeSpace: return decode_time_space(in, out, ws);
    case St2dMode::SpaceTime: return decode_space_time(in, out, ws);
    case St2dMode::TimeOnlyParallel: return decode_parallel(in, out, ws);
    case St2dMode::TimeOnlyFolded: return decode_folded(in, out, ws);
  }
}

BitStreams St2dCodec::decode(const LlrTrellis& in) const {
  BitStreams out;
  St2dWorkspace ws;
  decode_into(in, out, ws);
  return out;
}

void St2dCodec::decode_time_space(const LlrTrellis& in, BitStreams& out,
                                  St2dWorkspace& ws) const {
  const int l = cfg_.layers_l;
  const int m = cfg_.width_mbit;
  const int k = cover_info_len_;
  const PolarDecodeOptions opts{cfg_.node_update};
  ws.stage1.resize(size_t(k) * m);
  ws.vec_a.resize(l);
  for (int t = 0; t < m; ++t) {
    for (int r = 0; r < l; ++r) ws.vec_a[cover_perm_[r]] = in.at(r, t);
    cover_code_->scan_decode_into(ws.vec_a, cfg_.scan_iterations, ws.scan,
                                  ws.polar, opts);
    const LlrVec& soft = cfg_.stage_llr == StageLlr::Posterior
                             ? ws.scan.codebit_llrs
                             : ws.scan.codebit_extrinsic;
    for (int i = 0; i < k; ++i) {
      ws.stage1[size_t(i) * m + t] = soft[cover_perm_[i]];
    }
  }
  for (size_t s = 0; s < stream_codes_.size(); ++s) {
    const int n = stream_codes_[s].target_len();
    const int row0 = stream_start_[s];
    ws.vec_b.resize(n);
    for (int j = 0; j < n; ++j) {
      ws.vec_b[j] = ws.stage1[size_t(row0 + j / m) * m + j % m];
    }
    stream_codes_[s].sc_decode_into(ws.vec_b, ws.sc, ws.polar, opts);
    out.streams[s] = ws.sc.info_bits;
  }
}

void St2dCodec::decode_space_time(const LlrTrellis& in, BitStreams& out,
                                  St2dWorkspace& ws) const {
  const int l = cfg_.layers_l;
  const int m = cfg_.width_mbit;
  const int k = cover_info_len_;
  const PolarDecodeOptions opts{cfg_.node_update};
  ws.stage1.resize(size_t(l) * k);
  ws.vec_a.resize(m);
  for (int r = 0; r < l; ++r) {
    for (int t = 0; t < m; ++t) ws.vec_a[cover_perm_[t]] = in.at(r, t);
    cover_code_->scan_decode_into(ws.vec_a, cfg_.scan_iterations, ws.scan,
                                  ws.polar, opts);
    const LlrVec& soft = cfg_.stage_llr == StageLlr::Posterior
                             ? ws.scan.codebit_llrs
                             : ws.scan.codebit_extrinsic;
    for (int t = 0; t < k; ++t) {
      ws.stage1[size_t(r) * k + t] = soft[cover_perm_[t]];
    }
  }
  for (size_t s = 0; s < stream_codes_.size(); ++s) {
    const int n = stream_codes_[s].target_len();
    const int col0 = stream_start_[s];
    ws.vec_b.resize(n);
    for (int j = 0; j < n; ++j) {
      ws.vec_b[j] = ws.stage1[size_t(j % l) * k + col0 + j / l];
    }
    stream_codes_[s].sc_decode_into(ws.vec_b, ws.sc, ws.polar, opts);
    out.streams[s] = ws.sc.info_bits;
  }
}

void St2dCodec::decode_parallel(const LlrTrellis& in, BitStreams& out,
                                St2dWorkspace& ws) const {
  const int m = cfg_.width_mbit;
  const PolarDecodeOptions opts{cfg_.node_update};
  ws.vec_a.resize(m);
  for (size_t s = 0; s < stream_codes_.size(); ++s) {
    for (int j = 0; j < m; ++j) ws.vec_a[j] = in.at(int(s), j);
    stream_codes_[s].sc_decode_into(ws.vec_a, ws.sc, ws.polar, opts);
    out.streams[s] = ws.sc.info_bits;
  }
}

void St2dCodec::decode_folded(const LlrTrellis& in, BitStreams& out,
                              St2dWorkspace& ws) const {
  const int l = cfg_.layers_l;
  const int q = cfg_.modulation_q;
  const int n = stream_codes_[0].target_len();
  const int k = stream_codes_[0].info_len();
  const PolarDecodeOptions opts{cfg_.node_update};
  out.streams[0].resize(size_t(codewords_per_stream_) * k);
  ws.vec_a.resize(n);
  int bit_index = 0;
  for (int c = 0; c < codewords_per_stream_; ++c) {
    for (int j = 0; j < n; ++j, ++bit_index) {
      const int sym = bit_index / q;
      ws.vec_a[j] = in.at(sym % l, (sym / l) * q + bit_index % q);
    }
    stream_codes_[0].sc_decode_into(ws.vec_a, ws.sc, ws.polar, opts);
    for (int i = 0; i < k; ++i) {
      out.streams[0][size_t(c) * k + i] = ws.sc.info_bits[i];
    }
  }
}

DecodeResult decode_with_reference(const St2dCodec& codec, const LlrTrellis& in,
                                   const BitStreams* reference) {
  DecodeResult r;
  r.streams = codec.decode(in);
  if (reference) {
    r.stream_errors = flag_stream_errors(r.streams, *reference);
  } else {
    r.stream_errors.assign(r.streams.streams.size(), 0);
  }
  return r;
}

}  // namespace st2d
