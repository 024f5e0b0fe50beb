// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <vector>

#include <doctest.h>

#include "st2d/coding2d.hpp"
#include "st2d/rng.hpp"

using namespace st2d;

namespace {

// Membership oracle independent of the encoder: undo the (self-inverse)
// transform and check frozen u-positions. Shortened coordinates re-enter as
// the zeros the construction forces them to be.
bool is_codeword(const PolarCode& code, const BitVec& x_target) {
  REQUIRE(int(x_target.size()) == code.target_len());
  BitVec u(code.mother_len(), 0);
  std::copy(x_target.begin(), x_target.end(), u.begin());
  PolarCode::polar_transform(u);
  for (int f : code.frozen_set()) {
    if (u[f]) return false;
  }
  return true;
}

// Front-systematic coordinate order, re-derived from the documented rule
// (info set first, then the remaining coordinates in ascending order).
std::vector<int> front_perm(const PolarCode& code) {
  std::vector<int> perm(code.info_set().begin(), code.info_set().end());
  BitVec in_info(code.target_len(), 0);
  for (int p : code.info_set()) in_info[p] = 1;
  for (int p = 0; p < code.target_len(); ++p) {
    if (!in_info[p]) perm.push_back(p);
  }
  return perm;
}

BitVec column_of(const CodewordTrellis& tr, int t) {
  BitVec col(tr.layers_l);
  for (int r = 0; r < tr.layers_l; ++r) col[r] = tr.at(r, t);
  return col;
}

BitVec row_of(const CodewordTrellis& tr, int r) {
  BitVec row(tr.width_mbit);
  for (int t = 0; t < tr.width_mbit; ++t) row[t] = tr.at(r, t);
  return row;
}

// Undo the front-systematic coordinate move before the membership check.
BitVec unpermute(const BitVec& placed, const std::vector<int>& perm) {
  BitVec x(placed.size());
  for (size_t i = 0; i < placed.size(); ++i) x[perm[i]] = placed[i];
  return x;
}

BitStreams random_streams(const St2dCodec& codec, Xoshiro256pp& rng) {
  BitStreams s = codec.make_streams();
  for (auto& v : s.streams) random_bits(rng, v);
  return s;
}

LlrTrellis noiseless_llrs(const CodewordTrellis& tr, double mag = 8.0) {
  LlrTrellis llr;
  llr.reset(tr.layers_l, tr.width_mbit);
  for (int r = 0; r < tr.layers_l; ++r) {
    for (int t = 0; t < tr.width_mbit; ++t) {
      llr.at(r, t) = tr.at(r, t) ? -mag : mag;
    }
  }
  return llr;
}

BitStreams xor_streams(const BitStreams& a, const BitStreams& b) {
  BitStreams out = a;
  for (size_t s = 0; s < out.streams.size(); ++s) {
    for (size_t i = 0; i < out.streams[s].size(); ++i) {
      out.streams[s][i] ^= b.streams[s][i];
    }
  }
  return out;
}

bool trellis_equal(const CodewordTrellis& a, const CodewordTrellis& b) {
  return a.layers_l == b.layers_l && a.width_mbit == b.width_mbit &&
         a.bits == b.bits;
}

}  // namespace

TEST_SUITE("coding2d") {

TEST_CASE("layer mapping: folded splits a stream column-major across layers") {
  std::vector<int> stream{10, 11, 12, 13, 14, 15, 16, 17};
  auto layers = map_folded(stream, 4);
  REQUIRE(layers.size() == 4);
  CHECK(layers[0] == std::vector<int>{10, 14});
  CHECK(layers[1] == std::vector<int>{11, 15});
  CHECK(layers[2] == std::vector<int>{12, 16});
  CHECK(layers[3] == std::vector<int>{13, 17});
  CHECK(unmap_folded(layers) == stream);
  CHECK_THROWS_AS(map_folded(stream, 3), std::invalid_argument);
}

TEST_CASE("layer mapping: parallel is one stream per layer") {
  std::vector<std::vector<int>> streams{{1, 2}, {3, 4}, {5, 6}};
  auto layers = map_parallel(streams, 3);
  CHECK(layers == streams);
  CHECK_THROWS_AS(map_parallel(streams, 4), std::invalid_argument);
}

TEST_CASE("time-space: stage-one codewords verbatim, every row and column a member") {
  St2dConfig cfg;
  cfg.mode = St2dMode::TimeSpace;
  cfg.layers_l = 8;
  cfg.width_mbit = 8;
  cfg.n_time = 8;
  cfg.k_time = 4;
  cfg.n_space = 8;
  cfg.k_space = 4;
  St2dCodec codec(cfg);
  REQUIRE(codec.stream_count() == 4);  // k_space rows, one codeword per row

  const PolarCode time_code(8, 4, 8, cfg.design_ebn0_db);
  const PolarCode space_code(8, 4, 8, cfg.design_ebn0_db);
  const auto perm = front_perm(space_code);

  Xoshiro256pp rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const BitStreams in = random_streams(codec, rng);
    const CodewordTrellis tr = codec.encode(in);

    for (int s = 0; s < 4; ++s) {
      CHECK(row_of(tr, s) == time_code.encode(in.streams[s]));
    }
    // Rows past the stage-one region are GF(2) combinations of stage-one
    // rows, hence time codewords themselves.
    for (int r = 0; r < 8; ++r) CHECK(is_codeword(time_code, row_of(tr, r)));
    for (int t = 0; t < 8; ++t) {
      CHECK(is_codeword(space_code, unpermute(column_of(tr, t), perm)));
    }
  }
}

TEST_CASE("space-time: transpose construction, rows and columns members") {
  St2dConfig cfg;
  cfg.mode = St2dMode::SpaceTime;
  cfg.layers_l = 8;
  cfg.width_mbit = 8;
  cfg.n_time = 8;
  cfg.k_time = 4;
  cfg.n_space = 8;
  cfg.k_space = 4;
  St2dCodec codec(cfg);
  REQUIRE(codec.stream_count() == 4);  // k_time columns, one codeword per column

  const PolarCode space_code(8, 4, 8, cfg.design_ebn0_db);
  const PolarCode time_code(8, 4, 8, cfg.design_ebn0_db);
  const auto perm = front_perm(time_code);

  Xoshiro256pp rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const BitStreams in = random_streams(codec, rng);
    const CodewordTrellis tr = codec.encode(in);

    for (int s = 0; s < 4; ++s) {
      CHECK(column_of(tr, s) == space_code.encode(in.streams[s]));
    }
    for (int t = 0; t < 8; ++t) CHECK(is_codeword(space_code, column_of(tr, t)));
    for (int r = 0; r < 8; ++r) {
      CHECK(is_codeword(time_code, unpermute(row_of(tr, r), perm)));
    }
  }
}

TEST_CASE("time-space worked example: mixed-rate profile over a 64x16 trellis") {
  St2dConfig cfg;
  cfg.mode = St2dMode::TimeSpace;
  cfg.layers_l = 64;
  cfg.width_mbit = 16;
  cfg.n_space = 64;
  cfg.k_space = 32;
  for (int i = 0; i < 10; ++i) cfg.time_code_profile.emplace_back(16, 4);
  for (int i = 0; i < 12; ++i) cfg.time_code_profile.emplace_back(16, 8);
  for (int i = 0; i < 10; ++i) cfg.time_code_profile.emplace_back(16, 12);
  St2dCodec codec(cfg);

  REQUIRE(codec.stream_count() == 32);
  CHECK(codec.total_info_bits() == 256);
  CHECK(codec.overall_rate() == doctest::Approx(0.25));

  Xoshiro256pp rng(3);
  const BitStreams in = random_streams(codec, rng);
  const CodewordTrellis tr = codec.encode(in);
  REQUIRE(tr.layers_l == 64);
  REQUIRE(tr.width_mbit == 16);

  // First 32 rows carry the per-stream time codewords verbatim.
  std::vector<std::pair<int, int>> profile = cfg.time_code_profile;
  for (int s = 0; s < 32; ++s) {
    const PolarCode code(16, profile[s].second, 16, cfg.design_ebn0_db);
    CHECK(row_of(tr, s) == code.encode(in.streams[s]));
  }
  const PolarCode space_code(64, 32, 64, cfg.design_ebn0_db);
  const auto perm = front_perm(space_code);
  for (int t = 0; t < 16; ++t) {
    CHECK(is_codeword(space_code, unpermute(column_of(tr, t), perm)));
  }
}

TEST_CASE("two-dimensional encodings are GF(2) linear") {
  for (St2dMode mode : {St2dMode::TimeSpace, St2dMode::SpaceTime}) {
    St2dConfig cfg;
    cfg.mode = mode;
    cfg.layers_l = 8;
    cfg.width_mbit = 8;
    cfg.n_time = 8;
    cfg.k_time = 4;
    cfg.n_space = 8;
    cfg.k_space = 4;
    St2dCodec codec(cfg);
    Xoshiro256pp rng(19);
    for (int trial = 0; trial < 50; ++trial) {
      const BitStreams a = random_streams(codec, rng);
      const BitStreams b = random_streams(codec, rng);
      const CodewordTrellis ea = codec.encode(a);
      const CodewordTrellis eb = codec.encode(b);
      const CodewordTrellis es = codec.encode(xor_streams(a, b));
      for (size_t i = 0; i < es.bits.size(); ++i) {
        REQUIRE(es.bits[i] == (ea.bits[i] ^ eb.bits[i]));
      }
    }
  }
}

TEST_CASE("noiseless roundtrip in every mode") {
  auto run = [](St2dConfig cfg) {
    St2dCodec codec(cfg);
    Xoshiro256pp rng(0xC0DE);
    for (int trial = 0; trial < 25; ++trial) {
      const BitStreams in = random_streams(codec, rng);
      const LlrTrellis llr = noiseless_llrs(codec.encode(in));
      const BitStreams out = codec.decode(llr);
      REQUIRE(out.streams == in.streams);
      const auto flags = flag_stream_errors(out, in);
      for (auto f : flags) CHECK(f == 0);
    }
  };

  St2dConfig ts;
  ts.mode = St2dMode::TimeSpace;
  ts.layers_l = 16;
  ts.width_mbit = 16;
  ts.n_time = 16;
  ts.k_time = 8;
  ts.n_space = 16;
  ts.k_space = 8;
  run(ts);

  St2dConfig st = ts;
  st.mode = St2dMode::SpaceTime;
  run(st);

  St2dConfig par;
  par.mode = St2dMode::TimeOnlyParallel;
  par.layers_l = 8;
  par.width_mbit = 16;
  par.n_time = 16;
  par.k_time = 8;
  run(par);

  St2dConfig fold = par;
  fold.mode = St2dMode::TimeOnlyFolded;
  fold.modulation_q = 4;
  run(fold);

  // Folded codewords longer than one layer row.
  St2dConfig fold2;
  fold2.mode = St2dMode::TimeOnlyFolded;
  fold2.layers_l = 8;
  fold2.width_mbit = 8;
  fold2.n_time = 32;
  fold2.k_time = 16;
  fold2.modulation_q = 2;
  run(fold2);
}

TEST_CASE("time-space and space-time orders produce different trellises") {
  St2dConfig ts;
  ts.mode = St2dMode::TimeSpace;
  ts.layers_l = 16;
  ts.width_mbit = 16;
  ts.n_time = 16;
  ts.k_time = 8;
  ts.n_space = 16;
  ts.k_space = 8;
  St2dCodec a(ts);
  St2dConfig st = ts;
  st.mode = St2dMode::SpaceTime;
  St2dCodec b(st);
  REQUIRE(a.total_info_bits() == b.total_info_bits());

  // Same flat payload, split per codec's own stream shapes.
  Xoshiro256pp rng(23);
  BitVec flat(size_t(a.total_info_bits()));
  bool differ = false;
  for (int trial = 0; trial < 20 && !differ; ++trial) {
    random_bits(rng, flat);
    auto split = [&](const St2dCodec& c) {
      BitStreams s = c.make_streams();
      size_t pos = 0;
      for (auto& v : s.streams) {
        std::copy(flat.begin() + pos, flat.begin() + pos + v.size(), v.begin());
        pos += v.size();
      }
      return s;
    };
    differ = !trellis_equal(a.encode(split(a)), b.encode(split(b)));
  }
  CHECK(differ);
}

TEST_CASE("a fully erased column is recovered through the time codes") {
  St2dConfig cfg;
  cfg.mode = St2dMode::TimeSpace;
  cfg.layers_l = 4;
  cfg.width_mbit = 4;
  cfg.n_time = 4;
  cfg.k_time = 2;
  cfg.n_space = 4;
  cfg.k_space = 2;
  St2dCodec codec(cfg);

  Xoshiro256pp rng(31);
  for (int erased = 0; erased < 4; ++erased) {
    for (int trial = 0; trial < 50; ++trial) {
      const BitStreams in = random_streams(codec, rng);
      LlrTrellis llr = noiseless_llrs(codec.encode(in));
      for (int r = 0; r < 4; ++r) llr.at(r, erased) = 0.0;
      const BitStreams out = codec.decode(llr);
      REQUIRE(out.streams == in.streams);
    }
  }
}

TEST_CASE("a flipped strong bit in a parity row is absorbed by the column code") {
  St2dConfig cfg;
  cfg.mode = St2dMode::TimeSpace;
  cfg.layers_l = 8;
  cfg.width_mbit = 4;
  cfg.n_time = 4;
  cfg.k_time = 2;
  cfg.n_space = 8;
  cfg.k_space = 2;
  cfg.scan_iterations = 2;
  St2dCodec codec(cfg);

  Xoshiro256pp rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const BitStreams in = random_streams(codec, rng);
    LlrTrellis llr = noiseless_llrs(codec.encode(in), 4.0);
    const int row = 2 + int(rng.next() % 6);  // parity region only
    const int col = int(rng.next() % 4);
    llr.at(row, col) = -llr.at(row, col);
    const BitStreams out = codec.decode(llr);
    REQUIRE(out.streams == in.streams);
  }
}

TEST_CASE("rate-1 column code reduces time-space to the parallel mapping") {
  St2dConfig ts;
  ts.mode = St2dMode::TimeSpace;
  ts.layers_l = 4;
  ts.width_mbit = 8;
  ts.n_time = 8;
  ts.k_time = 4;
  ts.n_space = 4;
  ts.k_space = 4;  // rate-1 column code: no parity rows
  St2dCodec two_d(ts);

  St2dConfig par;
  par.mode = St2dMode::TimeOnlyParallel;
  par.layers_l = 4;
  par.width_mbit = 8;
  par.n_time = 8;
  par.k_time = 4;
  St2dCodec one_d(par);

  REQUIRE(two_d.stream_count() == one_d.stream_count());

  Xoshiro256pp rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    BitStreams in = two_d.make_streams();
    for (auto& v : in.streams) random_bits(rng, v);
    const CodewordTrellis ta = two_d.encode(in);
    const CodewordTrellis tb = one_d.encode(in);
    REQUIRE(trellis_equal(ta, tb));

    // Same noisy channel output decodes bit-identically through both paths,
    // errors included.
    LlrTrellis llr;
    llr.reset(4, 8);
    for (int r = 0; r < 4; ++r) {
      for (int t = 0; t < 8; ++t) {
        double re, im;
        Xoshiro256pp& nrng = rng;
        nrng.normal_complex(re, im);
        llr.at(r, t) = (ta.at(r, t) ? -1.0 : 1.0) + 1.4 * re;
      }
    }
    const BitStreams da = two_d.decode(llr);
    const BitStreams db = one_d.decode(llr);
    REQUIRE(da.streams == db.streams);
  }
}

TEST_CASE("folded placement matches the symbol-level layer mapping") {
  St2dConfig cfg;
  cfg.mode = St2dMode::TimeOnlyFolded;
  cfg.layers_l = 4;
  cfg.width_mbit = 8;
  cfg.n_time = 16;
  cfg.k_time = 6;
  cfg.modulation_q = 2;
  St2dCodec codec(cfg);
  REQUIRE(codec.codewords_per_stream() == 2);
  REQUIRE(codec.stream_info_lens() == std::vector<int>{12});

  Xoshiro256pp rng(43);
  const BitStreams in = random_streams(codec, rng);
  const CodewordTrellis tr = codec.encode(in);

  // Reference: concatenate the codewords, group bits into symbols, fold the
  // symbol stream, then flatten each layer's symbols back to bits.
  const PolarCode code(16, 6, 16, cfg.design_ebn0_db);
  BitVec serial;
  for (int c = 0; c < 2; ++c) {
    BitVec info(in.streams[0].begin() + c * 6, in.streams[0].begin() + (c + 1) * 6);
    const BitVec cw = code.encode(info);
    serial.insert(serial.end(), cw.begin(), cw.end());
  }
  std::vector<std::vector<int>> symbols(1);
  std::vector<int> sym_stream;
  for (size_t i = 0; i < serial.size(); i += 2) {
    sym_stream.push_back(serial[i] | (serial[i + 1] << 1));
  }
  const auto folded = map_folded(sym_stream, 4);
  for (int l = 0; l < 4; ++l) {
    for (size_t p = 0; p < folded[l].size(); ++p) {
      CHECK(tr.at(l, int(2 * p)) == (folded[l][p] & 1));
      CHECK(tr.at(l, int(2 * p + 1)) == ((folded[l][p] >> 1) & 1));
    }
  }
}

TEST_CASE("shape validation rejects inconsistent configurations") {
  St2dConfig cfg;
  cfg.mode = St2dMode::TimeSpace;
  cfg.layers_l = 8;
  cfg.width_mbit = 8;
  cfg.n_time = 8;
  cfg.k_time = 4;
  cfg.n_space = 16;  // column code must span exactly the layer count
  cfg.k_space = 4;
  CHECK_THROWS_AS(St2dCodec{cfg}, std::invalid_argument);

  cfg.n_space = 8;
  cfg.time_code_profile = {{8, 4}, {8, 4}, {8, 4}};  // 3 rows != k_space
  CHECK_THROWS_AS(St2dCodec{cfg}, std::invalid_argument);

  St2dConfig par;
  par.mode = St2dMode::TimeOnlyParallel;
  par.layers_l = 4;
  par.width_mbit = 8;
  par.n_time = 16;  // parallel rows carry exactly one codeword
  par.k_time = 8;
  CHECK_THROWS_AS(St2dCodec{par}, std::invalid_argument);

  St2dConfig fold;
  fold.mode = St2dMode::TimeOnlyFolded;
  fold.layers_l = 4;
  fold.width_mbit = 8;
  fold.n_time = 24;  // 32 trellis bits not divisible by 24
  fold.k_time = 8;
  CHECK_THROWS_AS(St2dCodec{fold}, std::invalid_argument);

  St2dConfig st;
  st.mode = St2dMode::SpaceTime;
  st.layers_l = 8;
  st.width_mbit = 8;
  st.n_time = 16;  // row code must span exactly the trellis width
  st.k_time = 8;
  st.n_space = 8;
  st.k_space = 4;
  CHECK_THROWS_AS(St2dCodec{st}, std::invalid_argument);
}

TEST_CASE("stream shapes and rates for the reference configurations") {
  St2dConfig ts;
  ts.mode = St2dMode::TimeSpace;
  ts.layers_l = 64;
  ts.width_mbit = 16;
  ts.n_time = 16;
  ts.k_time = 8;
  ts.n_space = 64;
  ts.k_space = 32;
  St2dCodec a(ts);
  CHECK(a.stream_count() == 32);
  CHECK(a.total_info_bits() == 256);
  CHECK(a.overall_rate() == doctest::Approx(0.25));

  St2dConfig st = ts;
  st.mode = St2dMode::SpaceTime;
  St2dCodec b(st);
  CHECK(b.stream_count() == 8);
  CHECK(b.stream_info_lens() == std::vector<int>(8, 32));
  CHECK(b.total_info_bits() == 256);

  St2dConfig fold;
  fold.mode = St2dMode::TimeOnlyFolded;
  fold.layers_l = 4;
  fold.width_mbit = 4;
  fold.n_time = 8;
  fold.k_time = 3;
  fold.modulation_q = 2;
  St2dCodec c(fold);
  CHECK(c.codewords_per_stream() == 2);
  CHECK(c.total_info_bits() == 6);
}

TEST_CASE("encode and decode are deterministic across codec instances") {
  St2dConfig cfg;
  cfg.mode = St2dMode::TimeSpace;
  cfg.layers_l = 16;
  cfg.width_mbit = 16;
  cfg.n_time = 16;
  cfg.k_time = 8;
  cfg.n_space = 16;
  cfg.k_space = 8;
  St2dCodec a(cfg);
  St2dCodec b(cfg);

  Xoshiro256pp rng(53);
  const BitStreams in = random_streams(a, rng);
  const CodewordTrellis ta = a.encode(in);
  const CodewordTrellis tb = b.encode(in);
  REQUIRE(trellis_equal(ta, tb));

  LlrTrellis llr = noiseless_llrs(ta, 2.0);
  llr.at(3, 3) = -0.7;
  llr.at(9, 12) = 0.1;
  CHECK(a.decode(llr).streams == b.decode(llr).streams);
}

}  // TEST_SUITE
