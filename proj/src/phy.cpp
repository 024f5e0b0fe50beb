// SPDX-License-Identifier: Apache-2.0
#include "st2d/phy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "st2d/polar.hpp"

namespace st2d {

double ebn0_to_sigma2(double ebn0_db, double rate, int mod_q) {
  if (rate <= 0.0 || mod_q <= 0) {
    throw std::invalid_argument("ebn0_to_sigma2: rate and mod_q must be positive");
  }
  return 1.0 / (rate * mod_q * std::pow(10.0, ebn0_db / 10.0));
}

double tx_amplitude(const MimoConfig& cfg) {
  return cfg.tx_power == TxPowerNorm::TotalUnit
             ? 1.0 / std::sqrt(double(cfg.tx_antennas))
             : 1.0;
}

QamTable make_qam_table(int mod_q) {
  if (mod_q < 2 || mod_q > 8 || mod_q % 2 != 0) {
    throw std::invalid_argument("qam: bits per symbol must be even, 2..8");
  }
  const int m = mod_q / 2;
  // Mean energy of the un-normalized square constellation: 2(2^q - 1)/3.
  const double norm = std::sqrt(2.0 * ((1 << mod_q) - 1) / 3.0);
  QamTable t;
  t.mod_q = mod_q;
  t.levels.resize(size_t(1) << m);
  for (int idx = 0; idx < (1 << m); ++idx) {
    auto bit = [&](int j) { return (idx >> (m - 1 - j)) & 1; };
    // Innermost-out Gray amplitude recurrence; bit 0 carries the sign.
    double v = 1.0;
    for (int j = m - 1; j >= 1; --j) {
      v = double(1 << (m - j)) - (1.0 - 2.0 * bit(j)) * v;
    }
    t.levels[idx] = (1.0 - 2.0 * bit(0)) * v / norm;
  }
  return t;
}

std::complex<double> qam_point(const QamTable& table,
                               std::span<const std::uint8_t> bits) {
  const int m = table.mod_q / 2;
  if (int(bits.size()) != table.mod_q) {
    throw std::invalid_argument("qam_point: wrong bit count");
  }
  int re_idx = 0, im_idx = 0;
  for (int j = 0; j < m; ++j) {
    re_idx = (re_idx << 1) | bits[2 * j];
    im_idx = (im_idx << 1) | bits[2 * j + 1];
  }
  return {table.levels[re_idx], table.levels[im_idx]};
}

void qam_axis_llrs(const QamTable& table, double axis_value, double sinr,
                   DemapRule rule, double* out) {
  const int m = table.mod_q / 2;
  const int n_levels = 1 << m;
  if (rule == DemapRule::MaxLog) {
    for (int j = 0; j < m; ++j) {
      double best[2] = {1e300, 1e300};
      for (int idx = 0; idx < n_levels; ++idx) {
        const double d = axis_value - table.levels[idx];
        const int b = (idx >> (m - 1 - j)) & 1;
        best[b] = std::min(best[b], d * d);
      }
      out[j] = clamp_llr(sinr * (best[1] - best[0]));
    }
    return;
  }
  // Exact marginal: log-sum-exp of -sinr * distance^2 per bit class.
  for (int j = 0; j < m; ++j) {
    double mx[2] = {-1e300, -1e300};
    for (int idx = 0; idx < n_levels; ++idx) {
      const double d = axis_value - table.levels[idx];
      const int b = (idx >> (m - 1 - j)) & 1;
      mx[b] = std::max(mx[b], -sinr * d * d);
    }
    double sum[2] = {0.0, 0.0};
    for (int idx = 0; idx < n_levels; ++idx) {
      const double d = axis_value - table.levels[idx];
      const int b = (idx >> (m - 1 - j)) & 1;
      sum[b] += std::exp(-sinr * d * d - mx[b]);
    }
    out[j] = clamp_llr(mx[0] + std::log(sum[0]) - mx[1] - std::log(sum[1]));
  }
}

Eigen::MatrixXcd draw_channel(Xoshiro256pp& rng, int rx, int tx) {
  Eigen::MatrixXcd h(rx, tx);
  // Column-major fill so the draw order is the storage order.
  for (int c = 0; c < tx; ++c) {
    for (int r = 0; r < rx; ++r) {
      double re, im;
      rng.normal_complex(re, im);
      h(r, c) = {re, im};
    }
  }
  return h;
}

MmseResult mmse_detect(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& y,
                       double sigma2, double amplitude) {
  if (sigma2 <= 0.0) throw std::invalid_argument("mmse_detect: sigma2 <= 0");
  MimoDetector<double> det;
  det.factorize(h * amplitude, sigma2);
  MmseResult r;
  det.detect(y, r.unbiased, r.sinr);
  return r;
}

namespace {

// Vectorized Box-Muller batch: n standard complex normals, scaled, written
// into dst. Uniform draws come one 64-bit word per value, in index order.
void fill_cn(Xoshiro256pp& rng, std::complex<float>* dst, int n, float scale,
             TransmitScratch& ws) {
  ws.u1.resize(n);
  ws.u2.resize(n);
  for (int i = 0; i < n; ++i) ws.u1[i] = float(rng.uniform_pos());
  for (int i = 0; i < n; ++i) ws.u2[i] = float(rng.uniform());
  ws.radius = (-ws.u1.log()).sqrt() * scale;
  ws.angle = ws.u2 * float(2.0 * std::numbers::pi);
  ws.u1 = ws.radius * ws.angle.cos();  // reuse as the real parts
  ws.u2 = ws.radius * ws.angle.sin();
  for (int i = 0; i < n; ++i) dst[i] = {ws.u1[i], ws.u2[i]};
}

}  // namespace

void transmit_frame(const CodewordTrellis& bits, const MimoConfig& cfg,
                    double sigma2, Xoshiro256pp& rng, LlrTrellis& out,
                    TransmitScratch& ws) {
  const int nt = cfg.tx_antennas;
  const int nr = cfg.rx_antennas;
  const int q = cfg.mod_q;
  if (bits.layers_l != nt) {
    throw std::invalid_argument("transmit_frame: layer count != tx antennas");
  }
  if (nr < nt) {
    throw std::invalid_argument("transmit_frame: rx antennas < tx antennas");
  }
  if (q <= 0 || bits.width_mbit % q != 0) {
    throw std::invalid_argument("transmit_frame: width not a symbol multiple");
  }
  if (sigma2 <= 0.0) throw std::invalid_argument("transmit_frame: sigma2 <= 0");
  if (ws.table.mod_q != q) ws.table = make_qam_table(q);

  const int uses = bits.width_mbit / q;
  const float amp = float(tx_amplitude(cfg));
  const float sigma = float(std::sqrt(sigma2));
  out.reset(bits.layers_l, bits.width_mbit);
  ws.g.resize(nr, nt);
  ws.x.resize(nt);
  ws.y.resize(nr);

  std::uint8_t sym_bits[8];
  double llr_i[4], llr_q[4];
  const int m = q / 2;

  for (int u = 0; u < uses; ++u) {
    const bool redraw = u == 0 || cfg.fading_unit == FadingUnit::PerChannelUse;
    if (redraw) {
      if (cfg.fading == FadingModel::IidRayleigh) {
        fill_cn(rng, ws.g.data(), nr * nt, amp, ws);
      } else {
        ws.g.setZero();
        ws.g.diagonal().setConstant(amp);
      }
      ws.detector.factorize(ws.g, float(sigma2));
    }
    for (int l = 0; l < nt; ++l) {
      for (int j = 0; j < q; ++j) sym_bits[j] = bits.at(l, u * q + j);
      const auto s = qam_point(ws.table, {sym_bits, size_t(q)});
      ws.x[l] = {float(s.real()), float(s.imag())};
    }
    fill_cn(rng, ws.y.data(), nr, sigma, ws);
    ws.y.noalias() += ws.g * ws.x;

    ws.detector.detect(ws.y, ws.unbiased, ws.sinr);

    for (int l = 0; l < nt; ++l) {
      const double z_re = ws.unbiased[l].real();
      const double z_im = ws.unbiased[l].imag();
      const double sinr = ws.sinr[l];
      qam_axis_llrs(ws.table, z_re, sinr, cfg.demap, llr_i);
      qam_axis_llrs(ws.table, z_im, sinr, cfg.demap, llr_q);
      for (int j = 0; j < m; ++j) {
        out.at(l, u * q + 2 * j) = llr_i[j];
        out.at(l, u * q + 2 * j + 1) = llr_q[j];
      }
    }
  }
}

}  // namespace st2d
