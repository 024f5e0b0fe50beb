// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "st2d/rng.hpp"
#include "st2d/trellis.hpp"

namespace st2d {

enum class FadingModel { IidRayleigh, Identity };
enum class FadingUnit { PerChannelUse, PerFrame };
enum class TxPowerNorm { TotalUnit, PerLayerUnit };
enum class DemapRule { MaxLog, Exact };

// One spatial stream per transmit antenna; the trellis layer count must equal
// tx_antennas. fading_unit sets how often the channel is redrawn: every
// channel use (default) or once per frame.
struct MimoConfig {
  int tx_antennas = 64;
  int rx_antennas = 128;
  int mod_q = 4;  // bits per QAM symbol, even
  FadingModel fading = FadingModel::IidRayleigh;
  FadingUnit fading_unit = FadingUnit::PerChannelUse;
  TxPowerNorm tx_power = TxPowerNorm::TotalUnit;
  DemapRule demap = DemapRule::MaxLog;
};

// Noise variance per complex dimension for a target information-bit SNR.
// With total transmit power held at one, the post-detection SNR per layer of
// a half-loaded array comes out near 1/sigma^2, so Eb/N0 anchors directly.
double ebn0_to_sigma2(double ebn0_db, double rate, int mod_q);

// Scale applied to every transmitted symbol: 1/sqrt(tx) keeps the sum power
// over antennas at one, independent of the array size.
double tx_amplitude(const MimoConfig& cfg);

// Square Gray-labeled QAM, bit b0 on the in-phase sign. Even-indexed symbol
// bits select the in-phase axis, odd-indexed the quadrature axis. levels[i]
// is the normalized amplitude for axis-bit pattern i (first axis bit = MSB);
// mean symbol energy is one.
struct QamTable {
  int mod_q = 0;
  std::vector<double> levels;
};

QamTable make_qam_table(int mod_q);

std::complex<double> qam_point(const QamTable& table,
                               std::span<const std::uint8_t> bits);

// LLRs (log P(0)/P(1)) of the axis bits given one unbiased axis observation
// with post-detection SNR `sinr`; out must hold mod_q/2 values.
void qam_axis_llrs(const QamTable& table, double axis_value, double sinr,
                   DemapRule rule, double* out);

// Unbiased MMSE estimate and per-layer post-detection SINR. The effective
// channel is amplitude * h; sinr_l = 1 / (sigma2 * (A^-1)_ll) - 1 with
// A = G^H G + sigma2 I.
struct MmseResult {
  Eigen::VectorXcd unbiased;
  Eigen::VectorXd sinr;
};

MmseResult mmse_detect(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& y,
                       double sigma2, double amplitude);

// Channel matrix with i.i.d. CN(0,1) entries.
Eigen::MatrixXcd draw_channel(Xoshiro256pp& rng, int rx, int tx);

// Linear MMSE front end around a Cholesky factorization of the regularized
// Gram matrix; diag(A^-1) comes from the squared column norms of L^-1.
template <typename Scalar>
class MimoDetector {
 public:
  using Cplx = std::complex<Scalar>;
  using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Cplx, Eigen::Dynamic, 1>;
  using RVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  void factorize(const Mat& g, Scalar sigma2) {
    const int n = int(g.cols());
    gh_ = g.adjoint();
    gram_.resize(n, n);
    gram_.setZero();
    gram_.template selfadjointView<Eigen::Lower>().rankUpdate(gh_);
    gram_.diagonal().array() += sigma2;
    llt_.compute(gram_);
    linv_ = Mat::Identity(n, n);
    llt_.matrixL().solveInPlace(linv_);
    diag_inv_ = linv_.colwise().squaredNorm().transpose();
    sigma2_ = sigma2;
  }

  void detect(const Vec& y, Vec& unbiased, RVec& sinr) const {
    const int n = int(gh_.rows());
    tmp_ = gh_ * y;
    llt_.matrixL().solveInPlace(tmp_);
    llt_.matrixU().solveInPlace(tmp_);
    unbiased.resize(n);
    sinr.resize(n);
    for (int l = 0; l < n; ++l) {
      const Scalar d = sigma2_ * diag_inv_[l];  // in (0, 1] for sigma2 > 0
      const Scalar mu = std::max(Scalar(1) - d, Scalar(1e-9));
      unbiased[l] = tmp_[l] / mu;
      sinr[l] = std::max(Scalar(1) / d - Scalar(1), Scalar(0));
    }
  }

 private:
  Mat gh_, gram_, linv_;
  Eigen::LLT<Mat> llt_;
  RVec diag_inv_;
  mutable Vec tmp_;
  Scalar sigma2_ = Scalar(1);
};

// Per-thread scratch for the frame pipeline; reused across frames.
struct TransmitScratch {
  QamTable table;
  Eigen::MatrixXcf g;
  Eigen::VectorXcf x, y, unbiased;
  Eigen::VectorXf sinr;
  Eigen::ArrayXf u1, u2, radius, angle;
  MimoDetector<float> detector;
};

// Modulate the trellis layer by layer, pass every q-bit symbol column through
// an independently drawn channel, detect, and demap into LLRs of the same
// trellis geometry. Consumes rng in a fixed order: channel first, then noise,
// once per channel use.
void transmit_frame(const CodewordTrellis& bits, const MimoConfig& cfg,
                    double sigma2, Xoshiro256pp& rng, LlrTrellis& out,
                    TransmitScratch& ws);

}  // namespace st2d
