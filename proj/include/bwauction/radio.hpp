// Copyright 2026 The bwauction Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Throughput of the D2D transmitter under the three spectrum-sharing modes:
// non-orthogonal sharing (NOS), orthogonal sharing (OS) and cellular mode
// (CM, relayed through the base station).

#ifndef BWAUCTION_RADIO_HPP
#define BWAUCTION_RADIO_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bwauction/errors.hpp"

namespace bwauction::radio {

/// Which bandwidth share multiplies the downlink leg of the CM throughput.
/// `shared_uplink` uses B_UL/(B_UL+B_DL) on both legs; `per_leg`
/// uses B_DL/(B_UL+B_DL) on the second leg.
enum class CmPrefactor { shared_uplink, per_leg };

/// Link-level inputs from which the per-provider throughputs are derived.
/// All SINRs are linear ratios.
struct LinkBudget {
  double ber_target = 1e-4;
  double sinr_nos = 1.0;
  std::vector<double> sinr_os;  // one per orthogonal-sharing provider
  double sinr_cm_ul = 1.0;
  double sinr_cm_dl = 1.0;
  double bw_ul = 1.0;
  double bw_dl = 1.0;

  void validate() const {
    if (!(ber_target > 0.0 && ber_target < 0.2)) {
      throw DomainError("ber_target must lie in (0, 0.2)");
    }
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(sinr_nos) || !positive(sinr_cm_ul) || !positive(sinr_cm_dl) ||
        !std::all_of(sinr_os.begin(), sinr_os.end(), positive)) {
      throw DomainError("SINR values must be strictly positive and finite");
    }
    if (!positive(bw_ul) || !positive(bw_dl)) {
      throw DomainError("bandwidths must be strictly positive");
    }
  }
};

/// One realization of the D2D link: (K/d)^p path loss, Rayleigh power gain
/// and log-normal shadowing gain.
struct ChannelDraw {
  double k_const = 1.0;
  double distance = 1.0;
  double path_loss_exp = 2.0;
  double rayleigh_gain = 1.0;
  double shadow_gain = 1.0;
};

struct PowerNoise {
  double tx_power = 1.0;
  double noise_power = 1.0;
  double interference_power = 0.0;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double ratio) { return 10.0 * std::log10(ratio); }

/// SNR gap for an M-QAM link at the target bit-error rate:
/// 1.5 / ln(0.2 / ber_target).
inline double theta(double ber_target) {
  if (!(ber_target > 0.0 && ber_target < 0.2)) {
    throw DomainError("theta: ber_target must lie in (0, 0.2), got " +
                      std::to_string(ber_target));
  }
  return 1.5 / std::log(0.2 / ber_target);
}

inline double channel_gain(const ChannelDraw& ch) {
  if (!(ch.distance > 0.0) || !std::isfinite(ch.distance)) {
    throw DomainError("channel_gain: distance must be positive");
  }
  if (!(ch.k_const > 0.0) || !(ch.rayleigh_gain >= 0.0) || !(ch.shadow_gain > 0.0)) {
    throw DomainError("channel_gain: invalid fading or frequency constant");
  }
  return std::pow(ch.k_const / ch.distance, ch.path_loss_exp) * ch.rayleigh_gain *
         ch.shadow_gain;
}

inline double sinr(const PowerNoise& pw, double gain) {
  if (!(pw.noise_power > 0.0) || !(pw.interference_power >= 0.0) || !(gain >= 0.0)) {
    throw DomainError("sinr: noise must be positive, interference and gain non-negative");
  }
  return pw.tx_power * gain / (pw.noise_power + pw.interference_power);
}

/// log2(1 + theta * sinr), in bits/s/Hz.
inline double spectral_efficiency(double theta_value, double sinr_value) {
  return std::log1p(theta_value * sinr_value) / std::numbers::ln2;
}

inline double throughput_nos(double theta_value, double sinr_nos) {
  return spectral_efficiency(theta_value, sinr_nos);
}

inline double throughput_os(double theta_value, double sinr_os) {
  return spectral_efficiency(theta_value, sinr_os);
}

/// Two-leg relay throughput through the base station; the slower leg wins.
inline double throughput_cm_exact(double theta_value, double sinr_ul, double sinr_dl,
                                  double bw_ul, double bw_dl,
                                  CmPrefactor prefactor = CmPrefactor::shared_uplink) {
  if (!(bw_ul > 0.0) || !(bw_dl > 0.0)) {
    throw DomainError("throughput_cm_exact: bandwidths must be positive");
  }
  const double ul_share = bw_ul / (bw_ul + bw_dl);
  const double dl_share =
      prefactor == CmPrefactor::shared_uplink ? ul_share : bw_dl / (bw_ul + bw_dl);
  return std::min(ul_share * spectral_efficiency(theta_value, sinr_ul),
                  dl_share * spectral_efficiency(theta_value, sinr_dl));
}

/// Single-SINR approximation used when the D2D pair is far apart.
inline double throughput_cm_approx(double theta_value, double sinr_cm, double bw_ul,
                                   double bw_dl) {
  if (!(bw_ul > 0.0) || !(bw_dl > 0.0)) {
    throw DomainError("throughput_cm_approx: bandwidths must be positive");
  }
  const double ul_share = bw_ul / (bw_ul + bw_dl);
  return ul_share * spectral_efficiency(theta_value, sinr_cm);
}

/// Throughputs ordered as the auction's providers: NOS first, then each OS
/// provider, then the base station.
inline std::vector<double> throughputs(const LinkBudget& link,
                                       CmPrefactor prefactor = CmPrefactor::shared_uplink) {
  link.validate();
  const double th = theta(link.ber_target);
  std::vector<double> out;
  out.reserve(link.sinr_os.size() + 2);
  out.push_back(throughput_nos(th, link.sinr_nos));
  for (double s : link.sinr_os) out.push_back(throughput_os(th, s));
  out.push_back(throughput_cm_exact(th, link.sinr_cm_ul, link.sinr_cm_dl, link.bw_ul,
                                    link.bw_dl, prefactor));
  return out;
}

}  // namespace bwauction::radio

#endif  // BWAUCTION_RADIO_HPP
