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

#include <gtest/gtest.h>

#include <cmath>

#include "bwauction/radio.hpp"

namespace bwauction::radio {
namespace {

constexpr double kTheta4 = 0.19734498738592782;

TEST(Theta, KnownValues) {
  EXPECT_NEAR(theta(1e-4), 1.5 / std::log(2000.0), 1e-15);
  EXPECT_NEAR(theta(1e-4), kTheta4, 1e-15);
  EXPECT_NEAR(theta(0.2 / std::exp(1.0)), 1.5, 1e-12);
}

TEST(Theta, DomainErrors) {
  EXPECT_THROW(theta(0.2), DomainError);
  EXPECT_THROW(theta(0.5), DomainError);
  EXPECT_THROW(theta(0.0), DomainError);
  EXPECT_THROW(theta(-1e-3), DomainError);
  EXPECT_THROW(theta(std::nan("")), DomainError);
}

TEST(Theta, DecreasesAsTargetTightens) {
  double prev = theta(0.19);
  for (double ber = 0.1; ber > 1e-12; ber /= 10.0) {
    const double t = theta(ber);
    EXPECT_GT(t, 0.0);
    EXPECT_LT(t, prev);
    prev = t;
  }
}

TEST(ChannelGain, Examples) {
  EXPECT_DOUBLE_EQ(channel_gain({7.0, 7.0, 3.5, 1.0, 1.0}), 1.0);
  EXPECT_NEAR(channel_gain({1.0, 10.0, 2.0, 0.5, 2.0}), 0.01, 1e-15);
  EXPECT_EQ(channel_gain({1.0, 10.0, 2.0, 0.0, 2.0}), 0.0);
}

TEST(ChannelGain, Errors) {
  EXPECT_THROW(channel_gain({1.0, 0.0, 2.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(channel_gain({1.0, -5.0, 2.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(channel_gain({1.0, 1.0, 2.0, -1.0, 1.0}), DomainError);
}

TEST(ChannelGain, DecreasesWithDistance) {
  double prev = channel_gain({1.0, 1.0, 3.5, 1.0, 1.0});
  for (double d = 2.0; d < 1000.0; d *= 1.7) {
    const double g = channel_gain({1.0, d, 3.5, 1.0, 1.0});
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Sinr, Examples) {
  EXPECT_DOUBLE_EQ(sinr({1.0, 1.0, 0.0}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(sinr({2.0, 0.5, 0.5}, 0.5), 1.0);
  EXPECT_EQ(sinr({2.0, 0.5, 0.5}, 0.0), 0.0);
  EXPECT_THROW(sinr({1.0, 0.0, 0.0}, 1.0), DomainError);
  EXPECT_THROW(sinr({1.0, 1.0, -1.0}, 1.0), DomainError);
}

TEST(Sinr, LinearInPower) {
  EXPECT_DOUBLE_EQ(sinr({0.2, 1e-3, 1e-4}, 0.3), 2.0 * sinr({0.1, 1e-3, 1e-4}, 0.3));
}

TEST(Throughput, NosSpotValues) {
  EXPECT_NEAR(throughput_nos(kTheta4, 100.0), 4.3738, 1e-3);
  EXPECT_EQ(throughput_nos(kTheta4, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(throughput_nos(0.5, 2.0), 1.0);
}

TEST(Throughput, OsSpotValues) {
  EXPECT_NEAR(throughput_os(kTheta4, 1000.0), 7.6324, 1e-3);
  EXPECT_EQ(throughput_os(kTheta4, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(throughput_os(1.0, 3.0), 2.0);
}

TEST(Throughput, MonotoneInSinr) {
  double prev = -1.0;
  for (double s = 0.0; s < 1e5; s = 2.0 * s + 0.1) {
    const double t = throughput_nos(kTheta4, s);
    EXPECT_GT(t, prev);
    prev = t;
  }
}

TEST(CmExact, SymmetricLegs) {
  for (double xi : {0.5, 3.0, 10.0, 250.0}) {
    EXPECT_DOUBLE_EQ(throughput_cm_exact(kTheta4, xi, xi, 1.0, 1.0),
                     0.5 * std::log2(1.0 + kTheta4 * xi));
  }
  EXPECT_NEAR(throughput_cm_exact(kTheta4, 10.0, 10.0, 1.0, 1.0), 0.78608, 1e-3);
}

TEST(CmExact, ZeroDownlinkDominates) {
  EXPECT_EQ(throughput_cm_exact(kTheta4, 10.0, 0.0, 1.0, 1.0), 0.0);
}

TEST(CmExact, NeverExceedsEitherLeg) {
  for (double ul : {1.0, 10.0, 100.0}) {
    for (double dl : {0.5, 20.0, 400.0}) {
      const double t = throughput_cm_exact(kTheta4, ul, dl, 2.0, 1.0,
                                           CmPrefactor::per_leg);
      EXPECT_LE(t, 2.0 / 3.0 * spectral_efficiency(kTheta4, ul) + 1e-15);
      EXPECT_LE(t, 1.0 / 3.0 * spectral_efficiency(kTheta4, dl) + 1e-15);
    }
  }
}

TEST(CmExact, PrefactorChoiceMattersOnlyForUnequalBandwidth) {
  EXPECT_DOUBLE_EQ(throughput_cm_exact(kTheta4, 10.0, 5.0, 1.0, 1.0, CmPrefactor::shared_uplink),
                   throughput_cm_exact(kTheta4, 10.0, 5.0, 1.0, 1.0,
                                       CmPrefactor::per_leg));
  EXPECT_NE(throughput_cm_exact(kTheta4, 100.0, 5.0, 1.0, 3.0, CmPrefactor::shared_uplink),
            throughput_cm_exact(kTheta4, 100.0, 5.0, 1.0, 3.0,
                                CmPrefactor::per_leg));
}

TEST(CmApprox, Values) {
  EXPECT_DOUBLE_EQ(throughput_cm_approx(1.0, 3.0, 1.0, 1.0), 1.0);
  EXPECT_NEAR(throughput_cm_approx(kTheta4, 10.0, 1.0, 1.0), 0.78608, 1e-3);
  EXPECT_DOUBLE_EQ(throughput_cm_approx(kTheta4, 10.0, 1.0, 1.0),
                   throughput_cm_exact(kTheta4, 10.0, 10.0, 1.0, 1.0));
  EXPECT_LT(throughput_cm_approx(kTheta4, 10.0, 1.0, 1e9), 1e-8);
}

TEST(LinkBudget, OrderingAndValidation) {
  LinkBudget lb;
  lb.sinr_nos = 100.0;
  lb.sinr_os = {1000.0, 10.0};
  lb.sinr_cm_ul = 10.0;
  lb.sinr_cm_dl = 10.0;
  const auto t = throughputs(lb);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_DOUBLE_EQ(t[0], throughput_nos(kTheta4, 100.0));
  EXPECT_DOUBLE_EQ(t[1], throughput_os(kTheta4, 1000.0));
  EXPECT_DOUBLE_EQ(t[2], throughput_os(kTheta4, 10.0));
  EXPECT_DOUBLE_EQ(t[3], throughput_cm_exact(kTheta4, 10.0, 10.0, 1.0, 1.0));

  lb.sinr_os.push_back(-1.0);
  EXPECT_THROW(throughputs(lb), DomainError);
  lb.sinr_os.pop_back();
  lb.ber_target = 0.3;
  EXPECT_THROW(throughputs(lb), DomainError);
}

TEST(Decibels, RoundTrip) {
  EXPECT_DOUBLE_EQ(db_to_linear(0.0), 1.0);
  EXPECT_DOUBLE_EQ(db_to_linear(20.0), 100.0);
  for (double db : {-30.0, -3.0, 0.0, 7.5, 42.0}) EXPECT_NEAR(linear_to_db(db_to_linear(db)), db, 1e-12);
}

}  // namespace
}  // namespace bwauction::radio
