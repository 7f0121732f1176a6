//
// Copyright 2026 The condtest Authors
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
//

#include "condtest/support_size.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace condtest {
namespace {

std::shared_ptr<const PiecewiseDistribution> uniform_on(std::uint64_t n, std::uint64_t support,
                                                        std::uint64_t relabel = 3) {
  return std::make_shared<const PiecewiseDistribution>(
      PiecewiseDistribution::uniform_prefix(n, support, relabel));
}

TEST(SupportSizeTest, MajorityRepetitionsAreOdd) {
  EXPECT_EQ(majority_repetitions(0.1), 29u);   // ceil(12 ln 10) = 28 -> 29
  EXPECT_EQ(majority_repetitions(0.05), 37u);  // ceil(35.95) = 36 -> 37
  for (double d : {0.5, 0.2, 0.01, 1e-4}) {
    const auto r = majority_repetitions(d);
    EXPECT_EQ(r % 2, 1u);
    EXPECT_GE(static_cast<double>(r), 12 * std::log(1 / d));
  }
  EXPECT_THROW(majority_repetitions(0.0), std::invalid_argument);
}

TEST(SupportSizeTest, NonSupportSampleCount) {
  EXPECT_EQ(non_support_sample_count(1024, 512, 0.1), 5u);  // log2(20) = 4.32
  EXPECT_EQ(non_support_sample_count(1024, 256, 0.1), 3u);  // 4.32 / 2
  EXPECT_THROW(non_support_sample_count(1024, 1024, 0.1), std::invalid_argument);
}

TEST(SupportSizeTest, ProbeQuantities) {
  for (double sigma : {2.0, 3.0, 10.0, 1e3, 1e9}) {
    const double a = probe_alpha(sigma);
    EXPECT_GE(a, 0.25 - 1e-12);
    EXPECT_LE(a, std::exp(-1.0));
    const double gap = probe_gap(sigma, 0.25);
    EXPECT_GT(gap, 0.0);
    EXPECT_EQ(probe_rounds(sigma, 0.25), static_cast<std::uint64_t>(std::ceil(32 / (gap * gap))));
  }
  EXPECT_NEAR(miss_probability(10, 20), std::pow(0.9, 20), 1e-15);
}

TEST(SupportSizeTest, ProbeInequalitiesInClosedForm) {
  // sigma <= omega gives miss probability <= alpha; sigma > (1 + eps) omega
  // gives miss probability > alpha + gap.
  const double eps = 0.25, omega = 1000;
  for (double sigma : {omega / 10, omega / 2, omega}) {
    EXPECT_LE(miss_probability(sigma, omega), probe_alpha(sigma)) << sigma;
  }
  for (double sigma : {1.26 * omega, 2 * omega, 10 * omega}) {
    EXPECT_GT(miss_probability(sigma, omega), probe_alpha(sigma) + probe_gap(sigma, eps)) << sigma;
  }
}

TEST(SupportSizeTest, SmallSupportShortcutForLargeTau) {
  CondOracle oracle(uniform_on(1024, 1024), 1);
  Rng coins(1);
  EXPECT_EQ(test_small_support(oracle, 0.25, 2.0, 0.1, coins), Verdict::kReject);
  EXPECT_EQ(oracle.query_count(), 0u);
}

TEST(SupportSizeTest, SmallSupportSeparatesFullFromHalf) {
  int accept_full = 0, reject_half = 0;
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng coins(derive_seed(1, t));
    CondOracle full(uniform_on(4096, 4096), derive_seed(2, t));
    CondOracle half(uniform_on(4096, 2048), derive_seed(3, t));
    accept_full += test_small_support(full, 0.25, 1.0, 0.1, coins) == Verdict::kAccept;
    reject_half += test_small_support(half, 0.25, 1.0, 0.1, coins) == Verdict::kReject;
  }
  EXPECT_GE(accept_full, 18);
  EXPECT_GE(reject_half, 18);
}

TEST(SupportSizeTest, GetNonSupportFindsZeroMass) {
  const auto d = uniform_on(1024, 512);
  int good = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    CondOracle oracle(d, derive_seed(5, t));
    Rng coins(derive_seed(6, t));
    good += d->mass(get_non_support(oracle, 512, 0.1, coins)) == 0;
  }
  EXPECT_GE(good, 90);
}

TEST(SupportSizeTest, ProbeAnswersOnBothSides) {
  const std::uint64_t n = 1u << 16, omega = 500;
  const auto d = uniform_on(n, omega);
  const ElementId ref = d->id_at(n - 1);  // a tail index: zero mass
  ASSERT_EQ(d->mass(ref), 0);
  int yes = 0, no = 0;
  for (std::uint64_t t = 0; t < 10; ++t) {
    CondOracle oracle(d, derive_seed(8, t));
    Rng coins(derive_seed(9, t));
    ProbeDiagnostics diag;
    yes += is_at_most_support_size(oracle, omega / 10.0, ref, 0.25, 0.05, coins, {}, &diag) ==
           ProbeVerdict::kYes;
    no += is_at_most_support_size(oracle, 2.0 * omega, ref, 0.25, 0.05, coins, {}, &diag) ==
          ProbeVerdict::kNo;
    EXPECT_EQ(diag.high_anomalies, 0u);
    EXPECT_GT(diag.rounds, 0u);
  }
  EXPECT_EQ(yes, 10);
  EXPECT_EQ(no, 10);
}

TEST(SupportSizeTest, ProbeRejectsSmallSigma) {
  CondOracle oracle(uniform_on(64, 8), 1);
  Rng coins(1);
  EXPECT_THROW(is_at_most_support_size(oracle, 1.5, 64, 0.25, 0.1, coins), std::invalid_argument);
}

TEST(SupportSizeTest, EstimateWithinFactor) {
  for (std::uint64_t omega : {40u, 3000u}) {
    const auto d = uniform_on(1u << 14, omega);
    CondOracle oracle(d, 21);
    Rng coins(22);
    const SupportEstimate e = estimate_support(oracle, 0.3, 1.0, coins);
    EXPECT_EQ(e.path, EstimatePath::kBinarySearch);
    EXPECT_GE(e.value, omega / 1.3);
    EXPECT_LE(e.value, omega * 1.3);
    EXPECT_EQ(e.queries_used, oracle.query_count());
    EXPECT_FALSE(e.contract_void);
  }
}

TEST(SupportSizeTest, DenseSupportTakesShortcut) {
  CondOracle oracle(uniform_on(4096, 4096), 2);
  Rng coins(3);
  const SupportEstimate e = estimate_support(oracle, 0.3, 1.0, coins);
  EXPECT_EQ(e.path, EstimatePath::kDenseShortcut);
  EXPECT_DOUBLE_EQ(e.value, (1 - 0.09) * 4096);
}

TEST(SupportSizeTest, CollisionTesterSeparatesUniformFromConcentrated) {
  const auto d = uniform_on(4096, 64);
  int accept = 0, reject = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    CondOracle oracle(d, derive_seed(4, t));
    // 128 ids around the support: a uniform set, then a half-empty one.
    std::vector<ElementId> inside, mixed;
    for (std::uint64_t i = 0; i < 64; ++i) inside.push_back(d->id_at(i));
    mixed = inside;
    for (std::uint64_t i = 64; i < 128; ++i) mixed.push_back(d->id_at(i));
    accept += collision_uniformity_test(oracle, QuerySet::of(inside), 0.5, 0.25) == Verdict::kAccept;
    reject += collision_uniformity_test(oracle, QuerySet::of(mixed), 0.5, 0.25) == Verdict::kReject;
  }
  EXPECT_GE(accept, 45);
  EXPECT_GE(reject, 45);
  CondOracle oracle(d, 1);
  EXPECT_THROW(collision_uniformity_test(oracle, QuerySet::full_domain(), 0.5, 0.25),
               UnsupportedRepresentation);
}

TEST(SupportSizeTest, RandomSubsetIsADistinctSubset) {
  Rng rng(5);
  for (std::uint64_t k : {0u, 1u, 7u, 100u}) {
    const auto s = random_subset(100, k, rng);
    EXPECT_EQ(std::set<ElementId>(s.begin(), s.end()).size(), k);
    for (ElementId x : s) {
      EXPECT_GE(x, 1u);
      EXPECT_LE(x, 100u);
    }
  }
  EXPECT_THROW(random_subset(5, 6, rng), std::invalid_argument);
  // Each element is included with probability k / n.
  std::vector<int> hits(20, 0);
  for (int t = 0; t < 20000; ++t) {
    for (ElementId x : random_subset(20, 5, rng)) ++hits[x - 1];
  }
  for (int h : hits) EXPECT_NEAR(h, 5000, 300);
}

TEST(SupportSizeTest, PlanIsAPureFunctionOfItsSeed) {
  const NonAdaptivePlan a = plan_nonadaptive_queries(256, 3, 17);
  const NonAdaptivePlan b = plan_nonadaptive_queries(256, 3, 17);
  const NonAdaptivePlan c = plan_nonadaptive_queries(256, 3, 18);
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a == c);
  EXPECT_EQ(a.sizes, (std::vector<std::uint64_t>{2, 4, 8, 16, 32, 64, 128, 256}));
  for (std::size_t i = 0; i < a.sizes.size(); ++i) {
    ASSERT_EQ(a.sets[i].size(), 3u);
    for (const QuerySet& s : a.sets[i]) EXPECT_EQ(s.size(), a.sizes[i]);
  }
}

TEST(SupportSizeTest, PlanUnchangedByExecution) {
  const auto d = uniform_on(1024, 64);
  const NonAdaptivePlan plan = plan_nonadaptive_queries(1024, 4, 9);
  const NonAdaptivePlan before = plan;
  CondOracle oracle(d, 1);
  const SupportEstimate e = estimate_support_nonadaptive(oracle, plan, {});
  EXPECT_TRUE(plan == before);
  EXPECT_EQ(e.path, EstimatePath::kNonAdaptive);
  EXPECT_GT(e.queries_used, 0u);
}

TEST(SupportSizeTest, ProfileReproducesDirectRun) {
  const auto d = uniform_on(1024, 64);
  const NonAdaptivePlan plan = plan_nonadaptive_queries(1024, 4, 9);
  NonAdaptiveParams params;
  params.threshold = 0.5;
  CondOracle a(d, 3), b(d, 3);
  const SupportEstimate direct = estimate_support_nonadaptive(a, plan, params);
  const auto rejects = nonadaptive_reject_profile(b, plan, params);
  EXPECT_DOUBLE_EQ(nonadaptive_estimate_from_profile(plan, rejects, 0.5), direct.value);
}

TEST(SupportSizeTest, EstimateFromProfileThresholds) {
  const NonAdaptivePlan plan = plan_nonadaptive_queries(16, 4, 1);  // sizes 2, 4, 8, 16
  EXPECT_DOUBLE_EQ(nonadaptive_estimate_from_profile(plan, {0, 1, 3, 4}, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(nonadaptive_estimate_from_profile(plan, {0, 1, 3, 4}, 0.9), 1.0);
  EXPECT_DOUBLE_EQ(nonadaptive_estimate_from_profile(plan, {0, 0, 0, 0}, 0.5), 16.0);
  EXPECT_DOUBLE_EQ(nonadaptive_estimate_from_profile(plan, {0, 0, 0, 2}, 0.5), 16.0);
  EXPECT_DOUBLE_EQ(nonadaptive_estimate_from_profile(plan, {0, 0, 0, 3}, 0.5), 1.0);
}

TEST(SupportSizeTest, NonAdaptiveRepetitions) {
  NonAdaptiveParams p;
  EXPECT_EQ(nonadaptive_repetitions(1u << 16, p), 16u);  // 4 * log2 16
  p.repetitions = 7;
  EXPECT_EQ(nonadaptive_repetitions(1u << 16, p), 7u);
}

}  // namespace
}  // namespace condtest
