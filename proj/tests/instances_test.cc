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

#include "condtest/instances.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace condtest {
namespace {

// Elementwise total variation over the whole domain; the reference the fast
// piece-based computation is checked against.
Rational brute_tv(const PiecewiseDistribution& a, const PiecewiseDistribution& b) {
  Rational total = 0;
  for (ElementId id = 1; id <= a.n(); ++id) {
    const Rational& x = a.mass(id);
    const Rational& y = b.mass(id);
    if (x != y) total += abs(x - y);
  }
  return total / 2;
}

Rational mass_of_index_range(const PiecewiseDistribution& d, std::uint64_t begin, std::uint64_t len) {
  Rational total = 0;
  for (std::uint64_t i = begin; i < begin + len; ++i) total += d.mass(d.id_at(i));
  return total;
}

TEST(InstancesTest, IntegerFourthRoot) {
  for (std::uint64_t n : {1ULL, 15ULL, 16ULL, 17ULL, 80ULL, 81ULL, 65535ULL, 65536ULL, 1ULL << 40,
                          (1ULL << 40) - 1, ~0ULL}) {
    const std::uint64_t x = integer_fourth_root(n);
    const auto p = [](unsigned __int128 v) { return v * v * v * v; };
    EXPECT_LE(p(x), n) << n;
    EXPECT_GT(p(x + 1), n) << n;
  }
}

TEST(InstancesTest, BucketSizesFillEffectiveSupport) {
  const auto sizes = equivalence_bucket_sizes(4, 16, 2.0, 2);
  ASSERT_EQ(sizes.size(), 4u);
  EXPECT_EQ(sizes[0], 8u);
  EXPECT_EQ(sizes[1], 16u);
  EXPECT_EQ(sizes[2], 32u);
  EXPECT_EQ(sizes[3], 64u - 56u);
  EXPECT_TRUE(equivalence_bucket_sizes(1, 16, 4.0, 2).empty());  // 4 + 16 + 64 > 16
}

TEST(InstancesTest, EquivalenceStructure) {
  for (std::uint64_t n : {1ULL << 16, 1ULL << 20}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto inst = gen_equivalence_instance(n, InstanceKind::kNo, seed);
      EXPECT_GE(inst.r, 2u);
      EXPECT_LE(inst.k_b, static_cast<std::uint64_t>(std::log2(n) / 2));
      EXPECT_EQ(inst.bucket_sizes.size(), 2 * inst.r);
      std::uint64_t total = 0;
      for (auto s : inst.bucket_sizes) total += s;
      EXPECT_EQ(total, inst.m);
      EXPECT_EQ(support_size(*inst.d1), inst.m);
      EXPECT_EQ(support_size(*inst.d2), inst.m);
      // Mass of every bucket and of every bucket pair, read through the relabel.
      std::uint64_t begin = 0;
      for (std::uint64_t i = 0; i < inst.r; ++i) {
        const std::uint64_t a = inst.bucket_sizes[2 * i], b = inst.bucket_sizes[2 * i + 1];
        const Rational half(BigInt(1), BigInt(2 * inst.r));
        EXPECT_EQ(mass_of_index_range(*inst.d1, begin, a), half);
        EXPECT_EQ(mass_of_index_range(*inst.d1, begin + a, b), half);
        const Rational first = mass_of_index_range(*inst.d2, begin, a);
        const Rational quarter_mass(BigInt(1), BigInt(4 * inst.r));
        EXPECT_EQ(first, inst.pair_flips[i] == 0 ? quarter_mass : 3 * quarter_mass);
        EXPECT_EQ(first + mass_of_index_range(*inst.d2, begin + a, b), 2 * half);
        begin += a + b;
      }
    }
  }
}

TEST(InstancesTest, EquivalenceIsDeterministic) {
  const auto a = gen_equivalence_instance(1u << 16, InstanceKind::kNo, 5);
  const auto b = gen_equivalence_instance(1u << 16, InstanceKind::kNo, 5);
  EXPECT_EQ(a.k_b, b.k_b);
  EXPECT_EQ(a.pair_flips, b.pair_flips);
  EXPECT_EQ(a.relabel_seed, b.relabel_seed);
  for (ElementId id = 1; id <= 4096; ++id) ASSERT_EQ(a.d2->mass(id), b.d2->mass(id));
  const auto r = rebuild_equivalence_instance(a.n, a.kind, a.k_b, a.rho, a.rho_requested, a.r,
                                              a.pair_flips, a.seed, a.relabel_seed);
  EXPECT_EQ(r.bucket_sizes, a.bucket_sizes);
  EXPECT_EQ(tv_distance(*r.d2, *a.d2), 0);
}

TEST(InstancesTest, EquivalenceRejectsSmallN) {
  EXPECT_THROW(gen_equivalence_instance(1u << 15, InstanceKind::kNo, 1), std::invalid_argument);
  EXPECT_THROW(gen_equivalence_instance(1u << 16, InstanceKind::kNo, 1, 1.0), std::invalid_argument);
}

TEST(InstancesTest, TvIsExactlyAQuarter) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto no = gen_equivalence_instance(1u << 16, InstanceKind::kNo, seed);
    EXPECT_EQ(tv_distance(*no.d1, *no.d2), make_rational(1, 4));
    EXPECT_EQ(brute_tv(*no.d1, *no.d2), make_rational(1, 4));
    const auto yes = gen_equivalence_instance(1u << 16, InstanceKind::kYes, seed);
    EXPECT_EQ(tv_distance(*yes.d1, *yes.d2), 0);
  }
}

TEST(InstancesTest, TvAgreesWithBruteForceAcrossRelabels) {
  // Different relabels take the grouping path; compare against brute force.
  const std::uint64_t n = 512;
  const PiecewiseDistribution a(n, {{10, make_rational(1, 20)}, {25, make_rational(1, 50)}}, Rational(0), 1);
  const PiecewiseDistribution b(n, {{40, make_rational(1, 40)}}, Rational(0), 2);
  const PiecewiseDistribution c(n, {{40, make_rational(1, 40)}}, Rational(0), std::nullopt);
  EXPECT_EQ(tv_distance(a, b), brute_tv(a, b));
  EXPECT_EQ(tv_distance(b, a), brute_tv(a, b));
  EXPECT_EQ(tv_distance(a, c), brute_tv(a, c));
  EXPECT_EQ(tv_distance(a, a), 0);
  EXPECT_THROW(tv_distance(a, PiecewiseDistribution::uniform(4)), std::invalid_argument);
}

TEST(InstancesTest, TvIsRelabelInvariant) {
  // Applying one relabel to both sides leaves the distance unchanged.
  const std::uint64_t n = 300;
  const std::vector<Piece> p1{{30, make_rational(1, 60)}, {50, make_rational(1, 100)}};
  const std::vector<Piece> p2{{20, make_rational(1, 40)}, {100, make_rational(1, 200)}};
  const Rational plain = tv_distance(PiecewiseDistribution(n, p1), PiecewiseDistribution(n, p2));
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    EXPECT_EQ(tv_distance(PiecewiseDistribution(n, p1, Rational(0), seed),
                          PiecewiseDistribution(n, p2, Rational(0), seed)),
              plain);
  }
  EXPECT_EQ(plain, brute_tv(PiecewiseDistribution(n, p1), PiecewiseDistribution(n, p2)));
}

TEST(InstancesTest, SupportPairSizes) {
  const std::uint64_t n = 1u << 20;
  const double gamma = std::sqrt(2.0);
  EXPECT_EQ(support_grid_max(n, 2.0), 10u);
  EXPECT_EQ(support_grid_size(n, 2.0, 0), 32u);
  EXPECT_EQ(support_grid_size(n, 2.0, 3), 256u);
  std::set<std::uint64_t> grid_seen;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto no = gen_support_pair(n, gamma, InstanceKind::kNo, seed);
    EXPECT_NEAR(no.beta, 2.0, 1e-12);
    EXPECT_LE(no.grid_index, no.grid_max);
    grid_seen.insert(no.grid_index);
    EXPECT_EQ(support_size(*no.d1), no.s);
    EXPECT_EQ(support_size(*no.d2), no.s2);
    EXPECT_EQ(no.s2, 2 * no.s);
    const auto yes = gen_support_pair(n, gamma, InstanceKind::kYes, seed);
    EXPECT_EQ(yes.s, no.s);
    EXPECT_EQ(tv_distance(*yes.d1, *yes.d2), 0);
  }
  EXPECT_GE(grid_seen.size(), 6u);
  EXPECT_THROW(gen_support_pair(n, 1.2, InstanceKind::kNo, 1), std::invalid_argument);
}

TEST(InstancesTest, SupportPairRebuild) {
  const auto a = gen_support_pair(1u << 16, 2.0, InstanceKind::kNo, 8);
  const auto b = rebuild_support_pair(a.n, a.gamma, a.kind, a.grid_index, a.seed, a.relabel_seed1,
                                      a.relabel_seed2);
  EXPECT_EQ(tv_distance(*a.d1, *b.d1), 0);
  EXPECT_EQ(tv_distance(*a.d2, *b.d2), 0);
  EXPECT_THROW(rebuild_support_pair(a.n, a.gamma, a.kind, a.grid_max + 1, 1, 2, 3),
               std::invalid_argument);
}

}  // namespace
}  // namespace condtest
