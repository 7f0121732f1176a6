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

#include "condtest/distribution.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

namespace condtest {
namespace {

PiecewiseDistribution three_pieces(std::optional<std::uint64_t> relabel = std::nullopt) {
  // 2 x 1/4, 4 x 1/8, 2 zero, then a tail of 2.
  return PiecewiseDistribution(10,
                               {{2, make_rational(1, 4)},
                                {4, make_rational(1, 8)},
                                {2, Rational(0)}},
                               Rational(0), relabel);
}

TEST(DistributionTest, RejectsMassNotSummingToOne) {
  EXPECT_THROW(PiecewiseDistribution(4, {{4, make_rational(1, 5)}}), std::invalid_argument);
  EXPECT_THROW(PiecewiseDistribution(4, {{5, make_rational(1, 5)}}), std::invalid_argument);
  EXPECT_NO_THROW(PiecewiseDistribution(5, {{5, make_rational(1, 5)}}));
}

TEST(DistributionTest, RejectsMassBelowMinimum) {
  // 1/8 < tau / n = 1.5 / 10.
  EXPECT_THROW(PiecewiseDistribution(10, {{2, make_rational(1, 4)}, {4, make_rational(1, 8)}},
                                     make_rational(3, 2)),
               std::invalid_argument);
}

TEST(DistributionTest, PiecesAndTail) {
  const auto d = three_pieces();
  EXPECT_EQ(d.covered(), 8u);
  EXPECT_EQ(d.piece_of_index(0), 0u);
  EXPECT_EQ(d.piece_of_index(5), 1u);
  EXPECT_EQ(d.piece_of_index(6), 2u);
  EXPECT_EQ(d.piece_of_index(9), 3u);  // tail
  EXPECT_EQ(d.mass(1), make_rational(1, 4));
  EXPECT_EQ(d.mass(3), make_rational(1, 8));
  EXPECT_EQ(d.mass(10), Rational(0));
  EXPECT_EQ(d.zero_mass_count(), 4u);
  EXPECT_EQ(support_size(d), 6u);
  EXPECT_DOUBLE_EQ(d.cumulative_weights().back(), 1.0);
}

TEST(DistributionTest, ZeroRegionEnumeratesEveryZeroIndex) {
  const auto d = three_pieces();
  std::vector<std::uint64_t> got;
  for (std::uint64_t k = 0; k < d.zero_mass_count(); ++k) got.push_back(d.zero_region_index(k));
  EXPECT_EQ(got, (std::vector<std::uint64_t>{6, 7, 8, 9}));
}

TEST(DistributionTest, RelabelIsABijection) {
  const Relabel r(1000, 42);
  std::set<ElementId> ids;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const ElementId id = r.id_at(i);
    ASSERT_GE(id, 1u);
    ASSERT_LE(id, 1000u);
    EXPECT_EQ(r.index_of(id), i);
    ids.insert(id);
  }
  EXPECT_EQ(ids.size(), 1000u);
  // Same seed, same permutation; another seed, another one.
  const Relabel again(1000, 42), other(1000, 43);
  EXPECT_TRUE(std::equal(r.forward().begin(), r.forward().end(), again.forward().begin()));
  EXPECT_FALSE(std::equal(r.forward().begin(), r.forward().end(), other.forward().begin()));
}

TEST(DistributionTest, RelabelPreservesMassMultiset) {
  const auto plain = three_pieces();
  const auto shuffled = three_pieces(99);
  std::vector<Rational> a, b;
  Rational total = 0;
  for (ElementId id = 1; id <= 10; ++id) {
    a.push_back(plain.mass(id));
    b.push_back(shuffled.mass(id));
    total += shuffled.mass(id);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
  EXPECT_EQ(total, Rational(1));
  EXPECT_EQ(support_size(shuffled), 6u);
  EXPECT_EQ(shuffled.relabel_seed(), std::optional<std::uint64_t>(99));
}

TEST(DistributionTest, UniformPrefix) {
  const auto d = PiecewiseDistribution::uniform_prefix(1u << 20, 300, 5);
  EXPECT_EQ(support_size(d), 300u);
  EXPECT_TRUE(satisfies_min_mass(d, Rational(1)));
  // 1/300 >= tau / n for tau up to n / 300.
  EXPECT_TRUE(satisfies_min_mass(d, Rational((1u << 20) / 300)));
  EXPECT_FALSE(satisfies_min_mass(d, Rational((1u << 20) / 300 + 1)));
  const auto u = PiecewiseDistribution::uniform(16);
  EXPECT_EQ(support_size(u), 16u);
  EXPECT_EQ(u.mass(16), make_rational(1, 16));
}

TEST(DistributionTest, LightSetRequiresPositiveTau) {
  EXPECT_THROW(light_set_size(three_pieces(), Rational(0)), std::invalid_argument);
}

TEST(DistributionTest, LightSetAgainstBruteForce) {
  const std::uint64_t n = 10;
  const auto d = three_pieces(3);
  for (const Rational tau : {make_rational(1, 4), Rational(1), make_rational(5, 4), Rational(2)}) {
    std::uint64_t count = 0;
    Rational mass = 0;
    for (ElementId id = 1; id <= n; ++id) {
      const Rational m = d.mass(id);
      if (m > 0 && m >= tau / n && m <= Rational(2) / n) {
        ++count;
        mass += m;
      }
    }
    const LightSet got = light_set_size(d, tau);
    EXPECT_EQ(got.cardinality, count) << tau;
    EXPECT_EQ(got.mass, mass) << tau;
  }
}

}  // namespace
}  // namespace condtest
