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

#include "condtest/atoms.hpp"

#include <set>

#include <gtest/gtest.h>

#include "condtest/oracle.hpp"

namespace condtest {
namespace {

// Enumerates all 2^t sign patterns and collects the ids matching each one.
std::vector<Atom> naive(const std::vector<QuerySet>& sets, std::uint64_t n) {
  std::vector<Atom> out;
  for (std::uint64_t sig = 0; sig < (std::uint64_t{1} << sets.size()); ++sig) {
    Atom a{sig, {}};
    for (ElementId id = 1; id <= n; ++id) {
      bool match = true;
      for (std::size_t r = 0; r < sets.size() && match; ++r) match = sets[r].contains(id) == ((sig >> r & 1) != 0);
      if (match) a.ids.push_back(id);
    }
    if (!a.ids.empty()) out.push_back(std::move(a));
  }
  return out;
}

std::vector<QuerySet> random_sets(Rng& rng, std::uint64_t n, std::size_t t) {
  std::vector<QuerySet> sets;
  for (std::size_t r = 0; r < t; ++r) {
    std::vector<ElementId> ids;
    for (ElementId id = 1; id <= n; ++id) {
      if (uniform01(rng) < 0.5) ids.push_back(id);
    }
    if (ids.empty()) ids.push_back(static_cast<ElementId>(1 + uniform_below(rng, n)));
    sets.push_back(QuerySet::of(ids));
  }
  return sets;
}

TEST(AtomsTest, MatchesSignatureEnumeration) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint64_t n = 1 + uniform_below(rng, 20);
    const std::size_t t = uniform_below(rng, 6);
    const auto sets = random_sets(rng, n, t);
    const auto got = atoms(sets, n);
    EXPECT_EQ(got, naive(sets, n)) << "n=" << n << " t=" << t;
    EXPECT_LE(got.size(), std::uint64_t{1} << t);
    std::set<ElementId> seen;
    for (const Atom& a : got) seen.insert(a.ids.begin(), a.ids.end());
    EXPECT_EQ(seen.size(), n);  // a partition of [n]
  }
}

TEST(AtomsTest, NoSetsGivesOneAtom) {
  const auto got = atoms({}, 5);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].signature, 0u);
  EXPECT_EQ(got[0].ids.size(), 5u);
}

TEST(AtomsTest, RejectsImplicitAndOutOfRange) {
  const std::vector<QuerySet> bad{QuerySet::full_domain()};
  EXPECT_THROW(atoms(bad, 4), UnsupportedRepresentation);
  const std::vector<QuerySet> wide{QuerySet::of({9})};
  EXPECT_THROW(atoms(wide, 4), std::out_of_range);
}

TEST(AtomsTest, ConfigurationBits) {
  const std::vector<QuerySet> sets{QuerySet::of({1, 2}), QuerySet::of({2, 3})};
  const Configuration c({2, 3}, {1, 2}, sets);
  EXPECT_EQ(c.t(), 2u);
  EXPECT_EQ(c.bits().size(), 24u);
  EXPECT_TRUE(c.equal(0, 0, 1, 1));   // first[0] = second[1] = 2
  EXPECT_FALSE(c.equal(0, 1, 1, 0));
  EXPECT_TRUE(c.equal(0, 0, 0, 0));
  EXPECT_TRUE(c.member(0, 0, 1));     // 2 in {2, 3}
  EXPECT_FALSE(c.member(1, 0, 1));    // 1 not in {2, 3}
  EXPECT_THROW(Configuration({3, 3}, {1, 2}, sets), std::invalid_argument);
}

TEST(AtomsTest, ConfigurationFromTranscript) {
  const auto d = std::make_shared<const PiecewiseDistribution>(PiecewiseDistribution::uniform(10));
  CondOracle a(d, 1, true, 0), b(d, 2, true, 1);
  const std::vector<QuerySet> sets{QuerySet::of({1, 2, 3}), QuerySet::of({3, 4}), QuerySet::of({5})};
  std::vector<ElementId> first, second;
  for (const QuerySet& s : sets) {
    first.push_back(a.sample(s));
    second.push_back(b.sample(s));
  }
  const Configuration from_log = configuration(merge_transcripts(a.transcript(), b.transcript()), sets);
  EXPECT_TRUE(from_log == Configuration(first, second, sets));
  const std::vector<QuerySet> other{QuerySet::of({1, 2}), QuerySet::of({3, 4}), QuerySet::of({5})};
  EXPECT_THROW(configuration(merge_transcripts(a.transcript(), b.transcript()), other),
               std::invalid_argument);
}

}  // namespace
}  // namespace condtest
