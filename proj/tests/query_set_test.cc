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

#include "condtest/query_set.hpp"

#include <gtest/gtest.h>

namespace condtest {
namespace {

TEST(QuerySetTest, ExplicitSetsAreSortedAndValidated) {
  const QuerySet s = QuerySet::of({5, 2, 9});
  EXPECT_EQ(s.kind(), QueryKind::kExplicit);
  EXPECT_EQ(std::vector<ElementId>(s.ids().begin(), s.ids().end()), (std::vector<ElementId>{2, 5, 9}));
  EXPECT_TRUE(s.contains(5));
  EXPECT_FALSE(s.contains(4));
  EXPECT_THROW(QuerySet::of({}), std::invalid_argument);
  EXPECT_THROW(QuerySet::of({1, 1}), std::invalid_argument);
  EXPECT_THROW(QuerySet::of({0, 3}), std::invalid_argument);
}

TEST(QuerySetTest, ImplicitSetsHaveNoMembership) {
  const QuerySet b = QuerySet::bernoulli(0.25, 7);
  EXPECT_EQ(b.kind(), QueryKind::kBernoulliImplicit);
  EXPECT_DOUBLE_EQ(b.inclusion_probability(), 0.25);
  EXPECT_THROW(b.contains(1), UnsupportedRepresentation);
  EXPECT_THROW(QuerySet::bernoulli(0.0, 1), std::invalid_argument);
  EXPECT_THROW(QuerySet::bernoulli(1.5, 1), std::invalid_argument);
  EXPECT_TRUE(QuerySet::full_domain().contains(123));
}

TEST(QuerySetTest, DisjointUnion) {
  const QuerySet u = disjoint_union(QuerySet::of({1, 4}), QuerySet::of({2, 8}));
  EXPECT_EQ(u.size(), 4u);
  EXPECT_TRUE(u.contains(8));
  EXPECT_THROW(disjoint_union(QuerySet::of({1, 4}), QuerySet::of({4})), std::invalid_argument);
  EXPECT_THROW(disjoint_union(QuerySet::full_domain(), QuerySet::of({4})), UnsupportedRepresentation);
}

TEST(QuerySetTest, MassOfMatchesElementwiseSum) {
  const PiecewiseDistribution d(12, {{3, make_rational(1, 6)}, {6, make_rational(1, 12)}},
                                Rational(0), 17);
  for (std::vector<ElementId> ids : {std::vector<ElementId>{1, 2, 3}, {4, 7, 10, 11, 12},
                                     {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}}) {
    Rational expected = 0;
    for (ElementId id : ids) expected += d.mass(id);
    EXPECT_EQ(mass_of(d, QuerySet::of(ids)), expected);
  }
  EXPECT_EQ(mass_of(d, QuerySet::full_domain()), Rational(1));
  EXPECT_THROW(mass_of(d, QuerySet::bernoulli(0.5, 1)), UnsupportedRepresentation);
}

}  // namespace
}  // namespace condtest
