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

#include "condtest/io.hpp"

#include <gtest/gtest.h>

namespace condtest {
namespace {

TEST(IoTest, DistributionRoundTrip) {
  const PiecewiseDistribution d(100, {{10, make_rational(1, 20)}, {50, make_rational(1, 100)}},
                                make_rational(1, 2), 77);
  const Json j = distribution_to_json(d);
  EXPECT_EQ(j.at("relabel_seed").get<std::uint64_t>(), 77u);
  const PiecewiseDistribution back = distribution_from_json(Json::parse(j.dump()));
  EXPECT_TRUE(same_distribution(d, back));
  EXPECT_EQ(back.min_mass_fraction(), make_rational(1, 2));
  for (ElementId id = 1; id <= 100; ++id) ASSERT_EQ(back.mass(id), d.mass(id));
}

TEST(IoTest, UnrelabelledDistributionStoresNull) {
  const auto d = PiecewiseDistribution::uniform(8);
  const Json j = distribution_to_json(d);
  EXPECT_TRUE(j.at("relabel_seed").is_null());
  EXPECT_TRUE(same_distribution(d, distribution_from_json(j)));
  EXPECT_FALSE(same_distribution(d, PiecewiseDistribution::uniform_prefix(8, 8, 1)));
}

TEST(IoTest, KindNames) {
  EXPECT_STREQ(kind_name(InstanceKind::kYes), "yes");
  EXPECT_EQ(parse_kind("no"), InstanceKind::kNo);
  EXPECT_THROW(parse_kind("maybe"), std::invalid_argument);
}

TEST(IoTest, EquivalenceInstanceRoundTrip) {
  for (auto kind : {InstanceKind::kNo, InstanceKind::kYes}) {
    const auto inst = gen_equivalence_instance(1u << 16, kind, 3);
    const Json j = Json::parse(instance_to_json(inst).dump());
    EXPECT_EQ(j.at("family"), "equivalence");
    const LoadedInstance back = instance_from_json(j);
    EXPECT_EQ(back.kind, kind);
    EXPECT_TRUE(same_distribution(*back.d1, *inst.d1));
    EXPECT_TRUE(same_distribution(*back.d2, *inst.d2));
    EXPECT_EQ(tv_distance(*back.d1, *back.d2), kind == InstanceKind::kNo ? make_rational(1, 4) : Rational(0));
  }
}

TEST(IoTest, SupportPairRoundTrip) {
  const auto inst = gen_support_pair(1u << 20, 2.0, InstanceKind::kNo, 12);
  const LoadedInstance back = instance_from_json(Json::parse(instance_to_json(inst).dump()));
  EXPECT_EQ(back.family, "support-pair");
  EXPECT_EQ(support_size(*back.d1), inst.s);
  EXPECT_EQ(support_size(*back.d2), inst.s2);
}

TEST(IoTest, TamperedFileIsRejected) {
  const auto inst = gen_equivalence_instance(1u << 16, InstanceKind::kNo, 4);
  Json j = instance_to_json(inst);
  j["distributions"][1]["relabel_seed"] = 1;
  EXPECT_THROW(instance_from_json(j), std::invalid_argument);
  Json k = instance_to_json(inst);
  k["family"] = "mystery";
  EXPECT_THROW(instance_from_json(k), std::invalid_argument);
}

}  // namespace
}  // namespace condtest
