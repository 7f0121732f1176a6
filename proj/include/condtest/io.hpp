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

#ifndef CONDTEST_IO_HPP_
#define CONDTEST_IO_HPP_

#include <memory>
#include <string>

#include <json.hpp>

#include "condtest/distribution.hpp"
#include "condtest/instances.hpp"

namespace condtest {

using Json = nlohmann::json;

// {"n", "pieces": [{"count", "mass_num", "mass_den"}], "relabel_seed" (or
// null), "tau_num", "tau_den"}; integers only. Throws std::overflow_error if
// a mass does not fit in int64.
Json distribution_to_json(const PiecewiseDistribution& d);
PiecewiseDistribution distribution_from_json(const Json& j);

const char* kind_name(InstanceKind kind);
InstanceKind parse_kind(const std::string& s);

// {"family", "kind", "n", "params": {...}, "distributions": [d1, d2]}.
Json instance_to_json(const EquivalenceInstance& inst);
Json instance_to_json(const SupportPairInstance& inst);

struct LoadedInstance {
  std::string family;
  InstanceKind kind = InstanceKind::kNo;
  std::shared_ptr<const PiecewiseDistribution> d1;
  std::shared_ptr<const PiecewiseDistribution> d2;
};

// Regenerates the instance from its "params" block and checks it against the
// stored distributions; throws std::invalid_argument on any mismatch.
LoadedInstance instance_from_json(const Json& j);

bool same_distribution(const PiecewiseDistribution& a, const PiecewiseDistribution& b);

}  // namespace condtest

#endif  // CONDTEST_IO_HPP_
