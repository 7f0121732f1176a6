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

#include "condtest/compare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace condtest {
namespace {

void validate(const CompareParams& params) {
  if (!(params.eta > 0.0 && params.eta <= 1.0)) throw std::invalid_argument("eta must be in (0, 1]");
  if (!(params.k >= 1.0)) throw std::invalid_argument("K must be >= 1");
  if (!(params.delta > 0.0 && params.delta <= 0.5)) {
    throw std::invalid_argument("delta must be in (0, 1/2]");
  }
}

}  // namespace

std::uint64_t compare_sample_count(const CompareParams& params, double constant) {
  validate(params);
  const double m =
      constant * (params.k + 1.0) * std::log2(2.0 / params.delta) / (params.eta * params.eta);
  return static_cast<std::uint64_t>(std::ceil(m));
}

double CompareEstimate::ratio() const {
  if (hits_in_y == draws) return std::numeric_limits<double>::infinity();
  return static_cast<double>(hits_in_y) / static_cast<double>(draws - hits_in_y);
}

CompareEstimate compare_estimate(CondOracle& oracle, const QuerySet& x, const QuerySet& y,
                                 const CompareParams& params, double constant) {
  const std::uint64_t m = compare_sample_count(params, constant);
  if (x.kind() != QueryKind::kExplicit || y.kind() != QueryKind::kExplicit) {
    throw UnsupportedRepresentation("Compare needs explicit sets");
  }
  // Count on whichever side holds the smallest id so that swapping X and Y
  // reuses the identical draw.
  const bool y_is_canonical = y.ids().front() < x.ids().front();
  if (x.size() == 1 && y.size() == 1) {
    return compare_singletons(oracle, x.ids().front(), y.ids().front(), m);
  }
  const QuerySet both = disjoint_union(x, y);
  const std::uint64_t canonical_hits = oracle.count_hits(both, y_is_canonical ? y : x, m);
  return CompareEstimate{m, y_is_canonical ? canonical_hits : m - canonical_hits};
}

CompareEstimate compare_singletons(CondOracle& oracle, ElementId x, ElementId y,
                                   std::uint64_t draws) {
  if (y < x) return CompareEstimate{draws, oracle.count_pair_hits(y, x, draws)};
  return CompareEstimate{draws, draws - oracle.count_pair_hits(x, y, draws)};
}

CompareResult classify(const CompareEstimate& estimate, double k) {
  const double rho = estimate.ratio();
  if (rho > 2.0 * k) return CompareHigh{};
  if (rho < 1.0 / (2.0 * k)) return CompareLow{};
  return CompareRatio{rho};
}

CompareResult compare(CondOracle& oracle, const QuerySet& x, const QuerySet& y,
                      const CompareParams& params, double constant) {
  validate(params);
  return classify(compare_estimate(oracle, x, y, params, constant), params.k);
}

}  // namespace condtest
