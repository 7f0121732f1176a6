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

#include <algorithm>
#include <map>

namespace condtest {

QuerySet QuerySet::of(std::vector<ElementId> ids) {
  if (ids.empty()) throw std::invalid_argument("explicit query set must be nonempty");
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("explicit query set has duplicate ids");
  }
  if (ids.front() == 0) throw std::invalid_argument("element ids start at 1");
  QuerySet s;
  s.kind_ = QueryKind::kExplicit;
  s.ids_ = std::move(ids);
  return s;
}

QuerySet QuerySet::full_domain() {
  QuerySet s;
  s.kind_ = QueryKind::kFullDomain;
  return s;
}

QuerySet QuerySet::bernoulli(double inclusion_probability, std::uint64_t seed) {
  if (!(inclusion_probability > 0.0 && inclusion_probability <= 1.0)) {
    throw std::invalid_argument("inclusion probability must be in (0, 1]");
  }
  QuerySet s;
  s.kind_ = QueryKind::kBernoulliImplicit;
  s.p_ = inclusion_probability;
  s.seed_ = seed;
  return s;
}

bool QuerySet::contains(ElementId id) const {
  switch (kind_) {
    case QueryKind::kExplicit:
      return std::binary_search(ids_.begin(), ids_.end(), id);
    case QueryKind::kFullDomain:
      return true;
    case QueryKind::kBernoulliImplicit:
      break;
  }
  throw UnsupportedRepresentation("membership is undefined for an unrealized implicit set");
}

QuerySet disjoint_union(const QuerySet& x, const QuerySet& y) {
  if (x.kind() != QueryKind::kExplicit || y.kind() != QueryKind::kExplicit) {
    throw UnsupportedRepresentation("disjoint_union needs explicit sets");
  }
  std::vector<ElementId> merged;
  merged.reserve(x.size() + y.size());
  std::merge(x.ids().begin(), x.ids().end(), y.ids().begin(), y.ids().end(),
             std::back_inserter(merged));
  if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) {
    throw std::invalid_argument("query sets overlap");
  }
  return QuerySet::of(std::move(merged));
}

Rational mass_of(const PiecewiseDistribution& d, const QuerySet& s) {
  switch (s.kind()) {
    case QueryKind::kFullDomain: {
      Rational total(0);
      for (const Piece& p : d.pieces()) total += p.mass * Rational(BigInt(p.count));
      return total;
    }
    case QueryKind::kExplicit: {
      // Group by piece so the exact sum has one term per distinct piece.
      std::map<std::size_t, std::uint64_t> per_piece;
      for (ElementId id : s.ids()) ++per_piece[d.piece_of(id)];
      Rational total(0);
      for (const auto& [j, count] : per_piece) {
        if (j < d.pieces().size()) total += d.pieces()[j].mass * Rational(BigInt(count));
      }
      return total;
    }
    case QueryKind::kBernoulliImplicit:
      break;
  }
  throw UnsupportedRepresentation("mass of an implicit set is a random variable");
}

}  // namespace condtest
