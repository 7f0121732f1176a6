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

#ifndef CONDTEST_QUERY_SET_HPP_
#define CONDTEST_QUERY_SET_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "condtest/distribution.hpp"

namespace condtest {

enum class QueryKind { kExplicit, kFullDomain, kBernoulliImplicit };

// Raised when an operation needs a materialized set but gets an implicit one.
class UnsupportedRepresentation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A conditioning set. Explicit sets hold sorted distinct ids; implicit sets
// include every domain element independently with probability p, realized
// lazily from `seed`, and may be sampled only once.
class QuerySet {
 public:
  // Sorts the ids; throws on duplicates or an empty list.
  static QuerySet of(std::vector<ElementId> ids);
  static QuerySet full_domain();
  static QuerySet bernoulli(double inclusion_probability, std::uint64_t seed);

  QueryKind kind() const { return kind_; }
  std::span<const ElementId> ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  double inclusion_probability() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  bool consumed() const { return consumed_; }
  void mark_consumed() { consumed_ = true; }

  bool contains(ElementId id) const;

 private:
  QuerySet() = default;

  QueryKind kind_ = QueryKind::kExplicit;
  std::vector<ElementId> ids_;
  double p_ = 0.0;
  std::uint64_t seed_ = 0;
  bool consumed_ = false;
};

// Sorted union of two disjoint explicit sets; throws if they overlap.
QuerySet disjoint_union(const QuerySet& x, const QuerySet& y);

// D(S) exactly. Throws UnsupportedRepresentation for implicit sets.
Rational mass_of(const PiecewiseDistribution& d, const QuerySet& s);

}  // namespace condtest

#endif  // CONDTEST_QUERY_SET_HPP_
