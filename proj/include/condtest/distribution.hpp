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

#ifndef CONDTEST_DISTRIBUTION_HPP_
#define CONDTEST_DISTRIBUTION_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <atomic>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "condtest/rational.hpp"

namespace condtest {

// Domain ids are 1-based: the domain is {1, ..., n}.
using ElementId = std::uint32_t;

// `count` consecutive pre-relabel indices, each carrying mass `mass`.
struct Piece {
  std::uint64_t count = 0;
  Rational mass;
};

// Seeded bijection from pre-relabel indices {0..n-1} to domain ids {1..n}.
// The permutation is a Fisher-Yates shuffle driven by mt19937_64(seed); the
// arrays are built on first use and are safe to share across threads.
class Relabel {
 public:
  Relabel(std::uint64_t n, std::uint64_t seed);

  std::uint64_t size() const { return n_; }
  std::uint64_t seed() const { return seed_; }

  ElementId id_at(std::uint64_t index) const;
  std::uint64_t index_of(ElementId id) const;

  // Forces the lazily built arrays; returns the forward map.
  std::span<const ElementId> forward() const;

 private:
  void materialize() const;

  std::uint64_t n_;
  std::uint64_t seed_;
  mutable std::once_flag built_;
  mutable std::atomic<bool> ready_{false};
  mutable std::vector<ElementId> forward_;  // index -> id
  mutable std::vector<ElementId> inverse_;  // id - 1 -> index
};

// Exact, bucketed distribution over [n]. Immutable after construction.
//
// Piece j occupies the pre-relabel index range [begin(j), begin(j) + count_j);
// indices past the last piece carry mass zero (the "tail"). A relabel maps
// pre-relabel indices to domain ids; without one the map is index + 1.
class PiecewiseDistribution {
 public:
  // Throws std::invalid_argument if the pieces do not sum to exactly 1, if
  // they overflow the domain, or if a positive mass is below tau / n.
  PiecewiseDistribution(std::uint64_t n, std::vector<Piece> pieces,
                        Rational min_mass_fraction = Rational(0),
                        std::optional<std::uint64_t> relabel_seed = std::nullopt);

  PiecewiseDistribution(std::uint64_t n, std::vector<Piece> pieces,
                        Rational min_mass_fraction,
                        std::shared_ptr<const Relabel> relabel);

  static PiecewiseDistribution uniform(std::uint64_t n);
  // Uniform on the first `support` pre-relabel indices.
  static PiecewiseDistribution uniform_prefix(
      std::uint64_t n, std::uint64_t support,
      std::optional<std::uint64_t> relabel_seed = std::nullopt);

  std::uint64_t n() const { return n_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const Rational& min_mass_fraction() const { return tau_; }
  const std::shared_ptr<const Relabel>& relabel() const { return relabel_; }
  std::optional<std::uint64_t> relabel_seed() const;

  // Total count covered by pieces; indices in [covered(), n) are the tail.
  std::uint64_t covered() const { return prefix_.back(); }
  std::uint64_t piece_begin(std::size_t j) const { return prefix_[j]; }

  // Piece index of a pre-relabel index; pieces().size() denotes the tail.
  std::size_t piece_of_index(std::uint64_t index) const;
  std::size_t piece_of(ElementId id) const { return piece_of_index(index_of(id)); }

  ElementId id_at(std::uint64_t index) const;
  std::uint64_t index_of(ElementId id) const;

  const Rational& mass(ElementId id) const;
  double mass_double(ElementId id) const;
  double piece_mass_double(std::size_t j) const;

  // Positive-mass pieces and the merged zero-mass region (zero pieces + tail),
  // precomputed for the oracle.
  const std::vector<std::size_t>& positive_pieces() const { return positive_; }
  std::uint64_t zero_mass_count() const { return zero_total_; }
  // Pre-relabel index of the k-th element (0-based) of the zero-mass region.
  std::uint64_t zero_region_index(std::uint64_t k) const;
  // Cumulative piece weights count * mass, for full-domain sampling.
  const std::vector<double>& cumulative_weights() const { return cumulative_; }

 private:
  void validate_and_index();

  std::uint64_t n_;
  std::vector<Piece> pieces_;
  Rational tau_;
  std::shared_ptr<const Relabel> relabel_;

  std::vector<std::uint64_t> prefix_;
  std::vector<double> mass_double_;
  std::vector<double> cumulative_;
  std::vector<std::size_t> positive_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> zero_ranges_;  // (begin, count)
  std::vector<std::uint64_t> zero_prefix_;
  std::uint64_t zero_total_ = 0;
  Rational zero_;
};

// Number of ids with strictly positive mass. Ground truth only.
std::uint64_t support_size(const PiecewiseDistribution& d);

// True iff every support element has mass >= tau / n.
bool satisfies_min_mass(const PiecewiseDistribution& d, const Rational& tau);

struct LightSet {
  std::uint64_t cardinality = 0;
  Rational mass;
};

// {x : D(x) in [tau/n, 2/n]}: its size and exact mass.
LightSet light_set_size(const PiecewiseDistribution& d, const Rational& tau);

}  // namespace condtest

#endif  // CONDTEST_DISTRIBUTION_HPP_
