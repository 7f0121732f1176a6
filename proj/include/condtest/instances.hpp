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

#ifndef CONDTEST_INSTANCES_HPP_
#define CONDTEST_INSTANCES_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "condtest/distribution.hpp"
#include "condtest/rational.hpp"

namespace condtest {

enum class InstanceKind { kYes, kNo };

// Bucketed pair (D1, D2) on a random effective support of size m = b * n^(1/4).
// Buckets B_1..B_2r have geometric sizes ~ b * rho^i; D1 puts 1/(2r) on every
// bucket, D2 moves mass 1/(4r) vs 3/(4r) inside each consecutive pair.
struct EquivalenceInstance {
  std::uint64_t n = 0;
  InstanceKind kind = InstanceKind::kNo;
  std::uint64_t k_b = 0;
  std::uint64_t b = 1;
  std::uint64_t quarter = 0;  // floor(n^(1/4))
  std::uint64_t m = 0;        // b * quarter
  double rho = 0.0;           // ratio actually used for bucket sizes
  double rho_requested = 0.0;
  std::uint64_t r = 0;
  std::vector<std::uint64_t> bucket_sizes;  // 2r entries, sum = m
  std::vector<int> pair_flips;              // r entries; all 0 for yes-instances
  std::uint64_t seed = 0;
  std::uint64_t relabel_seed = 0;
  std::shared_ptr<const PiecewiseDistribution> d1;
  std::shared_ptr<const PiecewiseDistribution> d2;
};

// Bucket sizes for a given (b, quarter, rho, r): |B_i| = max(1, floor(b rho^i))
// with the last bucket taking the remainder of m. Empty if they do not fit.
std::vector<std::uint64_t> equivalence_bucket_sizes(std::uint64_t b, std::uint64_t quarter,
                                                    double rho, std::uint64_t r);

// Requires n >= 2^16. `rho` defaults to 2^sqrt(log2 n).
EquivalenceInstance gen_equivalence_instance(std::uint64_t n, InstanceKind kind,
                                             std::uint64_t seed,
                                             std::optional<double> rho = std::nullopt);

// Rebuilds the distributions of an instance from its recorded parameters.
EquivalenceInstance rebuild_equivalence_instance(std::uint64_t n, InstanceKind kind,
                                                 std::uint64_t k_b, double rho,
                                                 double rho_requested, std::uint64_t r,
                                                 std::vector<int> pair_flips, std::uint64_t seed,
                                                 std::uint64_t relabel_seed);

// Uniform D1 on a random s-subset, D2 uniform on a random (beta s)-subset
// (no) or D2 = D1 (yes), with s = beta^k floor(n^(1/4)) for a random grid index k.
struct SupportPairInstance {
  std::uint64_t n = 0;
  InstanceKind kind = InstanceKind::kNo;
  double gamma = 0.0;
  double beta = 0.0;
  std::uint64_t grid_index = 0;
  std::uint64_t grid_max = 0;  // floor(log n / (2 log beta))
  std::uint64_t s = 0;
  std::uint64_t s2 = 0;  // support of D2
  std::uint64_t seed = 0;
  std::uint64_t relabel_seed1 = 0;
  std::uint64_t relabel_seed2 = 0;
  std::shared_ptr<const PiecewiseDistribution> d1;
  std::shared_ptr<const PiecewiseDistribution> d2;
};

// Support of D1 at grid index k: round(beta^k * floor(n^(1/4))).
std::uint64_t support_grid_size(std::uint64_t n, double beta, std::uint64_t k);
std::uint64_t support_grid_max(std::uint64_t n, double beta);

SupportPairInstance gen_support_pair(std::uint64_t n, double gamma, InstanceKind kind,
                                     std::uint64_t seed);

SupportPairInstance rebuild_support_pair(std::uint64_t n, double gamma, InstanceKind kind,
                                         std::uint64_t grid_index, std::uint64_t seed,
                                         std::uint64_t relabel_seed1,
                                         std::uint64_t relabel_seed2);

// floor(n^(1/4)) computed in integers.
std::uint64_t integer_fourth_root(std::uint64_t n);

// Exact total variation distance. Throws std::invalid_argument on mismatched n.
Rational tv_distance(const PiecewiseDistribution& d1, const PiecewiseDistribution& d2);

}  // namespace condtest

#endif  // CONDTEST_INSTANCES_HPP_
