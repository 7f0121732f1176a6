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

#ifndef CONDTEST_SCALING_HPP_
#define CONDTEST_SCALING_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace condtest {

// alpha = q^7, phi = q^(5/2), gamma = 1/phi. Exponents are kept in base 2 so
// that gamma is exactly the reciprocal of phi.
struct AnalysisParams {
  std::uint64_t q = 1;
  double log_alpha = 0.0;
  double log_phi = 0.0;
  double log_gamma = 0.0;

  static AnalysisParams for_queries(std::uint64_t q);
  double alpha() const;
  double phi() const;
  double gamma() const;
};

// Bucket geometry of an equivalence instance, in base-2 logarithms:
// n, rho and the number of bucket pairs r. The scaling b = 2^k_b is a
// separate argument of every predicate.
struct BucketGeometry {
  double log_n = 0.0;
  double log_rho = 0.0;
  std::uint64_t r = 0;

  // rho = 2^sqrt(log n) and r = floor(log n / (8 log rho)), at least 1.
  static BucketGeometry standard(double log_n);
  std::uint64_t max_k_b() const;  // floor(log n / 2)
};

enum class SizeClass { kSmall, kLarge, kNeither };

// Small: size < n / (b rho^2r). Large: size >= n / (b rho^(2r - 2 phi)).
SizeClass classify_size(double log_size, std::uint64_t k_b, const BucketGeometry& g, double phi);

// Whether size lies in [n / (alpha b rho^j), alpha n / (b rho^j)].
bool in_stability_window(double log_size, double log_alpha, std::uint64_t k_b,
                         const BucketGeometry& g, std::uint64_t j);

// Outside every window j = 1..2r.
bool is_alpha_stable(double log_size, double log_alpha, std::uint64_t k_b, const BucketGeometry& g);

// Delta_j: least Delta in {0..2r} with size * nu * rho^(2r - Delta) / n <= 1/alpha, else 2r.
std::uint64_t concentrated_buckets(double log_size, double log_alpha, double log_nu,
                                   const BucketGeometry& g);

// Stable vector whose pooled mass (1 / (2rn)) sum_j size_j Delta_j avoids
// [1 / (tau 2r nu rho^i), tau / (2r nu rho^i)] for every i in [2r].
bool is_incomparable(std::span<const double> log_sizes, double log_alpha, double log_tau,
                     double log_nu, std::uint64_t k_b, const BucketGeometry& g);

struct BadScalingCounts {
  std::uint64_t scalings = 0;  // number of k_b values enumerated
  std::uint64_t neither = 0;   // k_b values making the size neither small nor large
  std::vector<std::uint64_t> unstable_per_j;  // index j - 1
  std::uint64_t unstable = 0;  // k_b values violating stability for some j
  std::uint64_t max_unstable_per_j() const;
  std::uint64_t unstable_pairs() const;  // sum over j
};

// Enumerates k_b = 0..floor(log n / 2) for a fixed size.
BadScalingCounts count_bad_scalings(double log_size, const AnalysisParams& params,
                                    const BucketGeometry& g);

// Reference bounds: 2 phi log rho + 2 and ceil(log 4 alpha).
double neither_count_bound(const AnalysisParams& params, const BucketGeometry& g);
std::uint64_t stability_count_bound(const AnalysisParams& params);
// Number of integers k_b a window of multiplicative width alpha^2 can hold.
std::uint64_t stability_window_capacity(const AnalysisParams& params);

}  // namespace condtest

#endif  // CONDTEST_SCALING_HPP_
