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

#ifndef CONDTEST_SUPPORT_SIZE_HPP_
#define CONDTEST_SUPPORT_SIZE_HPP_

#include <cstdint>
#include <vector>

#include "condtest/compare.hpp"
#include "condtest/oracle.hpp"
#include "condtest/random.hpp"

namespace condtest {

enum class Verdict { kAccept, kReject };
enum class ProbeVerdict { kYes, kNo };

// Constants behind the asymptotic sample sizes. All of them are written into
// experiment metadata.
struct EstimatorConstants {
  double compare = kDefaultCompareConstant;  // c_cmp
  double probe = 32.0;                       // rounds = ceil(c_probe / gap^2)
  double uniform_samples = 64.0;             // m = ceil(c / eps^2) uniform draws
  double light_samples = 10.0;               // k = ceil(c / tau) draws from D
  double collision = 8.0;                    // c_u
  double majority = 12.0;                    // reps = ceil(c * ln(1/delta)), made odd
};

// ceil(c * ln(1/delta)) rounded up to the next odd number.
std::uint64_t majority_repetitions(double delta, double constant = 12.0);

// Decides supp(D) >= (1 - eps/2) n (ACCEPT) versus supp(D) <= (1 - eps) n
// (REJECT), each with probability >= 1 - delta, for D whose support masses are
// all >= tau / n. Returns REJECT without queries when tau >= 2.
Verdict test_small_support(CondOracle& oracle, double eps, double tau, double delta, Rng& coins,
                           const EstimatorConstants& constants = {});

// k = ceil(log2(2/delta) / log2(n/m)).
std::uint64_t non_support_sample_count(std::uint64_t n, double upper_bound, double delta);

// Returns an id r with D(r) = 0 with probability >= 1 - delta, provided
// `upper_bound` >= supp(D). Throws if upper_bound >= n.
ElementId get_non_support(CondOracle& oracle, double upper_bound, double delta, Rng& coins,
                          const EstimatorConstants& constants = {});

// alpha = (1 - 1/sigma)^sigma.
double probe_alpha(double sigma);
// alpha * (alpha^(-eps/2) - 1): gap between the two miss probabilities.
double probe_gap(double sigma, double eps);
// Probability (1 - 1/sigma)^omega that a 1/sigma-Bernoulli set misses a support of size omega.
double miss_probability(double sigma, double omega);
// ceil(c_probe / gap^2).
std::uint64_t probe_rounds(double sigma, double eps, const EstimatorConstants& constants = {});

struct ProbeDiagnostics {
  std::uint64_t rounds = 0;
  std::uint64_t misses = 0;
  std::uint64_t high_anomalies = 0;  // Compare returned High against a zero-mass reference
};

// Yes when sigma <= supp(D), No when sigma > (1 + eps) supp(D), each with
// probability >= 1 - delta. `reference` must have D(reference) = 0.
ProbeVerdict is_at_most_support_size(CondOracle& oracle, double sigma, ElementId reference,
                                     double eps, double delta, Rng& coins,
                                     const EstimatorConstants& constants = {},
                                     ProbeDiagnostics* diagnostics = nullptr);

enum class EstimatePath { kDenseShortcut, kBinarySearch, kExhausted, kNonAdaptive };

struct SupportEstimate {
  double value = 0.0;
  std::uint64_t queries_used = 0;
  EstimatePath path = EstimatePath::kDenseShortcut;
  // kBinarySearch / kExhausted: doubly exponential stage j and exponent i*.
  // kNonAdaptive: the probe size k that tripped (0 if none).
  std::uint64_t stage = 0;
  std::uint64_t exponent = 0;
  // Set when the bound distribution breaks the min-mass promise for tau.
  bool contract_void = false;
};

// Multiplicative (1 + eps)-estimate of supp(D) with probability >= 2/3 for
// distributions whose support masses are >= tau / n.
SupportEstimate estimate_support(CondOracle& oracle, double eps, double tau, Rng& coins,
                                 const EstimatorConstants& constants = {});

// Pairwise-collision uniformity test of D_S on S with
// ceil(c_u * sqrt|S| / eps^2 * log2(1/delta)) samples; ACCEPT iff the collision
// rate is at most (1 + eps^2) / |S|.
Verdict collision_uniformity_test(CondOracle& oracle, const QuerySet& s, double eps, double delta,
                                  const EstimatorConstants& constants = {});
std::uint64_t collision_sample_count(std::uint64_t set_size, double eps, double delta,
                                     const EstimatorConstants& constants = {});

struct NonAdaptiveParams {
  double threshold = 0.5;        // theta: trip when rejects > theta * repetitions
  std::uint64_t repetitions = 0;  // 0 means ceil(c_na * log2 log2 n)
  double repetition_constant = 4.0;  // c_na
  double uniformity_eps = 0.5;
  double uniformity_delta = 0.25;
};

// Every query set of a non-adaptive run, fixed before any sample is drawn.
struct NonAdaptivePlan {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> sizes;            // 2, 4, ..., n
  std::vector<std::vector<QuerySet>> sets;     // sets[i] has `repetitions` sets of size sizes[i]

  friend bool operator==(const NonAdaptivePlan& a, const NonAdaptivePlan& b);
};

std::uint64_t nonadaptive_repetitions(std::uint64_t n, const NonAdaptiveParams& params);

// Pure function of (n, repetitions, seed).
NonAdaptivePlan plan_nonadaptive_queries(std::uint64_t n, std::uint64_t repetitions,
                                         std::uint64_t seed);

// Runs a committed plan: returns n/k for the first k whose reject count
// exceeds theta * repetitions, else n. Meant for supports that are uniform.
SupportEstimate estimate_support_nonadaptive(CondOracle& oracle, const NonAdaptivePlan& plan,
                                             const NonAdaptiveParams& params,
                                             const EstimatorConstants& constants = {});

// Reject counts of every level of a plan, without stopping at the first trip.
std::vector<std::uint64_t> nonadaptive_reject_profile(CondOracle& oracle, const NonAdaptivePlan& plan,
                                                      const NonAdaptiveParams& params,
                                                      const EstimatorConstants& constants = {});

// The estimate a threshold would produce from a reject profile.
double nonadaptive_estimate_from_profile(const NonAdaptivePlan& plan,
                                         const std::vector<std::uint64_t>& rejects,
                                         double threshold);

// Draws the plan seed from `coins`, then runs it.
SupportEstimate estimate_support_nonadaptive(CondOracle& oracle, const NonAdaptiveParams& params,
                                             Rng& coins, const EstimatorConstants& constants = {});

// Uniformly random k-subset of [n] (Floyd's algorithm).
std::vector<ElementId> random_subset(std::uint64_t n, std::uint64_t k, Rng& rng);

}  // namespace condtest

#endif  // CONDTEST_SUPPORT_SIZE_HPP_
