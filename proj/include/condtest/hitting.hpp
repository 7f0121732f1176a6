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

#ifndef CONDTEST_HITTING_HPP_
#define CONDTEST_HITTING_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace condtest {

// Hit profile of query sizes a_1..a_q against a support size s, all given as
// base-2 logarithms so that n can be astronomically large. A size is t-hit
// when a s / n lies in (beta^-t, beta^t).
struct HitProfile {
  std::vector<double> breakpoints;  // d_i = |log_beta(a_i s / n)|, ascending
  double sup_ratio = 0.0;           // sup_t C_t / t = max_i i / d_(i); +inf if some d_i = 0
  double min_scaled_gap = 0.0;      // min_i d_(i) / i; +inf for an empty profile
};

HitProfile hit_profile(std::span<const double> log_sizes, double log_n, double log_beta,
                       double log_s);

struct HittingResult {
  std::uint64_t grid_points = 0;
  // Grid points s = beta^k n^(1/4) with sup_t C_t(s) / t < threshold.
  std::uint64_t satisfied = 0;
  double fraction = 0.0;
  // Grid points where no j has d_(j) / j < threshold (the distance form,
  // in units of log beta).
  std::uint64_t gap_satisfied = 0;
  double gap_fraction = 0.0;
  // q exceeds log n / (100 log beta); the guarantee no longer applies.
  bool beyond_bound = false;
};

inline constexpr double kHittingThreshold = 2.0 / 100.0;

// Evaluates every grid point k = 0..floor(log n / (2 log beta)).
HittingResult hitting_fraction(std::span<const double> log_sizes, double log_n, double log_beta,
                               double threshold = kHittingThreshold);

// q sizes in geometric progression a_i = a_0 g^i whose log-ratios
// log(n / a_i) are spread over the whole support grid, with a seeded offset
// and spacing. Returned as log2 sizes.
std::vector<double> adversarial_geometric_sizes(double log_n, std::uint32_t q, std::uint64_t seed);

enum class SideVariant { kLeft, kRight, kBoth };

struct MeasureResult {
  double measure = 0.0;
  double grid_error = 0.0;  // 2 (q + 1) L / resolution
};

// Measure of {x in [0, L] : q_x < c}, where q_x = min_j min(l_j / j, r_j / j)
// and l_j (r_j) is the distance from x to the j-th point on its left (right),
// +inf if there are fewer than j such points. `variant` restricts to one side.
// Evaluated at the midpoints of a uniform grid of `resolution` cells.
MeasureResult s_c_measure(std::span<const double> points, double length, double c,
                          std::uint64_t resolution, SideVariant variant = SideVariant::kBoth);

}  // namespace condtest

#endif  // CONDTEST_HITTING_HPP_
