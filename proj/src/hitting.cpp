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

#include "condtest/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "condtest/random.hpp"

namespace condtest {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t grid_max(double log_n, double log_beta) {
  return static_cast<std::uint64_t>(std::floor(log_n / (2.0 * log_beta)));
}

}  // namespace

HitProfile hit_profile(std::span<const double> log_sizes, double log_n, double log_beta,
                       double log_s) {
  if (!(log_beta > 0.0)) throw std::invalid_argument("beta must exceed 1");
  HitProfile p;
  p.breakpoints.reserve(log_sizes.size());
  for (double a : log_sizes) p.breakpoints.push_back(std::abs(a + log_s - log_n) / log_beta);
  std::sort(p.breakpoints.begin(), p.breakpoints.end());
  // C_t/t jumps to i/d_(i) just above each breakpoint and decays in between.
  p.min_scaled_gap = kInf;
  for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
    const double d = p.breakpoints[i];
    const auto rank = static_cast<double>(i + 1);
    p.sup_ratio = std::max(p.sup_ratio, d == 0.0 ? kInf : rank / d);
    p.min_scaled_gap = std::min(p.min_scaled_gap, d / rank);
  }
  return p;
}

HittingResult hitting_fraction(std::span<const double> log_sizes, double log_n, double log_beta,
                               double threshold) {
  if (!(log_beta > 0.0)) throw std::invalid_argument("beta must exceed 1");
  HittingResult out;
  out.beyond_bound = static_cast<double>(log_sizes.size()) > log_n / (100.0 * log_beta);
  const std::uint64_t kmax = grid_max(log_n, log_beta);
  for (std::uint64_t k = 0; k <= kmax; ++k) {
    const double log_s = static_cast<double>(k) * log_beta + log_n / 4.0;
    const HitProfile p = hit_profile(log_sizes, log_n, log_beta, log_s);
    ++out.grid_points;
    if (p.sup_ratio < threshold) ++out.satisfied;
    if (p.min_scaled_gap >= threshold) ++out.gap_satisfied;
  }
  const auto total = static_cast<double>(out.grid_points);
  out.fraction = static_cast<double>(out.satisfied) / total;
  out.gap_fraction = static_cast<double>(out.gap_satisfied) / total;
  return out;
}

std::vector<double> adversarial_geometric_sizes(double log_n, std::uint32_t q, std::uint64_t seed) {
  if (q == 0) return {};
  Rng rng(seed);
  // Grid points cover log s in [log n / 4, 3 log n / 4]; a size hits s hardest
  // when log(n / a) is close to log s, so spread log(n / a_i) over that range.
  const double lo = log_n / 4.0;
  const double width = log_n / 2.0;
  const double spacing = width / q * (0.5 + 0.5 * uniform01(rng));
  const double start = lo + uniform01(rng) * (width - spacing * (q - 1));
  std::vector<double> out;
  out.reserve(q);
  for (std::uint32_t i = 0; i < q; ++i) out.push_back(log_n - (start + spacing * i));
  return out;
}

MeasureResult s_c_measure(std::span<const double> points, double length, double c,
                          std::uint64_t resolution, SideVariant variant) {
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  if (!(length > 0.0) || resolution == 0) throw std::invalid_argument("bad grid");
  MeasureResult out;
  const double h = length / static_cast<double>(resolution);
  if (points.empty()) return out;
  // S_c has at most two intervals per gap between points; the midpoint rule
  // is off by less than one cell per interval.
  out.grid_error = 2.0 * static_cast<double>(points.size() + 1) * h;

  std::vector<double> a(points.begin(), points.end());
  std::sort(a.begin(), a.end());
  const std::size_t q = a.size();
  // With 1-based ranks, x has a left witness iff x < max_{i<=p}(a_i - c i) + c (p+1)
  // and a right witness iff x > min_{i>p}(a_i - c i) + c p, where p = #{a_i <= x}.
  std::vector<double> prefix_max(q + 1, -kInf);
  std::vector<double> suffix_min(q + 2, kInf);
  for (std::size_t i = 1; i <= q; ++i) {
    prefix_max[i] = std::max(prefix_max[i - 1], a[i - 1] - c * static_cast<double>(i));
  }
  for (std::size_t i = q; i >= 1; --i) {
    suffix_min[i] = std::min(suffix_min[i + 1], a[i - 1] - c * static_cast<double>(i));
  }
  const bool left = variant != SideVariant::kRight;
  const bool right = variant != SideVariant::kLeft;

  std::uint64_t hits = 0;
  std::size_t p = 0;
  for (std::uint64_t k = 0; k < resolution; ++k) {
    const double x = (static_cast<double>(k) + 0.5) * h;
    while (p < q && a[p] <= x) ++p;
    const auto pd = static_cast<double>(p);
    const bool in_left = left && p >= 1 && x < prefix_max[p] + c * (pd + 1.0);
    const bool in_right = right && p < q && x > suffix_min[p + 1] + c * pd;
    if (in_left || in_right) ++hits;
  }
  out.measure = static_cast<double>(hits) * h;
  return out;
}

}  // namespace condtest
