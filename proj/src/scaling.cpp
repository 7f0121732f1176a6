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

#include "condtest/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace condtest {

AnalysisParams AnalysisParams::for_queries(std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("q must be positive");
  AnalysisParams p;
  p.q = q;
  const double lq = std::log2(static_cast<double>(q));
  p.log_alpha = 7.0 * lq;
  p.log_phi = 2.5 * lq;
  p.log_gamma = -p.log_phi;
  return p;
}

double AnalysisParams::alpha() const { return std::exp2(log_alpha); }
double AnalysisParams::phi() const { return std::exp2(log_phi); }
double AnalysisParams::gamma() const { return std::exp2(log_gamma); }

BucketGeometry BucketGeometry::standard(double log_n) {
  BucketGeometry g;
  g.log_n = log_n;
  g.log_rho = std::sqrt(log_n);
  g.r = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(log_n / (8.0 * g.log_rho))));
  return g;
}

std::uint64_t BucketGeometry::max_k_b() const {
  return static_cast<std::uint64_t>(std::floor(log_n / 2.0));
}

SizeClass classify_size(double log_size, std::uint64_t k_b, const BucketGeometry& g, double phi) {
  const double kb = static_cast<double>(k_b);
  const double two_r = 2.0 * static_cast<double>(g.r);
  if (log_size < g.log_n - kb - two_r * g.log_rho) return SizeClass::kSmall;
  if (log_size >= g.log_n - kb - (two_r - 2.0 * phi) * g.log_rho) return SizeClass::kLarge;
  return SizeClass::kNeither;
}

bool in_stability_window(double log_size, double log_alpha, std::uint64_t k_b,
                         const BucketGeometry& g, std::uint64_t j) {
  const double centre = g.log_n - static_cast<double>(k_b) - static_cast<double>(j) * g.log_rho;
  return log_size >= centre - log_alpha && log_size <= centre + log_alpha;
}

bool is_alpha_stable(double log_size, double log_alpha, std::uint64_t k_b, const BucketGeometry& g) {
  for (std::uint64_t j = 1; j <= 2 * g.r; ++j) {
    if (in_stability_window(log_size, log_alpha, k_b, g, j)) return false;
  }
  return true;
}

std::uint64_t concentrated_buckets(double log_size, double log_alpha, double log_nu,
                                   const BucketGeometry& g) {
  const std::uint64_t two_r = 2 * g.r;
  for (std::uint64_t delta = 0; delta <= two_r; ++delta) {
    const double lhs = log_size + log_nu + static_cast<double>(two_r - delta) * g.log_rho - g.log_n;
    if (lhs <= -log_alpha) return delta;
  }
  return two_r;
}

bool is_incomparable(std::span<const double> log_sizes, double log_alpha, double log_tau,
                     double log_nu, std::uint64_t k_b, const BucketGeometry& g) {
  for (double s : log_sizes) {
    if (!is_alpha_stable(s, log_alpha, k_b, g)) return false;
  }
  // log2 of sum_j size_j * Delta_j, by log-sum-exp.
  std::vector<double> terms;
  for (double s : log_sizes) {
    const std::uint64_t delta = concentrated_buckets(s, log_alpha, log_nu, g);
    if (delta > 0) terms.push_back(s + std::log2(static_cast<double>(delta)));
  }
  if (terms.empty()) return true;  // pooled mass 0 is below every interval
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - top);
  const double log_two_r = std::log2(2.0 * static_cast<double>(g.r));
  const double log_mass = top + std::log2(acc) - log_two_r - g.log_n;
  for (std::uint64_t i = 1; i <= 2 * g.r; ++i) {
    const double base = -log_two_r - log_nu - static_cast<double>(i) * g.log_rho;
    if (log_mass >= base - log_tau && log_mass <= base + log_tau) return false;
  }
  return true;
}

std::uint64_t BadScalingCounts::max_unstable_per_j() const {
  return unstable_per_j.empty() ? 0 : *std::max_element(unstable_per_j.begin(), unstable_per_j.end());
}

std::uint64_t BadScalingCounts::unstable_pairs() const {
  return std::accumulate(unstable_per_j.begin(), unstable_per_j.end(), std::uint64_t{0});
}

BadScalingCounts count_bad_scalings(double log_size, const AnalysisParams& params,
                                    const BucketGeometry& g) {
  BadScalingCounts out;
  out.unstable_per_j.assign(2 * g.r, 0);
  const double phi = params.phi();
  for (std::uint64_t k_b = 0; k_b <= g.max_k_b(); ++k_b) {
    ++out.scalings;
    if (classify_size(log_size, k_b, g, phi) == SizeClass::kNeither) ++out.neither;
    bool stable = true;
    for (std::uint64_t j = 1; j <= 2 * g.r; ++j) {
      if (in_stability_window(log_size, params.log_alpha, k_b, g, j)) {
        ++out.unstable_per_j[j - 1];
        stable = false;
      }
    }
    if (!stable) ++out.unstable;
  }
  return out;
}

double neither_count_bound(const AnalysisParams& params, const BucketGeometry& g) {
  return 2.0 * params.phi() * g.log_rho + 2.0;
}

std::uint64_t stability_count_bound(const AnalysisParams& params) {
  return static_cast<std::uint64_t>(std::ceil(params.log_alpha + 2.0));
}

std::uint64_t stability_window_capacity(const AnalysisParams& params) {
  return static_cast<std::uint64_t>(std::floor(2.0 * params.log_alpha)) + 1;
}

}  // namespace condtest
