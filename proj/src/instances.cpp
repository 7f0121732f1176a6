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

#include "condtest/instances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "condtest/random.hpp"

namespace condtest {
namespace {

// Stream indices for derive_seed(instance seed, .).
constexpr std::uint64_t kParamStream = 0;
constexpr std::uint64_t kRelabelStream = 1;
constexpr std::uint64_t kRelabelStream2 = 2;

double log2n(std::uint64_t n) { return std::log2(static_cast<double>(n)); }

// sum_{i=1}^{2r} rho^i <= limit, without overflowing.
bool geometric_fits(double rho, std::uint64_t r, double limit) {
  double term = 1.0;
  double total = 0.0;
  for (std::uint64_t i = 1; i <= 2 * r; ++i) {
    term *= rho;
    total += term;
    if (total > limit) return false;
  }
  return true;
}

// rho >= 1 with sum_{i=1}^{2r} rho^i = target (target >= 2r).
double solve_rho(std::uint64_t r, double target) {
  double lo = 1.0;
  double hi = 2.0;
  while (geometric_fits(hi, r, target)) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (geometric_fits(mid, r, target) ? lo : hi) = mid;
  }
  return lo;
}

std::shared_ptr<const PiecewiseDistribution> bucket_distribution(
    std::uint64_t n, const std::vector<std::uint64_t>& sizes, const std::vector<Rational>& bucket_mass,
    const std::shared_ptr<const Relabel>& relabel) {
  std::vector<Piece> pieces;
  pieces.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    pieces.push_back(Piece{sizes[i], bucket_mass[i] / Rational(BigInt(sizes[i]))});
  }
  return std::make_shared<const PiecewiseDistribution>(n, std::move(pieces), Rational(0), relabel);
}

bool same_labels(const PiecewiseDistribution& a, const PiecewiseDistribution& b) {
  const auto& ra = a.relabel();
  const auto& rb = b.relabel();
  if (ra == rb) return true;
  return ra && rb && ra->seed() == rb->seed();
}

// Both distributions share the index -> id map: walk the merged piece boundaries.
Rational tv_same_labels(const PiecewiseDistribution& d1, const PiecewiseDistribution& d2) {
  std::vector<std::uint64_t> cuts{0, d1.n()};
  for (std::size_t j = 0; j <= d1.pieces().size(); ++j) cuts.push_back(d1.piece_begin(j));
  for (std::size_t j = 0; j <= d2.pieces().size(); ++j) cuts.push_back(d2.piece_begin(j));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const Rational zero(0);
  Rational total(0);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const std::uint64_t begin = cuts[k];
    const std::uint64_t len = cuts[k + 1] - begin;
    const std::size_t j1 = d1.piece_of_index(begin);
    const std::size_t j2 = d2.piece_of_index(begin);
    const Rational& m1 = j1 < d1.pieces().size() ? d1.pieces()[j1].mass : zero;
    const Rational& m2 = j2 < d2.pieces().size() ? d2.pieces()[j2].mass : zero;
    if (m1 != m2) total += abs(m1 - m2) * Rational(BigInt(len));
  }
  return total / 2;
}

// Different relabels: group ids by their (piece in d1, piece in d2) pair.
Rational tv_mixed_labels(const PiecewiseDistribution& d1, const PiecewiseDistribution& d2) {
  const std::size_t tail1 = d1.pieces().size();
  const std::size_t tail2 = d2.pieces().size();
  std::unordered_map<std::uint64_t, std::uint64_t> groups;
  auto key = [&](std::size_t j1, std::size_t j2) {
    return static_cast<std::uint64_t>(j1) * (tail2 + 1) + j2;
  };
  for (std::uint64_t i = 0; i < d1.covered(); ++i) {
    ++groups[key(d1.piece_of_index(i), d2.piece_of(d1.id_at(i)))];
  }
  // Ids covered by d2 that fall in d1's tail.
  for (std::uint64_t i = 0; i < d2.covered(); ++i) {
    if (d1.piece_of(d2.id_at(i)) == tail1) ++groups[key(tail1, d2.piece_of_index(i))];
  }
  const Rational zero(0);
  Rational total(0);
  for (const auto& [k, count] : groups) {
    const std::size_t j1 = k / (tail2 + 1);
    const std::size_t j2 = k % (tail2 + 1);
    const Rational& m1 = j1 < tail1 ? d1.pieces()[j1].mass : zero;
    const Rational& m2 = j2 < tail2 ? d2.pieces()[j2].mass : zero;
    if (m1 != m2) total += abs(m1 - m2) * Rational(BigInt(count));
  }
  return total / 2;
}

}  // namespace

std::uint64_t integer_fourth_root(std::uint64_t n) {
  auto x = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(n), 0.25)));
  auto pow4 = [](unsigned __int128 v) { return v * v * v * v; };
  while (x > 0 && pow4(x) > n) --x;
  while (pow4(x + 1) <= n) ++x;
  return x;
}

std::vector<std::uint64_t> equivalence_bucket_sizes(std::uint64_t b, std::uint64_t quarter,
                                                    double rho, std::uint64_t r) {
  const std::uint64_t m = b * quarter;
  std::vector<std::uint64_t> sizes;
  std::uint64_t used = 0;
  double scale = static_cast<double>(b);
  for (std::uint64_t i = 1; i < 2 * r; ++i) {
    scale *= rho;
    const auto size = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(scale)));
    if (used + size >= m) return {};
    sizes.push_back(size);
    used += size;
  }
  sizes.push_back(m - used);
  return sizes;
}

EquivalenceInstance rebuild_equivalence_instance(std::uint64_t n, InstanceKind kind,
                                                 std::uint64_t k_b, double rho,
                                                 double rho_requested, std::uint64_t r,
                                                 std::vector<int> pair_flips, std::uint64_t seed,
                                                 std::uint64_t relabel_seed) {
  EquivalenceInstance inst;
  inst.n = n;
  inst.kind = kind;
  inst.k_b = k_b;
  inst.b = std::uint64_t{1} << k_b;
  inst.quarter = integer_fourth_root(n);
  inst.m = inst.b * inst.quarter;
  inst.rho = rho;
  inst.rho_requested = rho_requested;
  inst.r = r;
  inst.seed = seed;
  inst.relabel_seed = relabel_seed;
  if (pair_flips.size() != r) throw std::invalid_argument("need one flip per bucket pair");
  inst.pair_flips = std::move(pair_flips);
  if (inst.m > n) throw std::invalid_argument("effective support exceeds n");
  inst.bucket_sizes = equivalence_bucket_sizes(inst.b, inst.quarter, rho, r);
  if (inst.bucket_sizes.empty()) throw std::invalid_argument("buckets do not fit in m");

  const auto relabel = std::make_shared<const Relabel>(n, relabel_seed);
  const Rational even(BigInt(1), BigInt(2 * r));
  const Rational low(BigInt(1), BigInt(4 * r));
  const Rational high(BigInt(3), BigInt(4 * r));
  std::vector<Rational> m1(2 * r, even);
  inst.d1 = bucket_distribution(n, inst.bucket_sizes, m1, relabel);
  if (kind == InstanceKind::kYes) {
    inst.d2 = inst.d1;
    return inst;
  }
  std::vector<Rational> m2(2 * r);
  for (std::uint64_t i = 0; i < r; ++i) {
    m2[2 * i] = inst.pair_flips[i] == 0 ? low : high;
    m2[2 * i + 1] = inst.pair_flips[i] == 0 ? high : low;
  }
  inst.d2 = bucket_distribution(n, inst.bucket_sizes, m2, relabel);
  return inst;
}

EquivalenceInstance gen_equivalence_instance(std::uint64_t n, InstanceKind kind,
                                             std::uint64_t seed, std::optional<double> rho) {
  if (n < (std::uint64_t{1} << 16)) throw std::invalid_argument("equivalence instances need n >= 2^16");
  const double log_n = log2n(n);
  const double rho_requested = rho.value_or(std::exp2(std::sqrt(log_n)));
  if (!(rho_requested > 1.0)) throw std::invalid_argument("rho must exceed 1");
  const std::uint64_t quarter = integer_fourth_root(n);
  const auto q = static_cast<double>(quarter);

  auto r = static_cast<std::uint64_t>(std::floor(log_n / (8.0 * std::log2(rho_requested))));
  while (r > 2 && !geometric_fits(rho_requested, r, q)) --r;
  r = std::max<std::uint64_t>(r, 2);
  // With r forced up to 2 the requested ratio can overshoot n^(1/4); shrink
  // it so the buckets fill the effective support exactly.
  const double rho_used = geometric_fits(rho_requested, r, q) ? rho_requested : solve_rho(r, q);

  Rng rng(derive_seed(seed, kParamStream));
  const auto half_log = static_cast<std::uint64_t>(std::floor(log_n / 2.0));
  const std::uint64_t k_b = uniform_below(rng, half_log + 1);
  std::vector<int> flips(r, 0);
  if (kind == InstanceKind::kNo) {
    for (auto& f : flips) f = static_cast<int>(uniform_below(rng, 2));
  }
  return rebuild_equivalence_instance(n, kind, k_b, rho_used, rho_requested, r, std::move(flips),
                                      seed, derive_seed(seed, kRelabelStream));
}

std::uint64_t support_grid_max(std::uint64_t n, double beta) {
  return static_cast<std::uint64_t>(std::floor(log2n(n) / (2.0 * std::log2(beta))));
}

std::uint64_t support_grid_size(std::uint64_t n, double beta, std::uint64_t k) {
  const double s = std::pow(beta, static_cast<double>(k)) * static_cast<double>(integer_fourth_root(n));
  return static_cast<std::uint64_t>(std::llround(s));
}

SupportPairInstance rebuild_support_pair(std::uint64_t n, double gamma, InstanceKind kind,
                                         std::uint64_t grid_index, std::uint64_t seed,
                                         std::uint64_t relabel_seed1,
                                         std::uint64_t relabel_seed2) {
  if (!(gamma >= std::sqrt(2.0))) throw std::invalid_argument("gamma must be >= sqrt(2)");
  if (integer_fourth_root(n) < 2) throw std::invalid_argument("support pairs need n^(1/4) >= 2");
  SupportPairInstance inst;
  inst.n = n;
  inst.kind = kind;
  inst.gamma = gamma;
  inst.beta = gamma * gamma;
  inst.grid_max = support_grid_max(n, inst.beta);
  if (grid_index > inst.grid_max) throw std::invalid_argument("grid index out of range");
  inst.grid_index = grid_index;
  inst.seed = seed;
  inst.relabel_seed1 = relabel_seed1;
  inst.relabel_seed2 = relabel_seed2;
  inst.s = support_grid_size(n, inst.beta, grid_index);
  inst.s2 = kind == InstanceKind::kYes
                ? inst.s
                : static_cast<std::uint64_t>(std::llround(inst.beta * static_cast<double>(inst.s)));
  if (inst.s2 > n) throw std::invalid_argument("second support exceeds n");
  // A random k-subset is the first k entries of a seeded random permutation.
  inst.d1 = std::make_shared<const PiecewiseDistribution>(
      PiecewiseDistribution::uniform_prefix(n, inst.s, relabel_seed1));
  inst.d2 = kind == InstanceKind::kYes
                ? inst.d1
                : std::make_shared<const PiecewiseDistribution>(
                      PiecewiseDistribution::uniform_prefix(n, inst.s2, relabel_seed2));
  return inst;
}

SupportPairInstance gen_support_pair(std::uint64_t n, double gamma, InstanceKind kind,
                                     std::uint64_t seed) {
  if (!(gamma >= std::sqrt(2.0))) throw std::invalid_argument("gamma must be >= sqrt(2)");
  Rng rng(derive_seed(seed, kParamStream));
  const std::uint64_t k = uniform_below(rng, support_grid_max(n, gamma * gamma) + 1);
  return rebuild_support_pair(n, gamma, kind, k, seed, derive_seed(seed, kRelabelStream),
                              derive_seed(seed, kRelabelStream2));
}

Rational tv_distance(const PiecewiseDistribution& d1, const PiecewiseDistribution& d2) {
  if (d1.n() != d2.n()) throw std::invalid_argument("tv_distance needs equal domain sizes");
  return same_labels(d1, d2) ? tv_same_labels(d1, d2) : tv_mixed_labels(d1, d2);
}

}  // namespace condtest
