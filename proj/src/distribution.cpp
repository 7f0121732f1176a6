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

#include "condtest/distribution.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "condtest/random.hpp"

namespace condtest {

std::int64_t numerator_i64(const Rational& q) {
  const BigInt& v = boost::multiprecision::numerator(q);
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational numerator does not fit in int64: " + q.str());
  }
  return v.convert_to<std::int64_t>();
}

std::int64_t denominator_i64(const Rational& q) {
  const BigInt& v = boost::multiprecision::denominator(q);
  if (v > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("rational denominator does not fit in int64: " + q.str());
  }
  return v.convert_to<std::int64_t>();
}

Relabel::Relabel(std::uint64_t n, std::uint64_t seed) : n_(n), seed_(seed) {
  if (n == 0 || n > std::numeric_limits<ElementId>::max()) {
    throw std::invalid_argument("relabel size out of range");
  }
}

void Relabel::materialize() const {
  if (ready_.load(std::memory_order_acquire)) return;
  std::call_once(built_, [this] {
    forward_.resize(n_);
    for (std::uint64_t i = 0; i < n_; ++i) forward_[i] = static_cast<ElementId>(i + 1);
    Rng rng(seed_);
    for (std::uint64_t i = n_ - 1; i > 0; --i) {
      std::uint64_t j = uniform_below(rng, i + 1);
      std::swap(forward_[i], forward_[j]);
    }
    inverse_.resize(n_);
    for (std::uint64_t i = 0; i < n_; ++i) inverse_[forward_[i] - 1] = static_cast<ElementId>(i);
    ready_.store(true, std::memory_order_release);
  });
}

ElementId Relabel::id_at(std::uint64_t index) const {
  materialize();
  return forward_[index];
}

std::uint64_t Relabel::index_of(ElementId id) const {
  materialize();
  return inverse_[id - 1];
}

std::span<const ElementId> Relabel::forward() const {
  materialize();
  return forward_;
}

PiecewiseDistribution::PiecewiseDistribution(std::uint64_t n, std::vector<Piece> pieces,
                                             Rational min_mass_fraction,
                                             std::optional<std::uint64_t> relabel_seed)
    : PiecewiseDistribution(
          n, std::move(pieces), std::move(min_mass_fraction),
          relabel_seed ? std::make_shared<const Relabel>(n, *relabel_seed) : nullptr) {}

PiecewiseDistribution::PiecewiseDistribution(std::uint64_t n, std::vector<Piece> pieces,
                                             Rational min_mass_fraction,
                                             std::shared_ptr<const Relabel> relabel)
    : n_(n), pieces_(std::move(pieces)), tau_(std::move(min_mass_fraction)),
      relabel_(std::move(relabel)) {
  validate_and_index();
}

PiecewiseDistribution PiecewiseDistribution::uniform(std::uint64_t n) {
  return uniform_prefix(n, n);
}

PiecewiseDistribution PiecewiseDistribution::uniform_prefix(
    std::uint64_t n, std::uint64_t support, std::optional<std::uint64_t> relabel_seed) {
  if (support == 0) throw std::invalid_argument("support must be positive");
  Rational mass(BigInt(1), BigInt(support));
  // Every element has mass n/support * (1/n), so tau = n / support.
  const Rational tau{BigInt(n), BigInt(support)};
  return PiecewiseDistribution(n, {Piece{support, mass}}, tau, relabel_seed);
}

void PiecewiseDistribution::validate_and_index() {
  if (n_ == 0 || n_ > std::numeric_limits<ElementId>::max()) {
    throw std::invalid_argument("domain size must be in [1, 2^32 - 1]");
  }
  if (relabel_ && relabel_->size() != n_) {
    throw std::invalid_argument("relabel size does not match domain size");
  }
  if (tau_ < 0) throw std::invalid_argument("min mass fraction must be nonnegative");

  prefix_.assign(1, 0);
  Rational total(0);
  const Rational floor_mass = tau_ / Rational(BigInt(n_));
  for (const Piece& p : pieces_) {
    if (p.count == 0) throw std::invalid_argument("piece count must be positive");
    if (p.mass < 0) throw std::invalid_argument("piece mass must be nonnegative");
    if (p.mass > 0 && tau_ > 0 && p.mass < floor_mass) {
      throw std::invalid_argument("piece mass " + p.mass.str() +
                                  " below declared minimum tau/n = " + floor_mass.str());
    }
    if (prefix_.back() + p.count > n_) {
      throw std::invalid_argument("piece counts exceed domain size");
    }
    prefix_.push_back(prefix_.back() + p.count);
    total += p.mass * Rational(BigInt(p.count));
  }
  if (total != 1) {
    throw std::invalid_argument("piece masses sum to " + total.str() + ", expected 1");
  }

  mass_double_.clear();
  cumulative_.clear();
  positive_.clear();
  zero_ranges_.clear();
  double acc = 0.0;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    const double m = to_double(pieces_[j].mass);
    mass_double_.push_back(m);
    acc += m * static_cast<double>(pieces_[j].count);
    cumulative_.push_back(acc);
    if (pieces_[j].mass > 0) {
      positive_.push_back(j);
    } else {
      zero_ranges_.emplace_back(prefix_[j], pieces_[j].count);
    }
  }
  if (covered() < n_) zero_ranges_.emplace_back(covered(), n_ - covered());
  zero_prefix_.assign(1, 0);
  for (const auto& [begin, count] : zero_ranges_) zero_prefix_.push_back(zero_prefix_.back() + count);
  zero_total_ = zero_prefix_.back();
}

std::optional<std::uint64_t> PiecewiseDistribution::relabel_seed() const {
  if (!relabel_) return std::nullopt;
  return relabel_->seed();
}

std::size_t PiecewiseDistribution::piece_of_index(std::uint64_t index) const {
  auto it = std::upper_bound(prefix_.begin(), prefix_.end(), index);
  return static_cast<std::size_t>(it - prefix_.begin()) - 1;
}

ElementId PiecewiseDistribution::id_at(std::uint64_t index) const {
  return relabel_ ? relabel_->id_at(index) : static_cast<ElementId>(index + 1);
}

std::uint64_t PiecewiseDistribution::index_of(ElementId id) const {
  if (id < 1 || id > n_) throw std::out_of_range("element id " + std::to_string(id) + " outside [1, n]");
  return relabel_ ? relabel_->index_of(id) : id - 1;
}

const Rational& PiecewiseDistribution::mass(ElementId id) const {
  const std::size_t j = piece_of(id);
  return j < pieces_.size() ? pieces_[j].mass : zero_;
}

double PiecewiseDistribution::mass_double(ElementId id) const {
  return piece_mass_double(piece_of(id));
}

double PiecewiseDistribution::piece_mass_double(std::size_t j) const {
  return j < mass_double_.size() ? mass_double_[j] : 0.0;
}

std::uint64_t PiecewiseDistribution::zero_region_index(std::uint64_t k) const {
  auto it = std::upper_bound(zero_prefix_.begin(), zero_prefix_.end(), k);
  const auto r = static_cast<std::size_t>(it - zero_prefix_.begin()) - 1;
  return zero_ranges_[r].first + (k - zero_prefix_[r]);
}

std::uint64_t support_size(const PiecewiseDistribution& d) {
  std::uint64_t total = 0;
  for (const Piece& p : d.pieces()) {
    if (p.mass > 0) total += p.count;
  }
  return total;
}

bool satisfies_min_mass(const PiecewiseDistribution& d, const Rational& tau) {
  const Rational floor_mass = tau / Rational(BigInt(d.n()));
  return std::none_of(d.pieces().begin(), d.pieces().end(),
                      [&](const Piece& p) { return p.mass > 0 && p.mass < floor_mass; });
}

LightSet light_set_size(const PiecewiseDistribution& d, const Rational& tau) {
  if (tau <= 0) throw std::invalid_argument("tau must be positive");
  const Rational n(BigInt(d.n()));
  const Rational lo = tau / n;
  const Rational hi = Rational(2) / n;
  LightSet out;
  out.mass = 0;
  for (const Piece& p : d.pieces()) {
    if (p.mass >= lo && p.mass <= hi) {
      out.cardinality += p.count;
      out.mass += p.mass * Rational(BigInt(p.count));
    }
  }
  return out;
}

}  // namespace condtest
