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

#include "condtest/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace condtest {
namespace {

// FNV-1a over the id list.
std::uint64_t fingerprint(std::span<const ElementId> ids) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (ElementId id : ids) {
    for (int b = 0; b < 4; ++b) {
      h ^= (id >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

// P(Binomial(count, p) > 0).
double any_hit_probability(std::uint64_t count, double p) {
  if (count == 0) return 0.0;
  if (p >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(count) * std::log1p(-p));
}

void require_in_domain(const QuerySet& s, std::uint64_t n) {
  if (s.kind() == QueryKind::kExplicit && s.ids().back() > n) {
    throw std::out_of_range("query set contains ids outside [1, n]");
  }
}

}  // namespace

QueryDescriptor describe(const QuerySet& s, std::uint64_t n) {
  QueryDescriptor d;
  d.kind = s.kind();
  switch (s.kind()) {
    case QueryKind::kExplicit:
      d.size = s.size();
      d.fingerprint = fingerprint(s.ids());
      break;
    case QueryKind::kFullDomain:
      d.size = n;
      break;
    case QueryKind::kBernoulliImplicit:
      d.fingerprint = s.seed();
      d.inclusion_probability = s.inclusion_probability();
      break;
  }
  return d;
}

Transcript merge_transcripts(const Transcript& first, const Transcript& second) {
  Transcript out;
  out.reserve(first.size() + second.size());
  for (TranscriptEntry e : first) {
    e.source = 0;
    out.push_back(e);
  }
  for (TranscriptEntry e : second) {
    e.source = 1;
    out.push_back(e);
  }
  return out;
}

CondOracle::CondOracle(std::shared_ptr<const PiecewiseDistribution> distribution,
                       std::uint64_t seed, bool record_transcript, int source)
    : dist_(std::move(distribution)), seed_(seed), rng_(seed), record_(record_transcript),
      source_(source) {
  if (!dist_) throw std::invalid_argument("oracle needs a distribution");
}

ElementId CondOracle::sample(const QuerySet& s) {
  if (s.kind() == QueryKind::kBernoulliImplicit) {
    throw std::invalid_argument("implicit query sets are single-use; pass them mutably");
  }
  require_in_domain(s, dist_->n());
  ++queries_;
  const ElementId id = s.kind() == QueryKind::kExplicit ? sample_explicit(s) : sample_full();
  log(s, id);
  return id;
}

ElementId CondOracle::sample(QuerySet& s) {
  if (s.kind() != QueryKind::kBernoulliImplicit) {
    return sample(static_cast<const QuerySet&>(s));
  }
  if (s.consumed()) throw std::logic_error("implicit query set was already sampled");
  s.mark_consumed();
  ++queries_;
  const ElementId id = sample_implicit(s);
  log(s, id);
  return id;
}

std::vector<ElementId> CondOracle::sample_many(const QuerySet& s, std::size_t count) {
  if (s.kind() == QueryKind::kBernoulliImplicit) {
    throw std::invalid_argument("implicit query sets are single-use");
  }
  require_in_domain(s, dist_->n());
  std::vector<ElementId> out;
  out.reserve(count);
  if (s.kind() == QueryKind::kFullDomain) {
    for (std::size_t i = 0; i < count; ++i) {
      ++queries_;
      out.push_back(sample_full());
      log(s, out.back());
    }
    return out;
  }
  const auto ids = s.ids();
  std::vector<double> cumulative(ids.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    acc += dist_->mass_double(ids[i]);
    cumulative[i] = acc;
  }
  for (std::size_t k = 0; k < count; ++k) {
    ++queries_;
    std::size_t pick;
    if (acc > 0.0) {
      const double u = uniform01(rng_) * acc;
      pick = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      pick = std::min(pick, ids.size() - 1);
      // Skip zero-width entries that upper_bound can land on only through rounding.
      while (pick > 0 && cumulative[pick] == cumulative[pick - 1]) --pick;
    } else {
      pick = uniform_below(rng_, ids.size());
    }
    out.push_back(ids[pick]);
    log(s, out.back());
  }
  return out;
}

std::uint64_t CondOracle::count_hits(const QuerySet& universe, const QuerySet& target,
                                     std::uint64_t draws) {
  if (universe.kind() != QueryKind::kExplicit || target.kind() != QueryKind::kExplicit) {
    throw UnsupportedRepresentation("count_hits needs explicit sets");
  }
  require_in_domain(universe, dist_->n());
  double w_target = 0.0;
  for (ElementId id : target.ids()) {
    if (!universe.contains(id)) throw std::invalid_argument("target is not a subset of universe");
    w_target += dist_->mass_double(id);
  }
  if (record_) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < draws; ++i) {
      if (target.contains(sample(universe))) ++hits;
    }
    return hits;
  }
  double w_universe = 0.0;
  for (ElementId id : universe.ids()) w_universe += dist_->mass_double(id);
  const double p = w_universe > 0.0
                       ? w_target / w_universe
                       : static_cast<double>(target.size()) / static_cast<double>(universe.size());
  queries_ += draws;
  return binomial(draws, p);
}

std::uint64_t CondOracle::count_pair_hits(ElementId target, ElementId other, std::uint64_t draws) {
  if (target == other) throw std::invalid_argument("query sets overlap");
  if (record_) {
    return count_hits(QuerySet::of({target, other}), QuerySet::of({target}), draws);
  }
  const double w_target = dist_->mass_double(target);
  const double w_other = dist_->mass_double(other);
  const double w = w_target + w_other;
  queries_ += draws;
  return binomial(draws, w > 0.0 ? w_target / w : 0.5);
}

std::uint64_t CondOracle::binomial(std::uint64_t draws, double p) {
  if (p <= 0.0 || draws == 0) return 0;
  if (p >= 1.0) return draws;
  if (table_.draws == draws && table_.p == p) {
    const double u = uniform01(rng_) * table_.cdf.back();
    const auto it = std::upper_bound(table_.cdf.begin(), table_.cdf.end(), u);
    const auto k = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
        it - table_.cdf.begin(), static_cast<std::ptrdiff_t>(table_.cdf.size()) - 1));
    return table_.offset + k;
  }
  if (binomial_.t() == draws && binomial_.p() == p && draws <= kMaxTableDraws) {
    // Second request in a row for the same pair: tabulate it.
    build_binomial_table(draws, p);
    return binomial(draws, p);
  }
  if (binomial_.t() != draws || binomial_.p() != p) {
    binomial_ = std::binomial_distribution<std::uint64_t>(draws, p);
  }
  return binomial_(rng_);
}

void CondOracle::build_binomial_table(std::uint64_t draws, double p) {
  // pmf in log space around the mode, cut where it drops below 2^-70 of it.
  const double t = static_cast<double>(draws);
  const auto log_pmf = [&](double k) {
    return std::lgamma(t + 1.0) - std::lgamma(k + 1.0) - std::lgamma(t - k + 1.0) +
           k * std::log(p) + (t - k) * std::log1p(-p);
  };
  const double mode = std::floor((t + 1.0) * p);
  const double peak = log_pmf(std::min(mode, t));
  const double cut = peak - 70.0 * std::log(2.0);
  std::uint64_t lo = static_cast<std::uint64_t>(std::min(mode, t));
  std::uint64_t hi = lo;
  while (lo > 0 && log_pmf(static_cast<double>(lo - 1)) > cut) --lo;
  while (hi < draws && log_pmf(static_cast<double>(hi + 1)) > cut) ++hi;
  table_.draws = draws;
  table_.p = p;
  table_.offset = lo;
  table_.cdf.clear();
  double acc = 0.0;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    acc += std::exp(log_pmf(static_cast<double>(k)) - peak);
    table_.cdf.push_back(acc);
  }
}

double CondOracle::any_hit(std::uint64_t count, double p) {
  for (HitCache& c : hit_cache_) {
    if (c.count == count && c.p == p) return c.value;
  }
  hit_cache_[1] = hit_cache_[0];
  hit_cache_[0] = HitCache{count, p, any_hit_probability(count, p)};
  return hit_cache_[0].value;
}

ElementId CondOracle::sample_explicit(const QuerySet& s) {
  const auto ids = s.ids();
  double total = 0.0;
  for (ElementId id : ids) total += dist_->mass_double(id);
  if (total > 0.0) {
    const double u = uniform01(rng_) * total;
    double acc = 0.0;
    ElementId last_positive = ids.front();
    for (ElementId id : ids) {
      const double m = dist_->mass_double(id);
      if (m <= 0.0) continue;
      acc += m;
      last_positive = id;
      if (u < acc) return id;
    }
    return last_positive;
  }
  return ids[uniform_below(rng_, ids.size())];
}

ElementId CondOracle::sample_full() {
  const auto& cumulative = dist_->cumulative_weights();
  const double u = uniform01(rng_) * cumulative.back();
  auto j = static_cast<std::size_t>(
      std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
  j = std::min(j, cumulative.size() - 1);
  while (dist_->pieces()[j].mass == 0 && j > 0) --j;
  return uniform_in_piece(j);
}

ElementId CondOracle::sample_implicit(const QuerySet& s) {
  const double p = s.inclusion_probability();
  const auto& positive = dist_->positive_pieces();
  std::vector<double> weights;
  for (std::uint64_t attempt = 0;; ++attempt) {
    // The realized set depends only on the set's own seed; the choice of an
    // element within it uses the oracle's stream.
    SplitMix64 realize(derive_seed(s.seed(), attempt));
    if (positive.size() == 1) {
      const std::size_t j = positive.front();
      if (uniform01(realize) < any_hit(dist_->pieces()[j].count, p)) {
        return uniform_in_piece(j);
      }
    } else if (!positive.empty()) {
      weights.assign(positive.size(), 0.0);
      double total = 0.0;
      for (std::size_t k = 0; k < positive.size(); ++k) {
        const std::size_t j = positive[k];
        std::binomial_distribution<std::uint64_t> hits(dist_->pieces()[j].count, p);
        weights[k] = static_cast<double>(hits(realize)) * dist_->piece_mass_double(j);
        total += weights[k];
      }
      if (total > 0.0) {
        double u = uniform01(rng_) * total;
        std::size_t k = 0;
        for (; k + 1 < positive.size(); ++k) {
          if (u < weights[k]) break;
          u -= weights[k];
        }
        while (weights[k] == 0.0) --k;
        return uniform_in_piece(positive[k]);
      }
    }
    if (uniform01(realize) < any_hit(dist_->zero_mass_count(), p)) {
      return uniform_in_zero_region();
    }
    // The realized set was empty: redraw it, at the cost of one more call.
    ++queries_;
  }
}

ElementId CondOracle::uniform_in_piece(std::size_t j) {
  const std::uint64_t offset = uniform_below(rng_, dist_->pieces()[j].count);
  return dist_->id_at(dist_->piece_begin(j) + offset);
}

ElementId CondOracle::uniform_in_zero_region() {
  const std::uint64_t k = uniform_below(rng_, dist_->zero_mass_count());
  return dist_->id_at(dist_->zero_region_index(k));
}

void CondOracle::log(const QuerySet& s, ElementId id) {
  if (!record_) return;
  log_.push_back(TranscriptEntry{source_, describe(s, dist_->n()), id});
}

}  // namespace condtest
