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

#ifndef CONDTEST_ORACLE_HPP_
#define CONDTEST_ORACLE_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "condtest/distribution.hpp"
#include "condtest/query_set.hpp"
#include "condtest/random.hpp"

namespace condtest {

// Identifies a query set in a transcript without storing its contents.
// `size` is |S| for explicit sets and n for the full domain; implicit sets
// record their seed in `fingerprint` and leave `size` at 0.
struct QueryDescriptor {
  QueryKind kind = QueryKind::kExplicit;
  std::uint64_t size = 0;
  std::uint64_t fingerprint = 0;
  double inclusion_probability = 0.0;

  friend bool operator==(const QueryDescriptor&, const QueryDescriptor&) = default;
};

QueryDescriptor describe(const QuerySet& s, std::uint64_t n);

struct TranscriptEntry {
  int source = 0;  // which oracle answered (0 or 1)
  QueryDescriptor query;
  ElementId sample = 0;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

using Transcript = std::vector<TranscriptEntry>;

// Interleaves the logs of two recording oracles by source (first, then second).
Transcript merge_transcripts(const Transcript& first, const Transcript& second);

// Conditional sampling oracle bound to one distribution.
//
// Every answered sample counts as one query. If D(S) = 0 the answer is uniform
// on S. A single-threaded handle: run independent oracles for parallel work.
class CondOracle {
 public:
  CondOracle(std::shared_ptr<const PiecewiseDistribution> distribution, std::uint64_t seed,
             bool record_transcript = false, int source = 0);

  std::uint64_t domain_size() const { return dist_->n(); }
  const PiecewiseDistribution& distribution() const { return *dist_; }
  std::shared_ptr<const PiecewiseDistribution> shared_distribution() const { return dist_; }

  std::uint64_t query_count() const { return queries_; }
  std::uint64_t seed() const { return seed_; }
  const Transcript& transcript() const { return log_; }
  bool recording() const { return record_; }

  // Throws std::invalid_argument for implicit sets (use the mutable overload).
  ElementId sample(const QuerySet& s);
  // Implicit sets are marked consumed; a consumed set throws.
  ElementId sample(QuerySet& s);

  // `count` independent samples from D_S (explicit or full domain).
  std::vector<ElementId> sample_many(const QuerySet& s, std::size_t count);

  // Draws `draws` samples from D_universe and returns how many land in
  // `target`, a subset of `universe`. Counts `draws` queries. Unless the
  // transcript is being recorded, the count is drawn as a single binomial.
  std::uint64_t count_hits(const QuerySet& universe, const QuerySet& target,
                           std::uint64_t draws);

  // count_hits for universe {target, other} and target {target}, without
  // building the sets. Same distribution and stream use as count_hits.
  std::uint64_t count_pair_hits(ElementId target, ElementId other, std::uint64_t draws);

 private:
  ElementId sample_explicit(const QuerySet& s);
  ElementId sample_full();
  ElementId sample_implicit(const QuerySet& s);
  ElementId uniform_in_piece(std::size_t j);
  ElementId uniform_in_zero_region();
  std::uint64_t binomial(std::uint64_t draws, double p);
  void build_binomial_table(std::uint64_t draws, double p);
  static constexpr std::uint64_t kMaxTableDraws = 1u << 16;
  double any_hit(std::uint64_t count, double p);
  void log(const QuerySet& s, ElementId id);

  std::shared_ptr<const PiecewiseDistribution> dist_;
  std::uint64_t seed_;
  Rng rng_;
  std::uint64_t queries_ = 0;
  bool record_;
  int source_;
  Transcript log_;

  // Single-entry caches; repeated parameters are the common case in the
  // estimator's inner loops.
  std::binomial_distribution<std::uint64_t> binomial_{1, 0.5};
  // Inverse-CDF table for a (draws, p) pair that keeps recurring.
  struct BinomialTable {
    std::uint64_t draws = 0;
    double p = -1.0;
    std::uint64_t offset = 0;  // value of cdf[0]
    std::vector<double> cdf;
  } table_;
  struct HitCache {
    std::uint64_t count = 0;
    double p = -1.0;
    double value = 0.0;
  } hit_cache_[2];
};

}  // namespace condtest

#endif  // CONDTEST_ORACLE_HPP_
