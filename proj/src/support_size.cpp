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

#include "condtest/support_size.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace condtest {
namespace {

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must be in (0, 1/2)");
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must be in (0, 1)");
}

ElementId uniform_element(std::uint64_t n, Rng& coins) {
  return static_cast<ElementId>(uniform_below(coins, n) + 1);
}

// Index of a minimal element under the recorded pairwise order: the element
// with the fewest others recorded below it (first such on ties). Equal ids
// are recorded as a <= b without a Compare call.
std::size_t lightest(CondOracle& oracle, const std::vector<ElementId>& items,
                     const CompareParams& params, double constant) {
  std::vector<std::uint64_t> below(items.size(), 0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      bool i_first = true;
      if (items[i] != items[j]) {
        const CompareResult r =
            compare(oracle, QuerySet::of({items[i]}), QuerySet::of({items[j]}), params, constant);
        i_first = !is_low(r);
      }
      ++below[i_first ? j : i];
    }
  }
  return static_cast<std::size_t>(std::min_element(below.begin(), below.end()) - below.begin());
}

template <typename Round>
bool majority(std::uint64_t repetitions, Round&& round) {
  std::uint64_t wins = 0;
  for (std::uint64_t i = 0; i < repetitions; ++i) {
    if (round()) ++wins;
  }
  return 2 * wins > repetitions;
}

}  // namespace

std::uint64_t majority_repetitions(double delta, double constant) {
  require_delta(delta);
  auto reps = static_cast<std::uint64_t>(std::ceil(constant * std::log(1.0 / delta)));
  reps = std::max<std::uint64_t>(reps, 1);
  return reps % 2 == 0 ? reps + 1 : reps;
}

Verdict test_small_support(CondOracle& oracle, double eps, double tau, double delta, Rng& coins,
                           const EstimatorConstants& constants) {
  require_eps(eps);
  require_delta(delta);
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  if (tau >= 2.0) return Verdict::kReject;  // supp(D) <= n/2 already

  const std::uint64_t n = oracle.domain_size();
  const auto m = static_cast<std::uint64_t>(std::ceil(constants.uniform_samples / (eps * eps)));
  const auto k = static_cast<std::uint64_t>(std::ceil(constants.light_samples / tau));
  const CompareParams order_params{0.5, 2.0, 1.0 / (4.0 * static_cast<double>(k * k))};
  const CompareParams mark_params{0.5, 2.0 / tau, 1.0 / (4.0 * static_cast<double>(m))};
  const double accept_at = (1.0 - 0.75 * eps) * static_cast<double>(m);

  auto round = [&] {
    std::vector<ElementId> uniform(m);
    for (auto& s : uniform) s = uniform_element(n, coins);
    std::vector<ElementId> light(k);
    const QuerySet everything = QuerySet::full_domain();
    for (auto& t : light) t = oracle.sample(everything);
    const ElementId t = light[lightest(oracle, light, order_params, constants.compare)];

    std::uint64_t marked = 0;
    for (ElementId s : uniform) {
      if (s == t) {  // t was drawn from D, so it is a support element
        ++marked;
        continue;
      }
      const CompareResult r =
          compare(oracle, QuerySet::of({t}), QuerySet::of({s}), mark_params, constants.compare);
      if (is_high(r) || (is_ratio(r) && std::get<CompareRatio>(r).value >= 0.5)) ++marked;
    }
    return static_cast<double>(marked) >= accept_at;
  };
  return majority(majority_repetitions(delta, constants.majority), round) ? Verdict::kAccept
                                                                          : Verdict::kReject;
}

std::uint64_t non_support_sample_count(std::uint64_t n, double upper_bound, double delta) {
  require_delta(delta);
  if (!(upper_bound > 0.0)) throw std::invalid_argument("support upper bound must be positive");
  if (upper_bound >= static_cast<double>(n)) {
    throw std::invalid_argument("support upper bound must be < n");
  }
  const double k = std::log2(2.0 / delta) / std::log2(static_cast<double>(n) / upper_bound);
  return static_cast<std::uint64_t>(std::ceil(k));
}

ElementId get_non_support(CondOracle& oracle, double upper_bound, double delta, Rng& coins,
                          const EstimatorConstants& constants) {
  const std::uint64_t n = oracle.domain_size();
  const std::uint64_t k = non_support_sample_count(n, upper_bound, delta);
  std::vector<ElementId> points(k);
  for (auto& s : points) s = uniform_element(n, coins);
  const CompareParams params{0.5, 2.0, delta / (2.0 * static_cast<double>(k * k))};
  return points[lightest(oracle, points, params, constants.compare)];
}

double probe_alpha(double sigma) { return std::exp(sigma * std::log1p(-1.0 / sigma)); }

double probe_gap(double sigma, double eps) {
  const double alpha = probe_alpha(sigma);
  return alpha * (std::pow(alpha, -eps / 2.0) - 1.0);
}

double miss_probability(double sigma, double omega) {
  return std::exp(omega * std::log1p(-1.0 / sigma));
}

std::uint64_t probe_rounds(double sigma, double eps, const EstimatorConstants& constants) {
  const double gap = probe_gap(sigma, eps);
  return static_cast<std::uint64_t>(std::ceil(constants.probe / (gap * gap)));
}

ProbeVerdict is_at_most_support_size(CondOracle& oracle, double sigma, ElementId reference,
                                     double eps, double delta, Rng& coins,
                                     const EstimatorConstants& constants,
                                     ProbeDiagnostics* diagnostics) {
  if (!(sigma >= 2.0)) throw std::invalid_argument("sigma must be >= 2");
  require_eps(eps);
  require_delta(delta);

  const double alpha = probe_alpha(sigma);
  const double gap = probe_gap(sigma, eps);
  const std::uint64_t rounds = probe_rounds(sigma, eps, constants);
  const CompareParams params{0.5, 1.0, 1.0 / (100.0 * static_cast<double>(rounds))};
  const double no_at = static_cast<double>(rounds) * (alpha + gap / 2.0);
  const std::uint64_t draws = compare_sample_count(params, constants.compare);

  ProbeDiagnostics local;
  ProbeDiagnostics& diag = diagnostics ? *diagnostics : local;

  // A round misses when the random set avoids the support: the drawn x then
  // has zero mass like r, and Compare answers with a ratio instead of Low.
  auto round = [&] {
    std::uint64_t misses = 0;
    for (std::uint64_t i = 0; i < rounds; ++i) {
      QuerySet s = QuerySet::bernoulli(1.0 / sigma, coins());
      const ElementId x = oracle.sample(s);
      bool miss;
      if (x == reference) {
        miss = true;  // only reachable when S has no support element
      } else {
        const CompareResult r = classify(compare_singletons(oracle, x, reference, draws), params.k);
        if (is_high(r)) ++diag.high_anomalies;
        miss = is_ratio(r);
      }
      if (miss) ++misses;
    }
    diag.rounds += rounds;
    diag.misses += misses;
    return static_cast<double>(misses) < no_at;
  };
  return majority(majority_repetitions(delta, constants.majority), round) ? ProbeVerdict::kYes
                                                                          : ProbeVerdict::kNo;
}

SupportEstimate estimate_support(CondOracle& oracle, double eps, double tau, Rng& coins,
                                 const EstimatorConstants& constants) {
  require_eps(eps);
  const std::uint64_t start = oracle.query_count();
  const double n = static_cast<double>(oracle.domain_size());

  SupportEstimate out;
  out.contract_void = !satisfies_min_mass(oracle.distribution(), Rational(tau));
  auto finish = [&](double value, EstimatePath path) {
    out.value = value;
    out.path = path;
    out.queries_used = oracle.query_count() - start;
    return out;
  };

  if (test_small_support(oracle, eps, tau, 0.1, coins, constants) == Verdict::kAccept) {
    return finish((1.0 - eps * eps) * n, EstimatePath::kDenseShortcut);
  }
  const ElementId reference = get_non_support(oracle, (1.0 - eps / 2.0) * n, 0.1, coins, constants);

  const double base = 1.0 + eps;
  const auto log_base = [&](double v) { return std::log(v) / std::log(base); };
  const auto clamp_sigma = [&](double sigma) { return std::clamp(sigma, 2.0, n); };
  const auto stages = static_cast<std::uint64_t>(std::ceil(log_base(log_base(n))));

  for (std::uint64_t j = 0; j <= stages; ++j) {
    const double jd = static_cast<double>(j);
    const double sigma = clamp_sigma(std::pow(base, std::pow(base, jd)));
    const double stage_delta = 1.0 / (100.0 * (jd + 1.0) * (jd + 1.0));
    if (is_at_most_support_size(oracle, sigma, reference, eps, stage_delta, coins, constants) ==
        ProbeVerdict::kYes) {
      continue;
    }
    // Smallest exponent i >= 2 in {ceil(base^(j-1)), ..., ceil(base^j)} whose
    // probe says No; the top of the range is covered by the stage probe.
    auto lo = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(std::pow(base, jd - 1.0))));
    auto hi = std::max(lo, static_cast<std::uint64_t>(std::ceil(std::pow(base, jd))));
    const double search_delta = 1.0 / (10.0 * (jd + 1.0));
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      const double probe = clamp_sigma(std::pow(base, static_cast<double>(mid)));
      if (is_at_most_support_size(oracle, probe, reference, eps, search_delta, coins, constants) ==
          ProbeVerdict::kNo) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    out.stage = j;
    out.exponent = lo;
    return finish(std::pow(base, static_cast<double>(lo) - 1.0), EstimatePath::kBinarySearch);
  }
  out.stage = stages;
  return finish(n, EstimatePath::kExhausted);
}

std::uint64_t collision_sample_count(std::uint64_t set_size, double eps, double delta,
                                     const EstimatorConstants& constants) {
  const double count = constants.collision * std::sqrt(static_cast<double>(set_size)) /
                       (eps * eps) * std::log2(1.0 / delta);
  return std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(count)));
}

Verdict collision_uniformity_test(CondOracle& oracle, const QuerySet& s, double eps, double delta,
                                  const EstimatorConstants& constants) {
  if (s.kind() != QueryKind::kExplicit) {
    throw UnsupportedRepresentation("uniformity test needs an explicit set");
  }
  if (s.size() < 2) throw std::invalid_argument("uniformity test needs |S| >= 2");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0, 1]");
  require_delta(delta);

  const std::uint64_t count = collision_sample_count(s.size(), eps, delta, constants);
  std::vector<ElementId> samples = oracle.sample_many(s, count);
  std::sort(samples.begin(), samples.end());
  std::uint64_t collisions = 0;
  for (std::size_t i = 0; i < samples.size();) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const std::uint64_t c = j - i;
    collisions += c * (c - 1) / 2;
    i = j;
  }
  const double pairs = static_cast<double>(count) * static_cast<double>(count - 1) / 2.0;
  const double rate = static_cast<double>(collisions) / pairs;
  return rate <= (1.0 + eps * eps) / static_cast<double>(s.size()) ? Verdict::kAccept
                                                                   : Verdict::kReject;
}

bool operator==(const NonAdaptivePlan& a, const NonAdaptivePlan& b) {
  if (a.n != b.n || a.seed != b.seed || a.sizes != b.sizes || a.sets.size() != b.sets.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.sets.size(); ++i) {
    if (a.sets[i].size() != b.sets[i].size()) return false;
    for (std::size_t r = 0; r < a.sets[i].size(); ++r) {
      const auto x = a.sets[i][r].ids();
      const auto y = b.sets[i][r].ids();
      if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
    }
  }
  return true;
}

std::uint64_t nonadaptive_repetitions(std::uint64_t n, const NonAdaptiveParams& params) {
  if (params.repetitions > 0) return params.repetitions;
  const double loglog = std::log2(std::max(2.0, std::log2(static_cast<double>(n))));
  return std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(params.repetition_constant * loglog)));
}

std::vector<ElementId> random_subset(std::uint64_t n, std::uint64_t k, Rng& rng) {
  if (k > n) throw std::invalid_argument("subset larger than domain");
  std::unordered_set<ElementId> chosen;
  chosen.reserve(k);
  std::vector<ElementId> out;
  out.reserve(k);
  for (std::uint64_t j = n - k + 1; j <= n; ++j) {
    auto t = static_cast<ElementId>(uniform_below(rng, j) + 1);
    if (!chosen.insert(t).second) {
      t = static_cast<ElementId>(j);
      chosen.insert(t);
    }
    out.push_back(t);
  }
  return out;
}

NonAdaptivePlan plan_nonadaptive_queries(std::uint64_t n, std::uint64_t repetitions,
                                         std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("non-adaptive estimation needs n >= 2");
  NonAdaptivePlan plan;
  plan.n = n;
  plan.seed = seed;
  Rng rng(seed);
  for (std::uint64_t k = 2; k <= n; k *= 2) {
    plan.sizes.push_back(k);
    auto& row = plan.sets.emplace_back();
    row.reserve(repetitions);
    for (std::uint64_t r = 0; r < repetitions; ++r) row.push_back(QuerySet::of(random_subset(n, k, rng)));
  }
  return plan;
}

SupportEstimate estimate_support_nonadaptive(CondOracle& oracle, const NonAdaptivePlan& plan,
                                             const NonAdaptiveParams& params,
                                             const EstimatorConstants& constants) {
  if (plan.n != oracle.domain_size()) throw std::invalid_argument("plan built for another n");
  const std::uint64_t start = oracle.query_count();
  SupportEstimate out;
  out.path = EstimatePath::kNonAdaptive;
  out.value = static_cast<double>(plan.n);
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    std::uint64_t rejects = 0;
    for (const QuerySet& s : plan.sets[i]) {
      if (collision_uniformity_test(oracle, s, params.uniformity_eps, params.uniformity_delta,
                                    constants) == Verdict::kReject) {
        ++rejects;
      }
    }
    if (static_cast<double>(rejects) > params.threshold * static_cast<double>(plan.sets[i].size())) {
      out.value = static_cast<double>(plan.n) / static_cast<double>(plan.sizes[i]);
      out.stage = plan.sizes[i];
      break;
    }
  }
  out.queries_used = oracle.query_count() - start;
  return out;
}

std::vector<std::uint64_t> nonadaptive_reject_profile(CondOracle& oracle, const NonAdaptivePlan& plan,
                                                      const NonAdaptiveParams& params,
                                                      const EstimatorConstants& constants) {
  if (plan.n != oracle.domain_size()) throw std::invalid_argument("plan built for another n");
  std::vector<std::uint64_t> rejects(plan.sizes.size(), 0);
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    for (const QuerySet& s : plan.sets[i]) {
      if (collision_uniformity_test(oracle, s, params.uniformity_eps, params.uniformity_delta,
                                    constants) == Verdict::kReject) {
        ++rejects[i];
      }
    }
  }
  return rejects;
}

double nonadaptive_estimate_from_profile(const NonAdaptivePlan& plan,
                                         const std::vector<std::uint64_t>& rejects,
                                         double threshold) {
  for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
    if (static_cast<double>(rejects[i]) > threshold * static_cast<double>(plan.sets[i].size())) {
      return static_cast<double>(plan.n) / static_cast<double>(plan.sizes[i]);
    }
  }
  return static_cast<double>(plan.n);
}

SupportEstimate estimate_support_nonadaptive(CondOracle& oracle, const NonAdaptiveParams& params,
                                             Rng& coins, const EstimatorConstants& constants) {
  const std::uint64_t n = oracle.domain_size();
  const NonAdaptivePlan plan = plan_nonadaptive_queries(n, nonadaptive_repetitions(n, params), coins());
  return estimate_support_nonadaptive(oracle, plan, params, constants);
}

}  // namespace condtest
