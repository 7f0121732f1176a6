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

#include "harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <memory>
#include <mutex>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace condtest::harness {
namespace {

// Runs body(i) for i in [0, count) on `threads` workers.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i; (i = next.fetch_add(1)) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

void validate(const EstimateConfig& c) {
  if (!(c.eps > 0.0 && c.eps < 0.5)) throw std::invalid_argument("eps must be in (0, 1/2)");
  if (!(c.tau > 0.0)) throw std::invalid_argument("tau must be positive");
  for (auto n : c.n_values) {
    if (n < 2 || n > 0xffffffffULL) throw std::invalid_argument("n must be in [2, 2^32 - 1]");
  }
  for (auto w : c.supports) {
    if (w == 0) throw std::invalid_argument("support sizes must be positive");
  }
}

}  // namespace

std::vector<GridPoint> grid_points(const EstimateConfig& config) {
  std::vector<GridPoint> out;
  for (auto n : config.n_values) {
    for (auto w : config.supports) {
      if (w <= n) out.push_back(GridPoint{n, w});
    }
  }
  return out;
}

bool estimate_success(double truth, double estimate, double eps) {
  return estimate >= truth / (1.0 + eps) && estimate <= (1.0 + eps) * truth;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t grid_index, std::uint64_t trial) {
  return derive_seed(derive_seed(master_seed, grid_index), trial);
}

EstimateReport run_estimate_experiment(const EstimateConfig& config) {
  validate(config);
  EstimateReport report;
  report.config = config;
  const std::vector<GridPoint> grid = grid_points(config);
  if (config.trials == 0) {
    report.summaries = summarize(report.trials, grid);
    return report;
  }
  report.trials.resize(grid.size() * config.trials);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const GridPoint point = grid[g];
    // The support is a seeded random subset of [n], shared by the trials.
    const auto dist = std::make_shared<const PiecewiseDistribution>(PiecewiseDistribution::uniform_prefix(
        point.n, point.support, derive_seed(config.master_seed, ~std::uint64_t{0} - g)));
    dist->relabel()->forward();  // build the permutation before the workers start
    parallel_for(config.trials, config.threads, [&](std::uint64_t t) {
      const auto start = std::chrono::steady_clock::now();
      TrialRecord& rec = report.trials[g * config.trials + t];
      rec.n = point.n;
      rec.support = point.support;
      rec.trial_index = t;
      rec.derived_seed = trial_seed(config.master_seed, g, t);
      CondOracle oracle(dist, derive_seed(rec.derived_seed, 0));
      Rng coins(derive_seed(rec.derived_seed, 1));
      const SupportEstimate est =
          config.nonadaptive
              ? estimate_support_nonadaptive(oracle, config.nonadaptive_params, coins, config.constants)
              : estimate_support(oracle, config.eps, config.tau, coins, config.constants);
      rec.estimate = est.value;
      rec.queries = est.queries_used;
      rec.path = est.path;
      rec.success = estimate_success(static_cast<double>(point.support), est.value, config.eps);
      if (config.timing) {
        rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
      }
    });
  }
  report.summaries = summarize(report.trials, grid);
  return report;
}

std::vector<GridSummary> summarize(const std::vector<TrialRecord>& trials,
                                   const std::vector<GridPoint>& grid) {
  std::vector<GridSummary> out;
  for (const GridPoint& point : grid) {
    GridSummary s;
    s.n = point.n;
    s.support = point.support;
    std::vector<double> queries;
    for (const TrialRecord& r : trials) {
      if (r.n != point.n || r.support != point.support) continue;
      ++s.trials;
      if (r.success) ++s.successes;
      queries.push_back(static_cast<double>(r.queries));
    }
    if (s.trials > 0) {
      s.success_fraction = static_cast<double>(s.successes) / static_cast<double>(s.trials);
      double total = 0.0;
      for (double q : queries) total += q;
      s.mean_queries = total / static_cast<double>(s.trials);
    }
    s.wilson = wilson_interval(s.successes, s.trials);
    s.median_queries = median(std::move(queries));
    out.push_back(s);
  }
  return out;
}

const char* path_name(EstimatePath path) {
  switch (path) {
    case EstimatePath::kDenseShortcut: return "dense";
    case EstimatePath::kBinarySearch: return "search";
    case EstimatePath::kExhausted: return "exhausted";
    case EstimatePath::kNonAdaptive: return "nonadaptive";
  }
  return "?";
}

void write_csv(std::ostream& out, const EstimateReport& report) {
  out << "n,support,trial_index,derived_seed,estimate,success,queries,path";
  if (report.config.timing) out << ",wall_time_ms";
  out << '\n';
  for (const TrialRecord& r : report.trials) {
    out << r.n << ',' << r.support << ',' << r.trial_index << ',' << r.derived_seed << ','
        << format_double(r.estimate) << ',' << (r.success ? 1 : 0) << ',' << r.queries << ','
        << path_name(r.path);
    if (report.config.timing) out << ',' << format_double(r.wall_time_ms);
    out << '\n';
  }
}

Json config_to_json(const EstimateConfig& c) {
  return Json{{"n", c.n_values},
              {"support", c.supports},
              {"eps", c.eps},
              {"tau", c.tau},
              {"trials", c.trials},
              {"seed", c.master_seed},
              {"nonadaptive", c.nonadaptive},
              {"rng", std::string(kRngAlgorithm)},
              {"constants",
               {{"c_cmp", c.constants.compare},
                {"c_probe", c.constants.probe},
                {"c_uniform", c.constants.uniform_samples},
                {"c_light", c.constants.light_samples},
                {"c_u", c.constants.collision},
                {"c_majority", c.constants.majority},
                {"c_na", c.nonadaptive_params.repetition_constant},
                {"theta", c.nonadaptive_params.threshold},
                {"na_repetitions", c.nonadaptive_params.repetitions},
                {"na_uniformity_eps", c.nonadaptive_params.uniformity_eps},
                {"na_uniformity_delta", c.nonadaptive_params.uniformity_delta}}}};
}

Json summary_to_json(const EstimateReport& report) {
  Json rows = Json::array();
  for (const GridSummary& s : report.summaries) {
    rows.push_back({{"n", s.n},
                    {"support", s.support},
                    {"trials", s.trials},
                    {"successes", s.successes},
                    {"success_fraction", s.success_fraction},
                    {"wilson95", {s.wilson.lo, s.wilson.hi}},
                    {"mean_queries", s.mean_queries},
                    {"median_queries", s.median_queries}});
  }
  return Json{{"config", config_to_json(report.config)}, {"summary", rows}};
}

Calibration calibrate_threshold(std::uint64_t n, const std::vector<std::uint64_t>& supports,
                                std::uint64_t pilot_trials, std::uint64_t pilot_seed,
                                const NonAdaptiveParams& base, double factor,
                                std::vector<double> candidates) {
  if (candidates.empty()) {
    for (int i = 1; i <= 19; ++i) candidates.push_back(0.05 * i);
  }
  Calibration out;
  out.candidates = candidates;
  out.accuracy.assign(candidates.size(), 0.0);
  const std::uint64_t reps = nonadaptive_repetitions(n, base);
  std::uint64_t total = 0;
  for (std::size_t g = 0; g < supports.size(); ++g) {
    const auto dist = std::make_shared<const PiecewiseDistribution>(
        PiecewiseDistribution::uniform_prefix(n, supports[g], derive_seed(pilot_seed, ~std::uint64_t{0} - g)));
    const auto truth = static_cast<double>(supports[g]);
    for (std::uint64_t t = 0; t < pilot_trials; ++t) {
      const std::uint64_t seed = trial_seed(pilot_seed, g, t);
      CondOracle oracle(dist, derive_seed(seed, 0));
      const NonAdaptivePlan plan = plan_nonadaptive_queries(n, reps, derive_seed(seed, 1));
      const auto rejects = nonadaptive_reject_profile(oracle, plan, base);
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double est = nonadaptive_estimate_from_profile(plan, rejects, candidates[c]);
        if (est >= truth / factor && est <= truth * factor) out.accuracy[c] += 1.0;
      }
      ++total;
    }
  }
  std::size_t best = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (total > 0) out.accuracy[c] /= static_cast<double>(total);
    if (out.accuracy[c] > out.accuracy[best]) best = c;
  }
  out.threshold = candidates[best];
  return out;
}

}  // namespace condtest::harness
