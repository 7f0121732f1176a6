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

#ifndef CONDTEST_HARNESS_EXPERIMENT_HPP_
#define CONDTEST_HARNESS_EXPERIMENT_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "condtest/io.hpp"
#include "condtest/support_size.hpp"

namespace condtest::harness {

struct EstimateConfig {
  std::vector<std::uint64_t> n_values;
  std::vector<std::uint64_t> supports;  // true support sizes omega
  double eps = 0.3;
  double tau = 1.0;
  std::uint64_t trials = 0;
  std::uint64_t master_seed = 0;
  bool nonadaptive = false;
  EstimatorConstants constants;
  NonAdaptiveParams nonadaptive_params;
  unsigned threads = 1;   // never affects results
  bool timing = false;    // adds wall_time_ms; output is then not reproducible
};

// Grid points are the (n, omega) pairs with omega <= n, n-major.
struct GridPoint {
  std::uint64_t n = 0;
  std::uint64_t support = 0;
};
std::vector<GridPoint> grid_points(const EstimateConfig& config);

struct TrialRecord {
  std::uint64_t n = 0;
  std::uint64_t support = 0;
  std::uint64_t trial_index = 0;
  std::uint64_t derived_seed = 0;
  double estimate = 0.0;
  bool success = false;
  std::uint64_t queries = 0;
  EstimatePath path = EstimatePath::kDenseShortcut;
  double wall_time_ms = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct GridSummary {
  std::uint64_t n = 0;
  std::uint64_t support = 0;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double success_fraction = 0.0;
  Interval wilson;
  double mean_queries = 0.0;
  double median_queries = 0.0;
};

struct EstimateReport {
  EstimateConfig config;
  std::vector<TrialRecord> trials;     // grid-point-major, then trial index
  std::vector<GridSummary> summaries;  // one per grid point
};

// omega / (1 + eps) <= estimate <= (1 + eps) omega.
bool estimate_success(double truth, double estimate, double eps);

// Wilson score interval; 95% by default.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                         double z = 1.959963984540054);

// Seed of trial t at grid point g: derive_seed(derive_seed(master, g), t).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t grid_index, std::uint64_t trial);

// Runs every trial on `config.threads` workers. Each trial owns its oracle
// and coins; the distribution of a grid point is shared read-only.
EstimateReport run_estimate_experiment(const EstimateConfig& config);

std::vector<GridSummary> summarize(const std::vector<TrialRecord>& trials,
                                   const std::vector<GridPoint>& grid);

const char* path_name(EstimatePath path);
void write_csv(std::ostream& out, const EstimateReport& report);
Json config_to_json(const EstimateConfig& config);
Json summary_to_json(const EstimateReport& report);

// Picks theta from `candidates` maximizing factor-`factor` accuracy of the
// non-adaptive estimator over pilot trials whose seeds are disjoint from
// evaluation seeds (derived from `pilot_seed`). Ties go to the smaller theta.
struct Calibration {
  double threshold = 0.5;
  std::vector<double> candidates;
  std::vector<double> accuracy;  // per candidate, pooled over supports
};
Calibration calibrate_threshold(std::uint64_t n, const std::vector<std::uint64_t>& supports,
                                std::uint64_t pilot_trials, std::uint64_t pilot_seed,
                                const NonAdaptiveParams& base, double factor = 4.0,
                                std::vector<double> candidates = {});

}  // namespace condtest::harness

#endif  // CONDTEST_HARNESS_EXPERIMENT_HPP_
