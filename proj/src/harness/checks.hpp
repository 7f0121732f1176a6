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

#ifndef CONDTEST_HARNESS_CHECKS_HPP_
#define CONDTEST_HARNESS_CHECKS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "condtest/io.hpp"

namespace condtest::harness {

// Parameters of the checker suites. Defaults are the documented ones.
struct CheckOptions {
  std::uint64_t seed = 20260101;

  // tv: seeded no/yes equivalence instances per n.
  std::uint64_t tv_instances = 100;
  std::vector<std::uint64_t> tv_n = {1u << 16, 1u << 20, 1u << 24};

  // hitting: adversarial geometric size vectors.
  std::uint64_t hitting_cases = 50;
  double hitting_log_n = 4096.0;
  double hitting_beta = 2.0;
  std::uint32_t hitting_q = 40;
  double hitting_min_fraction = 0.99;

  // lemmaA1: random point sets in [0, L].
  std::uint64_t a1_sets = 1000;
  std::uint32_t a1_max_q = 64;
  double a1_length = 100.0;
  std::uint64_t a1_resolution = 100000;

  // counting: sampled sizes against exhaustive k_b enumeration.
  std::uint64_t counting_sizes = 100;
  std::uint64_t counting_q = 3;
  double counting_log_n = 4096.0;

  // atoms: random small families.
  std::uint64_t atoms_cases = 200;
  std::uint64_t atoms_max_n = 20;
  std::uint64_t atoms_max_t = 5;

  // fact54: dense-support distributions.
  std::uint64_t fact54_cases = 100;
};

struct CheckReport {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  bool passed() const { return failures == 0; }
  std::vector<std::string> lines;  // human-readable summary
  Json details;
};

const std::vector<std::string>& check_names();

// Throws std::invalid_argument for an unknown name.
CheckReport run_check(const std::string& name, const CheckOptions& options);

CheckReport check_tv(const CheckOptions& options);
CheckReport check_hitting(const CheckOptions& options);
CheckReport check_lemma_a1(const CheckOptions& options);
CheckReport check_counting(const CheckOptions& options);
CheckReport check_atoms(const CheckOptions& options);
CheckReport check_fact54(const CheckOptions& options);

// The c used for point set i of the lemmaA1 suite; 2c is a whole number of
// grid cells at the default resolution.
double lemma_a1_c(std::uint64_t index);
std::vector<double> lemma_a1_points(std::uint64_t seed, std::uint64_t index, std::uint32_t max_q,
                                    double length);

// Dense-support distribution number `index`: support >= (1 - eps) n, masses
// >= tau / n, with eps and tau returned alongside.
struct DenseCase {
  PiecewiseDistribution distribution;
  Rational eps;
  Rational tau;
};
DenseCase dense_support_case(std::uint64_t seed, std::uint64_t index);

}  // namespace condtest::harness

#endif  // CONDTEST_HARNESS_CHECKS_HPP_
