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

#ifndef CONDTEST_COMPARE_HPP_
#define CONDTEST_COMPARE_HPP_

#include <cstdint>
#include <variant>

#include "condtest/oracle.hpp"
#include "condtest/query_set.hpp"

namespace condtest {

struct CompareLow {
  friend bool operator==(CompareLow, CompareLow) = default;
};
struct CompareHigh {
  friend bool operator==(CompareHigh, CompareHigh) = default;
};
struct CompareRatio {
  double value = 1.0;  // estimate of D(Y) / D(X), always > 0
};

// Outcome of Compare(X, Y): Low, High, or a ratio estimate of D(Y)/D(X).
using CompareResult = std::variant<CompareLow, CompareHigh, CompareRatio>;

inline bool is_low(const CompareResult& r) { return std::holds_alternative<CompareLow>(r); }
inline bool is_high(const CompareResult& r) { return std::holds_alternative<CompareHigh>(r); }
inline bool is_ratio(const CompareResult& r) { return std::holds_alternative<CompareRatio>(r); }

struct CompareParams {
  double eta = 0.5;    // (0, 1]
  double k = 2.0;      // dynamic range, >= 1
  double delta = 0.1;  // (0, 1/2]
};

inline constexpr double kDefaultCompareConstant = 16.0;

// m = ceil(c * (K + 1) * log2(2 / delta) / eta^2).
std::uint64_t compare_sample_count(const CompareParams& params,
                                   double constant = kDefaultCompareConstant);

// Raw statistic behind a Compare call.
struct CompareEstimate {
  std::uint64_t draws = 0;
  std::uint64_t hits_in_y = 0;
  double fraction_in_y() const { return static_cast<double>(hits_in_y) / static_cast<double>(draws); }
  // p / (1 - p); +infinity when every sample fell in Y.
  double ratio() const;
};

// Draws the samples on X u Y and reports how many landed in Y. Swapping X and
// Y on an oracle with the same seed complements the count exactly.
CompareEstimate compare_estimate(CondOracle& oracle, const QuerySet& x, const QuerySet& y,
                                 const CompareParams& params,
                                 double constant = kDefaultCompareConstant);

// High if the ratio estimate exceeds 2K, Low if it is below 1/(2K), otherwise
// Ratio. Throws std::invalid_argument for overlapping sets or bad parameters.
CompareResult compare(CondOracle& oracle, const QuerySet& x, const QuerySet& y,
                      const CompareParams& params, double constant = kDefaultCompareConstant);

CompareResult classify(const CompareEstimate& estimate, double k);

// Compare({x}, {y}) with the draw count already computed; same answer and
// same oracle stream as the set form. For hot loops.
CompareEstimate compare_singletons(CondOracle& oracle, ElementId x, ElementId y,
                                   std::uint64_t draws);

}  // namespace condtest

#endif  // CONDTEST_COMPARE_HPP_
