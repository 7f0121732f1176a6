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

#ifndef CONDTEST_RATIONAL_HPP_
#define CONDTEST_RATIONAL_HPP_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace condtest {

// Exact rational used for every stored probability mass.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  return Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) { return q.str(); }

// Throws std::overflow_error if numerator or denominator does not fit in int64.
std::int64_t numerator_i64(const Rational& q);
std::int64_t denominator_i64(const Rational& q);

}  // namespace condtest

#endif  // CONDTEST_RATIONAL_HPP_
