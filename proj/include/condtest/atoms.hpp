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

#ifndef CONDTEST_ATOMS_HPP_
#define CONDTEST_ATOMS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "condtest/oracle.hpp"
#include "condtest/query_set.hpp"

namespace condtest {

struct Atom {
  // Bit r is set iff the atom lies inside sets[r] (otherwise in its complement).
  std::uint64_t signature = 0;
  std::vector<ElementId> ids;  // ascending

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Nonempty atoms of the partition of [n] generated by explicit sets, ordered
// by signature. Meant for small domains: every id of [n] is listed.
std::vector<Atom> atoms(std::span<const QuerySet> sets, std::uint64_t n);

// Relations between the samples of t paired queries: s_i^(k) = s_j^(l) for
// k, l in {0, 1} (4 t^2 bits) and s_i^(k) in A_j (2 t^2 bits).
class Configuration {
 public:
  Configuration(std::vector<ElementId> first, std::vector<ElementId> second,
                std::span<const QuerySet> sets);

  std::size_t t() const { return t_; }
  bool equal(int k, std::size_t i, int l, std::size_t j) const;
  bool member(int k, std::size_t i, std::size_t j) const;
  const std::vector<bool>& bits() const { return bits_; }  // 6 t^2 entries

  friend bool operator==(const Configuration& a, const Configuration& b) { return a.bits_ == b.bits_; }

 private:
  std::size_t t_;
  std::vector<bool> bits_;
};

// Builds the configuration from a merged transcript: the i-th entry of
// source 0 and of source 1 answer the query sets[i]. Throws
// std::invalid_argument if a sample lies outside its query set or the
// transcript does not match the sets.
Configuration configuration(const Transcript& transcript, std::span<const QuerySet> sets);

}  // namespace condtest

#endif  // CONDTEST_ATOMS_HPP_
