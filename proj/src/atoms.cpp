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

#include "condtest/atoms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace condtest {

std::vector<Atom> atoms(std::span<const QuerySet> sets, std::uint64_t n) {
  if (sets.size() > 63) throw std::invalid_argument("at most 63 generating sets");
  for (const QuerySet& s : sets) {
    if (s.kind() != QueryKind::kExplicit) throw UnsupportedRepresentation("atoms need explicit sets");
    if (s.ids().back() > n) throw std::out_of_range("set contains ids outside [1, n]");
  }
  std::vector<std::uint64_t> signature(n, 0);
  for (std::size_t r = 0; r < sets.size(); ++r) {
    for (ElementId id : sets[r].ids()) signature[id - 1] |= std::uint64_t{1} << r;
  }
  std::map<std::uint64_t, std::vector<ElementId>> groups;
  for (std::uint64_t i = 0; i < n; ++i) groups[signature[i]].push_back(static_cast<ElementId>(i + 1));
  std::vector<Atom> out;
  out.reserve(groups.size());
  for (auto& [sig, ids] : groups) out.push_back(Atom{sig, std::move(ids)});
  return out;
}

Configuration::Configuration(std::vector<ElementId> first, std::vector<ElementId> second,
                             std::span<const QuerySet> sets)
    : t_(sets.size()), bits_(6 * sets.size() * sets.size(), false) {
  if (first.size() != t_ || second.size() != t_) {
    throw std::invalid_argument("need one sample per query set from each distribution");
  }
  const std::vector<ElementId>* samples[2] = {&first, &second};
  for (int k = 0; k < 2; ++k) {
    for (std::size_t i = 0; i < t_; ++i) {
      if (!sets[i].contains((*samples[k])[i])) {
        throw std::invalid_argument("sample lies outside its query set");
      }
    }
  }
  const std::size_t tt = t_ * t_;
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      for (std::size_t i = 0; i < t_; ++i) {
        for (std::size_t j = 0; j < t_; ++j) {
          bits_[(2 * k + l) * tt + i * t_ + j] = (*samples[k])[i] == (*samples[l])[j];
        }
      }
    }
    for (std::size_t i = 0; i < t_; ++i) {
      for (std::size_t j = 0; j < t_; ++j) {
        bits_[4 * tt + k * tt + i * t_ + j] = sets[j].contains((*samples[k])[i]);
      }
    }
  }
}

bool Configuration::equal(int k, std::size_t i, int l, std::size_t j) const {
  return bits_[(2 * k + l) * t_ * t_ + i * t_ + j];
}

bool Configuration::member(int k, std::size_t i, std::size_t j) const {
  return bits_[4 * t_ * t_ + k * t_ * t_ + i * t_ + j];
}

Configuration configuration(const Transcript& transcript, std::span<const QuerySet> sets) {
  std::vector<ElementId> samples[2];
  for (const TranscriptEntry& e : transcript) {
    if (e.source != 0 && e.source != 1) throw std::invalid_argument("transcript source must be 0 or 1");
    auto& seq = samples[e.source];
    if (seq.size() >= sets.size()) throw std::invalid_argument("more samples than query sets");
    const QuerySet& s = sets[seq.size()];
    if (e.query.kind != s.kind() || e.query.size != s.size()) {
      throw std::invalid_argument("transcript query does not match the given set");
    }
    seq.push_back(e.sample);
  }
  return Configuration(std::move(samples[0]), std::move(samples[1]), sets);
}

}  // namespace condtest
