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

#include "condtest/io.hpp"

#include <stdexcept>

namespace condtest {

Json distribution_to_json(const PiecewiseDistribution& d) {
  Json pieces = Json::array();
  for (const Piece& p : d.pieces()) {
    pieces.push_back({{"count", p.count},
                      {"mass_num", numerator_i64(p.mass)},
                      {"mass_den", denominator_i64(p.mass)}});
  }
  Json j;
  j["n"] = d.n();
  j["pieces"] = std::move(pieces);
  const auto seed = d.relabel_seed();
  j["relabel_seed"] = seed ? Json(*seed) : Json(nullptr);
  j["tau_num"] = numerator_i64(d.min_mass_fraction());
  j["tau_den"] = denominator_i64(d.min_mass_fraction());
  return j;
}

PiecewiseDistribution distribution_from_json(const Json& j) {
  std::vector<Piece> pieces;
  for (const Json& p : j.at("pieces")) {
    pieces.push_back(Piece{p.at("count").get<std::uint64_t>(),
                           make_rational(p.at("mass_num").get<std::int64_t>(),
                                         p.at("mass_den").get<std::int64_t>())});
  }
  std::optional<std::uint64_t> seed;
  if (!j.at("relabel_seed").is_null()) seed = j.at("relabel_seed").get<std::uint64_t>();
  const Rational tau = make_rational(j.at("tau_num").get<std::int64_t>(),
                                     j.at("tau_den").get<std::int64_t>());
  return PiecewiseDistribution(j.at("n").get<std::uint64_t>(), std::move(pieces), tau, seed);
}

const char* kind_name(InstanceKind kind) { return kind == InstanceKind::kYes ? "yes" : "no"; }

InstanceKind parse_kind(const std::string& s) {
  if (s == "yes") return InstanceKind::kYes;
  if (s == "no") return InstanceKind::kNo;
  throw std::invalid_argument("kind must be yes or no, got '" + s + "'");
}

Json instance_to_json(const EquivalenceInstance& inst) {
  Json j;
  j["family"] = "equivalence";
  j["kind"] = kind_name(inst.kind);
  j["n"] = inst.n;
  j["params"] = {{"seed", inst.seed},
                 {"k_b", inst.k_b},
                 {"b", inst.b},
                 {"m", inst.m},
                 {"rho", inst.rho},
                 {"rho_requested", inst.rho_requested},
                 {"r", inst.r},
                 {"pair_flips", inst.pair_flips},
                 {"bucket_sizes", inst.bucket_sizes},
                 {"relabel_seed", inst.relabel_seed}};
  j["distributions"] = {distribution_to_json(*inst.d1), distribution_to_json(*inst.d2)};
  return j;
}

Json instance_to_json(const SupportPairInstance& inst) {
  Json j;
  j["family"] = "support-pair";
  j["kind"] = kind_name(inst.kind);
  j["n"] = inst.n;
  j["params"] = {{"seed", inst.seed},
                 {"gamma", inst.gamma},
                 {"beta", inst.beta},
                 {"grid_index", inst.grid_index},
                 {"s", inst.s},
                 {"s2", inst.s2},
                 {"relabel_seed1", inst.relabel_seed1},
                 {"relabel_seed2", inst.relabel_seed2}};
  j["distributions"] = {distribution_to_json(*inst.d1), distribution_to_json(*inst.d2)};
  return j;
}

bool same_distribution(const PiecewiseDistribution& a, const PiecewiseDistribution& b) {
  if (a.n() != b.n() || a.relabel_seed() != b.relabel_seed() ||
      a.min_mass_fraction() != b.min_mass_fraction() || a.pieces().size() != b.pieces().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    if (a.pieces()[i].count != b.pieces()[i].count || a.pieces()[i].mass != b.pieces()[i].mass) {
      return false;
    }
  }
  return true;
}

LoadedInstance instance_from_json(const Json& j) {
  LoadedInstance out;
  out.family = j.at("family").get<std::string>();
  out.kind = parse_kind(j.at("kind").get<std::string>());
  const auto n = j.at("n").get<std::uint64_t>();
  const Json& p = j.at("params");
  if (out.family == "equivalence") {
    const EquivalenceInstance inst = rebuild_equivalence_instance(
        n, out.kind, p.at("k_b").get<std::uint64_t>(), p.at("rho").get<double>(),
        p.at("rho_requested").get<double>(), p.at("r").get<std::uint64_t>(),
        p.at("pair_flips").get<std::vector<int>>(), p.at("seed").get<std::uint64_t>(),
        p.at("relabel_seed").get<std::uint64_t>());
    out.d1 = inst.d1;
    out.d2 = inst.d2;
  } else if (out.family == "support-pair") {
    const SupportPairInstance inst = rebuild_support_pair(
        n, p.at("gamma").get<double>(), out.kind, p.at("grid_index").get<std::uint64_t>(),
        p.at("seed").get<std::uint64_t>(), p.at("relabel_seed1").get<std::uint64_t>(),
        p.at("relabel_seed2").get<std::uint64_t>());
    out.d1 = inst.d1;
    out.d2 = inst.d2;
  } else {
    throw std::invalid_argument("unknown instance family '" + out.family + "'");
  }
  const Json& stored = j.at("distributions");
  if (stored.size() != 2 || !same_distribution(*out.d1, distribution_from_json(stored[0])) ||
      !same_distribution(*out.d2, distribution_from_json(stored[1]))) {
    throw std::invalid_argument("stored distributions do not match the regenerated instance");
  }
  return out;
}

}  // namespace condtest
