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

#include "harness/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "condtest/atoms.hpp"
#include "condtest/hitting.hpp"
#include "condtest/instances.hpp"
#include "condtest/random.hpp"
#include "condtest/scaling.hpp"

namespace condtest::harness {
namespace {

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

Rational piece_total(const Piece& p) { return p.mass * Rational(BigInt(p.count)); }

// Every id set produced by the naive 2^t-signature scan.
std::vector<Atom> naive_atoms(const std::vector<QuerySet>& sets, std::uint64_t n) {
  std::vector<Atom> out;
  const std::uint64_t t = sets.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    Atom a{mask, {}};
    for (std::uint64_t x = 1; x <= n; ++x) {
      bool ok = true;
      for (std::uint64_t r = 0; r < t && ok; ++r) {
        ok = sets[r].contains(static_cast<ElementId>(x)) == (((mask >> r) & 1) != 0);
      }
      if (ok) a.ids.push_back(static_cast<ElementId>(x));
    }
    if (!a.ids.empty()) out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {"tv", "hitting", "lemmaA1", "counting", "atoms", "fact54"};
  return names;
}

CheckReport run_check(const std::string& name, const CheckOptions& options) {
  if (name == "tv") return check_tv(options);
  if (name == "hitting") return check_hitting(options);
  if (name == "lemmaA1") return check_lemma_a1(options);
  if (name == "counting") return check_counting(options);
  if (name == "atoms") return check_atoms(options);
  if (name == "fact54") return check_fact54(options);
  throw std::invalid_argument("unknown check '" + name + "'");
}

CheckReport check_tv(const CheckOptions& options) {
  CheckReport rep;
  rep.name = "tv";
  const Rational quarter(BigInt(1), BigInt(4));
  rep.details = Json::array();
  for (std::size_t g = 0; g < options.tv_n.size(); ++g) {
    const std::uint64_t n = options.tv_n[g];
    std::uint64_t no_exact = 0;
    std::uint64_t yes_zero = 0;
    std::uint64_t pairs_exact = 0;
    for (std::uint64_t i = 0; i < options.tv_instances; ++i) {
      const std::uint64_t seed = derive_seed(derive_seed(options.seed, g), i);
      const EquivalenceInstance no = gen_equivalence_instance(n, InstanceKind::kNo, seed);
      const EquivalenceInstance yes = gen_equivalence_instance(n, InstanceKind::kYes, seed);
      if (tv_distance(*no.d1, *no.d2) == quarter) ++no_exact;
      if (tv_distance(*yes.d1, *yes.d2) == 0) ++yes_zero;
      const Rational pair_mass(BigInt(1), BigInt(no.r));
      bool pairs_ok = true;
      for (std::uint64_t p = 0; p < no.r; ++p) {
        for (const auto* d : {no.d1.get(), no.d2.get()}) {
          pairs_ok = pairs_ok && piece_total(d->pieces()[2 * p]) + piece_total(d->pieces()[2 * p + 1]) == pair_mass;
        }
      }
      if (pairs_ok) ++pairs_exact;
      rep.cases += 3;
    }
    const std::uint64_t k = options.tv_instances;
    rep.failures += (k - no_exact) + (k - yes_zero) + (k - pairs_exact);
    rep.lines.push_back(cat("n=", n, ": ", no_exact, "/", k, " no-instances at exactly 1/4, ", yes_zero,
                            "/", k, " yes-instances at 0, ", pairs_exact, "/", k,
                            " with every pair mass exactly 1/r"));
    rep.details.push_back({{"n", n}, {"instances", k}, {"no_exact_quarter", no_exact},
                           {"yes_zero", yes_zero}, {"pair_mass_exact", pairs_exact}});
  }
  return rep;
}

CheckReport check_hitting(const CheckOptions& options) {
  CheckReport rep;
  rep.name = "hitting";
  const double log_beta = std::log2(options.hitting_beta);
  double worst = 1.0;
  double worst_gap = 1.0;
  bool beyond = false;
  rep.details = Json::array();
  for (std::uint64_t i = 0; i < options.hitting_cases; ++i) {
    const auto sizes = adversarial_geometric_sizes(options.hitting_log_n, options.hitting_q,
                                                   derive_seed(options.seed, i));
    const HittingResult r = hitting_fraction(sizes, options.hitting_log_n, log_beta);
    ++rep.cases;
    if (r.fraction < options.hitting_min_fraction) ++rep.failures;
    worst = std::min(worst, r.fraction);
    worst_gap = std::min(worst_gap, r.gap_fraction);
    beyond = beyond || r.beyond_bound;
    rep.details.push_back({{"case", i}, {"fraction", r.fraction}, {"gap_fraction", r.gap_fraction},
                           {"grid_points", r.grid_points}});
  }
  rep.lines.push_back(cat(rep.cases - rep.failures, "/", rep.cases,
                          " size vectors with fraction(sup_t C_t/t < 2/100) >= ",
                          options.hitting_min_fraction, "; worst fraction ", worst));
  rep.lines.push_back(cat("distance form (no j with d_(j)/j < 2/100): worst fraction ", worst_gap));
  if (beyond) rep.lines.push_back("note: q exceeds log n / (100 log beta); bound not asserted");
  return rep;
}

double lemma_a1_c(std::uint64_t index) {
  static const double cs[] = {0.02, 0.1, 0.5, 1.0, 2.5};
  return cs[index % 5];
}

std::vector<double> lemma_a1_points(std::uint64_t seed, std::uint64_t index, std::uint32_t max_q,
                                    double length) {
  Rng rng(derive_seed(seed, index));
  const auto q = static_cast<std::uint32_t>(1 + uniform_below(rng, max_q));
  std::vector<double> pts;
  // Alternate between spread-out and clustered configurations.
  const bool clustered = index % 2 == 1;
  const double centre = uniform01(rng) * length;
  const double spread = clustered ? length * (0.01 + 0.1 * uniform01(rng)) : length;
  while (pts.size() < q) {
    double x = clustered ? centre + (uniform01(rng) - 0.5) * spread : uniform01(rng) * length;
    x = std::clamp(x, 0.0, length);
    if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

CheckReport check_lemma_a1(const CheckOptions& options) {
  CheckReport rep;
  rep.name = "lemmaA1";
  double worst_slack = -1e300;  // max of measured - 2cq
  for (std::uint64_t i = 0; i < options.a1_sets; ++i) {
    const auto pts = lemma_a1_points(options.seed, i, options.a1_max_q, options.a1_length);
    const double c = lemma_a1_c(i);
    const MeasureResult m = s_c_measure(pts, options.a1_length, c, options.a1_resolution);
    const double bound = 2.0 * c * static_cast<double>(pts.size());
    ++rep.cases;
    // Fixed slack of two cells, independent of the number of points.
    if (m.measure > bound + 2.0 * options.a1_length / static_cast<double>(options.a1_resolution)) {
      ++rep.failures;
    }
    worst_slack = std::max(worst_slack, m.measure - bound);
  }
  rep.lines.push_back(cat(rep.failures, " violations of |S_c| <= 2cq + 2L/res over ", rep.cases,
                          " point sets; largest measured - 2cq = ", worst_slack));
  rep.details = {{"sets", rep.cases}, {"violations", rep.failures}, {"max_excess", worst_slack}};
  return rep;
}

CheckReport check_counting(const CheckOptions& options) {
  CheckReport rep;
  rep.name = "counting";
  const AnalysisParams params = AnalysisParams::for_queries(options.counting_q);
  const BucketGeometry g = BucketGeometry::standard(options.counting_log_n);
  const double neither_bound = neither_count_bound(params, g);
  const std::uint64_t per_j_bound = stability_count_bound(params);
  Rng rng(options.seed);
  std::uint64_t neither_bad = 0;
  std::uint64_t per_j_bad = 0;
  std::uint64_t total_bad = 0;
  std::uint64_t max_neither = 0;
  std::uint64_t max_per_j = 0;
  for (std::uint64_t i = 0; i < options.counting_sizes; ++i) {
    const double log_size = uniform01(rng) * g.log_n;
    const BadScalingCounts c = count_bad_scalings(log_size, params, g);
    ++rep.cases;
    max_neither = std::max(max_neither, c.neither);
    max_per_j = std::max(max_per_j, c.max_unstable_per_j());
    const bool n_ok = static_cast<double>(c.neither) <= neither_bound;
    const bool j_ok = c.max_unstable_per_j() <= per_j_bound;
    const bool t_ok = c.unstable_pairs() <= 2 * g.r * per_j_bound;
    if (!n_ok) ++neither_bad;
    if (!j_ok) ++per_j_bad;
    if (!t_ok) ++total_bad;
    if (!n_ok || !j_ok || !t_ok) ++rep.failures;
  }
  rep.lines.push_back(cat("log n=", g.log_n, " log rho=", g.log_rho, " r=", g.r, " q=", params.q,
                          " (alpha=", params.alpha(), ", phi=", params.phi(), "), k_b in 0..",
                          g.max_k_b()));
  rep.lines.push_back(cat("neither: max ", max_neither, " vs bound ", neither_bound, "; ",
                          neither_bad, " sizes over"));
  rep.lines.push_back(cat("per-j instability: max ", max_per_j, " vs bound ", per_j_bound, "; ",
                          per_j_bad, " sizes over (a window of width alpha^2 holds up to ",
                          stability_window_capacity(params), " values of k_b)"));
  rep.lines.push_back(cat("total instability over 2r windows: ", total_bad, " sizes over ",
                          2 * g.r * per_j_bound));
  rep.details = {{"log_n", g.log_n},         {"log_rho", g.log_rho},
                 {"r", g.r},                 {"neither_bound", neither_bound},
                 {"per_j_bound", per_j_bound}, {"max_neither", max_neither},
                 {"max_per_j", max_per_j},   {"window_capacity", stability_window_capacity(params)},
                 {"neither_over", neither_bad}, {"per_j_over", per_j_bad}, {"total_over", total_bad}};
  return rep;
}

CheckReport check_atoms(const CheckOptions& options) {
  CheckReport rep;
  rep.name = "atoms";
  Rng rng(options.seed);
  std::uint64_t over_count = 0;
  for (std::uint64_t i = 0; i < options.atoms_cases; ++i) {
    const std::uint64_t n = 1 + uniform_below(rng, options.atoms_max_n);
    const std::uint64_t t = 1 + uniform_below(rng, options.atoms_max_t);
    std::vector<QuerySet> sets;
    for (std::uint64_t r = 0; r < t; ++r) {
      std::vector<ElementId> ids;
      for (std::uint64_t x = 1; x <= n; ++x) {
        if (uniform_below(rng, 2)) ids.push_back(static_cast<ElementId>(x));
      }
      if (ids.empty()) ids.push_back(static_cast<ElementId>(1 + uniform_below(rng, n)));
      sets.push_back(QuerySet::of(std::move(ids)));
    }
    const auto got = atoms(sets, n);
    ++rep.cases;
    const bool count_ok = got.size() <= (std::uint64_t{1} << t);
    if (!count_ok) ++over_count;
    if (got != naive_atoms(sets, n) || !count_ok) ++rep.failures;
  }
  rep.lines.push_back(cat(rep.cases - rep.failures, "/", rep.cases,
                          " random families match the 2^t-signature enumeration; ", over_count,
                          " exceed 2^t atoms"));
  rep.details = {{"cases", rep.cases}, {"mismatches", rep.failures}};
  return rep;
}

DenseCase dense_support_case(std::uint64_t seed, std::uint64_t index) {
  Rng rng(derive_seed(seed, index));
  const std::uint64_t n = 64 + uniform_below(rng, 4096 - 64 + 1);
  const Rational eps(BigInt(1 + uniform_below(rng, 499)), BigInt(1000));
  const Rational tau(BigInt(1 + uniform_below(rng, 1000)), BigInt(1000));
  const Rational nr{BigInt(n)};
  // support in [ceil((1 - eps) n), n]
  const Rational lowest = (1 - eps) * nr;
  BigInt lo = boost::multiprecision::numerator(lowest) / boost::multiprecision::denominator(lowest);
  if (Rational(lo) < lowest) lo += 1;
  const auto lo_u = lo.convert_to<std::uint64_t>();
  const std::uint64_t omega = lo_u + uniform_below(rng, n - lo_u + 1);

  const Rational base = tau / nr;
  const Rational extra = 1 - base * Rational(BigInt(omega));  // >= 0 since tau <= 1
  std::vector<Piece> pieces;
  if (index % 2 == 0 || extra == 0) {
    // Split the extra mass over a few random pieces.
    const std::uint64_t k = std::min<std::uint64_t>(omega, 1 + uniform_below(rng, 6));
    std::vector<std::uint64_t> counts(k, 1);
    for (std::uint64_t left = omega - k; left > 0; --left) ++counts[uniform_below(rng, k)];
    std::vector<std::uint64_t> weights(k);
    std::uint64_t wsum = 0;
    for (auto& w : weights) wsum += (w = 1 + uniform_below(rng, 100));
    for (std::uint64_t j = 0; j < k; ++j) {
      const Rational share = extra * Rational(BigInt(weights[j]), BigInt(wsum));
      pieces.push_back(Piece{counts[j], base + share / Rational(BigInt(counts[j]))});
    }
  } else {
    // As many elements as possible pushed just above 2/n.
    const Rational over = extra * nr / (2 - tau);
    BigInt h = boost::multiprecision::numerator(over) / boost::multiprecision::denominator(over);
    if (Rational(h) == over) h -= 1;
    std::uint64_t heavy = std::clamp<std::uint64_t>(h.convert_to<std::uint64_t>(), 1, omega);
    pieces.push_back(Piece{heavy, base + extra / Rational(BigInt(heavy))});
    if (omega > heavy) pieces.push_back(Piece{omega - heavy, base});
  }
  return DenseCase{PiecewiseDistribution(n, std::move(pieces), tau), eps, tau};
}

CheckReport check_fact54(const CheckOptions& options) {
  CheckReport rep;
  rep.name = "fact54";
  Rational tightest(10);
  for (std::uint64_t i = 0; i < options.fact54_cases; ++i) {
    const DenseCase c = dense_support_case(options.seed, i);
    const Rational n{BigInt(c.distribution.n())};
    const LightSet light = light_set_size(c.distribution, c.tau);
    const Rational bound = (make_rational(1, 2) - c.eps) * n;
    const Rational have{BigInt(light.cardinality)};
    ++rep.cases;
    if (have < bound) ++rep.failures;
    if (bound > 0) tightest = std::min(tightest, Rational(have / bound));
  }
  rep.lines.push_back(cat(rep.failures, " violations of |L| >= (1/2 - eps) n over ", rep.cases,
                          " dense-support distributions; tightest |L| / bound = ",
                          to_double(tightest)));
  rep.details = {{"cases", rep.cases}, {"violations", rep.failures},
                 {"tightest_ratio", to_double(tightest)}};
  return rep;
}

}  // namespace condtest::harness
