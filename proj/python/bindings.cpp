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

// Python module: thin wrappers over the harness. Structured results cross the
// boundary as JSON text and are decoded on the Python side.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "condtest/instances.hpp"
#include "condtest/io.hpp"
#include "condtest/random.hpp"
#include "harness/checks.hpp"
#include "harness/experiment.hpp"

namespace py = pybind11;
namespace h = condtest::harness;

namespace {

std::string run_estimate(const std::vector<std::uint64_t>& n_values,
                         const std::vector<std::uint64_t>& supports, std::uint64_t trials, double eps,
                         double tau, std::uint64_t seed, unsigned threads, bool nonadaptive) {
  h::EstimateConfig cfg;
  cfg.n_values = n_values;
  cfg.supports = supports;
  cfg.trials = trials;
  cfg.eps = eps;
  cfg.tau = tau;
  cfg.master_seed = seed;
  cfg.threads = threads;
  cfg.nonadaptive = nonadaptive;
  h::EstimateReport report;
  {
    py::gil_scoped_release release;
    report = h::run_estimate_experiment(cfg);
  }
  condtest::Json doc = h::summary_to_json(report);
  condtest::Json rows = condtest::Json::array();
  for (const auto& r : report.trials) {
    rows.push_back({{"n", r.n},
                    {"support", r.support},
                    {"trial_index", r.trial_index},
                    {"derived_seed", r.derived_seed},
                    {"estimate", r.estimate},
                    {"success", r.success},
                    {"queries", r.queries},
                    {"path", h::path_name(r.path)}});
  }
  doc["trials"] = std::move(rows);
  return doc.dump();
}

std::string gen_instance(const std::string& family, std::uint64_t n, const std::string& kind,
                         std::uint64_t seed, double gamma, std::optional<double> rho) {
  const auto k = condtest::parse_kind(kind);
  if (family == "equivalence") {
    return condtest::instance_to_json(condtest::gen_equivalence_instance(n, k, seed, rho)).dump();
  }
  if (family == "support-pair") {
    return condtest::instance_to_json(condtest::gen_support_pair(n, gamma, k, seed)).dump();
  }
  throw py::value_error("family must be 'equivalence' or 'support-pair'");
}

std::string run_check(const std::string& name, std::uint64_t seed, std::optional<std::uint64_t> count) {
  h::CheckOptions o;
  o.seed = seed;
  if (count) {
    o.tv_instances = o.hitting_cases = o.a1_sets = o.counting_sizes = *count;
    o.atoms_cases = o.fact54_cases = *count;
  }
  h::CheckReport rep;
  {
    py::gil_scoped_release release;
    rep = h::run_check(name, o);
  }
  return condtest::Json{{"check", rep.name},
                        {"cases", rep.cases},
                        {"failures", rep.failures},
                        {"passed", rep.passed()},
                        {"lines", rep.lines},
                        {"details", rep.details}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_condtest, m) {
  m.doc() = "Support-size estimation under conditional sampling (native core)";
  m.def("derive_seed", &condtest::derive_seed, py::arg("master"), py::arg("index"));
  m.def("run_estimate", &run_estimate, py::arg("n_values"), py::arg("supports"), py::arg("trials"),
        py::arg("eps") = 0.3, py::arg("tau") = 1.0, py::arg("seed") = 1, py::arg("threads") = 1,
        py::arg("nonadaptive") = false);
  m.def("gen_instance", &gen_instance, py::arg("family"), py::arg("n"), py::arg("kind") = "no",
        py::arg("seed") = 1, py::arg("gamma") = std::sqrt(2.0), py::arg("rho") = py::none());
  m.def("run_check", &run_check, py::arg("name"), py::arg("seed") = 20260101,
        py::arg("count") = py::none());
  m.def("check_names", &h::check_names);
}
