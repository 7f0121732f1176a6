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

// Command-line driver: instance generation, estimator experiments and the
// checker suites. Every flag can also be set through an environment variable
// CONDTEST_<FLAG> (upper case, dashes as underscores), e.g. CONDTEST_THREADS.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.

#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "condtest/instances.hpp"
#include "condtest/io.hpp"
#include "harness/checks.hpp"
#include "harness/experiment.hpp"

namespace {

using condtest::Json;
namespace h = condtest::harness;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "csv";
};

std::string env_name(const std::string& flag) {
  std::string out = "CONDTEST_";
  for (char c : flag) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

template <typename T>
CLI::Option* flag(CLI::App* app, const std::string& name, T& target, const std::string& help) {
  return app->add_option("--" + name, target, help)->envname(env_name(name));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional-sampling support-size estimation and lower-bound checkers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  flag(&app, "seed", g.seed, "master seed");
  flag(&app, "threads", g.threads, "worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u));
  flag(&app, "format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "write a seeded lower-bound instance as JSON");
  std::string family;
  std::uint64_t gen_n = 0;
  std::string kind = "no";
  std::string gen_out;
  double gamma = std::sqrt(2.0);
  double rho = 0.0;
  flag(gen, "family", family, "equivalence | support-pair")
      ->required()
      ->check(CLI::IsMember({"equivalence", "support-pair"}));
  flag(gen, "n", gen_n, "domain size")->required();
  flag(gen, "kind", kind, "yes | no")->check(CLI::IsMember({"yes", "no"}));
  flag(gen, "out", gen_out, "output file (stdout if omitted)");
  flag(gen, "gamma", gamma, "support-pair ratio, >= sqrt(2)");
  flag(gen, "rho", rho, "equivalence bucket ratio (default 2^sqrt(log n))");

  // estimate
  auto* est = app.add_subcommand("estimate", "run support-size estimation trials");
  h::EstimateConfig cfg;
  std::string est_out;
  flag(est, "n", cfg.n_values, "domain sizes")->required();
  flag(est, "support", cfg.supports, "true support sizes")->required();
  flag(est, "eps", cfg.eps, "accuracy parameter in (0, 1/2)");
  flag(est, "tau", cfg.tau, "min-mass parameter");
  flag(est, "trials", cfg.trials, "trials per grid point")->required();
  flag(est, "out", est_out, "output file (stdout if omitted)");
  est->add_flag("--nonadaptive", cfg.nonadaptive, "use the non-adaptive estimator")
      ->envname(env_name("nonadaptive"));
  est->add_flag("--timing", cfg.timing, "add wall-clock time per trial (not reproducible)")
      ->envname(env_name("timing"));
  flag(est, "c-cmp", cfg.constants.compare, "Compare sample constant");
  flag(est, "c-probe", cfg.constants.probe, "support probe round constant");
  flag(est, "c-u", cfg.constants.collision, "collision tester constant");
  flag(est, "c-na", cfg.nonadaptive_params.repetition_constant, "non-adaptive repetition constant");
  flag(est, "theta", cfg.nonadaptive_params.threshold, "non-adaptive reject threshold");

  // check
  auto* chk = app.add_subcommand("check", "run a checker suite");
  std::string which;
  std::int64_t count = -1;
  h::CheckOptions opts;
  chk->add_option("which", which, "tv | hitting | lemmaA1 | counting | atoms | fact54")
      ->required()
      ->check(CLI::IsMember(h::check_names()));
  flag(chk, "count", count, "number of cases (suite-specific default)");
  flag(chk, "log-n", opts.hitting_log_n, "log2 n for hitting (counting uses the same value)");
  flag(chk, "q", opts.hitting_q, "number of query sizes for hitting");
  flag(chk, "beta", opts.hitting_beta, "grid ratio for hitting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const auto k = condtest::parse_kind(kind);
      Json j;
      if (family == "equivalence") {
        j = condtest::instance_to_json(condtest::gen_equivalence_instance(
            gen_n, k, g.seed, rho > 0.0 ? std::optional<double>(rho) : std::nullopt));
      } else {
        j = condtest::instance_to_json(condtest::gen_support_pair(gen_n, gamma, k, g.seed));
      }
      const std::string text = j.dump(1) + "\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_text(gen_out, text);
      }
      return kExitOk;
    }

    if (est->parsed()) {
      cfg.master_seed = g.seed;
      cfg.threads = g.threads;
      const h::EstimateReport report = h::run_estimate_experiment(cfg);
      std::string body;
      if (g.format == "csv") {
        std::ostringstream os;
        h::write_csv(os, report);
        body = os.str();
      } else {
        Json trials = Json::array();
        for (const auto& r : report.trials) {
          Json row = {{"n", r.n},           {"support", r.support},   {"trial_index", r.trial_index},
                      {"derived_seed", r.derived_seed}, {"estimate", r.estimate},
                      {"success", r.success}, {"queries", r.queries}, {"path", h::path_name(r.path)}};
          if (cfg.timing) row["wall_time_ms"] = r.wall_time_ms;
          trials.push_back(row);
        }
        Json doc = h::summary_to_json(report);
        doc["trials"] = std::move(trials);
        body = doc.dump(1) + "\n";
      }
      const std::string summary = h::summary_to_json(report).dump(1) + "\n";
      if (est_out.empty()) {
        std::cout << body;
        std::cerr << summary;
      } else {
        write_text(est_out, body);
        if (g.format == "csv") write_text(est_out + ".summary.json", summary);
      }
      return kExitOk;
    }

    if (chk->parsed()) {
      opts.seed = g.seed;
      opts.counting_log_n = opts.hitting_log_n;
      if (count >= 0) {
        const auto c = static_cast<std::uint64_t>(count);
        opts.tv_instances = opts.hitting_cases = opts.a1_sets = opts.counting_sizes = c;
        opts.atoms_cases = opts.fact54_cases = c;
      }
      const h::CheckReport rep = h::run_check(which, opts);
      if (g.format == "json") {
        std::cout << Json{{"check", rep.name},
                          {"cases", rep.cases},
                          {"failures", rep.failures},
                          {"passed", rep.passed()},
                          {"details", rep.details}}
                         .dump(1)
                  << "\n";
      } else {
        for (const auto& line : rep.lines) std::cout << rep.name << ": " << line << "\n";
        std::cout << rep.name << ": " << (rep.passed() ? "PASS" : "FAIL") << " (" << rep.failures
                  << " failing of " << rep.cases << ")\n";
      }
      return rep.passed() ? kExitOk : kExitCheckFailed;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
