// Copyright 2026 The spectraff Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point: construct, certify, mix, count, coverage,
// pinned, sumprod and acceptance.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectraff/acceptance.hpp"
#include "spectraff/caps.hpp"
#include "spectraff/constructions.hpp"
#include "spectraff/counting.hpp"
#include "spectraff/experiments.hpp"
#include "spectraff/report.hpp"
#include "spectraff/rng.hpp"

namespace sf = spectraff;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilyFlags {
  std::string spec_path;
  std::string family;
  std::optional<std::uint32_t> q, p, r, n, d;
  std::string form;
  std::string matrix;
  std::string lambda;
  std::string loops;

  void attach(CLI::App* app) {
    app->add_option("--spec", spec_path, "family spec JSON file (flags override its fields)");
    app->add_option("--family", family, "norm | product | sumproduct | euclidean | noneuclidean");
    app->add_option("--q", q, "field order (prime power)");
    app->add_option("--p", p, "field characteristic");
    app->add_option("--r", r, "field degree over F_p");
    app->add_option("--n", n, "extension degree (norm family)");
    app->add_option("--d", d, "dimension");
    app->add_option("--form", form, "identity | skew | matrix");
    app->add_option("--matrix", matrix, "form matrix as JSON, e.g. [[1,0],[0,2]]");
    app->add_option("--lambda", lambda,
                    "value (integer code or field literal), relation index for noneuclidean, or all");
    app->add_option("--loops", loops, "keep | strip");
  }

  sf::FamilySpec resolve() const {
    nlohmann::json j = nlohmann::json::object();
    if (!spec_path.empty()) {
      std::ifstream in(spec_path);
      if (!in) throw UsageError("cannot read spec file " + spec_path);
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("bad spec JSON: " + std::string(e.what()));
      }
      if (j.contains("family") && j["family"].is_object()) j = j["family"];
    }
    if (!family.empty()) j["family"] = family;
    if (q) {
      j["q"] = *q;
      j.erase("p");
      j.erase("r");
    }
    if (p) {
      j["p"] = *p;
      j.erase("q");
    }
    if (r) j["r"] = *r;
    if (n) j["n"] = *n;
    if (d) j["d"] = *d;
    if (!form.empty()) j["form"] = form;
    if (!matrix.empty()) {
      try {
        j["matrix"] = nlohmann::json::parse(matrix);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError("bad --matrix JSON: " + std::string(e.what()));
      }
    }
    if (!lambda.empty()) {
      if (lambda == "all") {
        j["lambda"] = "all";
      } else if (lambda.find_first_not_of("0123456789") == std::string::npos) {
        j["lambda"] = std::stoul(lambda);
      } else {
        j["lambda"] = lambda;
      }
    }
    if (!loops.empty()) j["loops"] = loops;
    if (!j.contains("family")) throw UsageError("--family (or --spec) is required");
    if (!j.contains("q") && !j.contains("p")) throw UsageError("--q or --p is required");
    try {
      return sf::FamilySpec::from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("bad family parameters: ") + e.what());
    }
  }
};

struct OutputFlags {
  std::string out;
  std::string format = "csv";
  std::string summary;

  void attach(CLI::App* app, bool with_summary = true) {
    app->add_option("--out", out, "output file (default: stdout)");
    app->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    if (with_summary) app->add_option("--summary", summary, "write per-check summary JSON here");
  }

  void write_text(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
  }

  void write(const sf::ExperimentReport& rep) const {
    write_text(format == "json" ? rep.to_json().dump(2) + "\n" : rep.to_csv());
    if (!summary.empty()) {
      std::ofstream f(summary, std::ios::binary);
      if (!f) throw UsageError("cannot write " + summary);
      f << rep.summary().dump(2) << "\n";
    }
  }
};

struct Common {
  std::uint64_t seed = sf::kDefaultSeed;
  std::optional<std::uint32_t> max_vertices;
  unsigned jobs = 0;

  void attach(CLI::App* app, bool with_jobs) {
    app->add_option("--seed", seed, "base seed");
    app->add_option("--max-vertices", max_vertices, "lower the vertex cap");
    if (with_jobs) app->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  }

  sf::Caps caps() const {
    const sf::Caps base = sf::Caps::from_env();
    return max_vertices ? base.with_max_vertices(*max_vertices) : base;
  }
};

/// Every admissible single value for the family: F_q^* (all of F_q for
/// sum-product), or the relation indices for the non-Euclidean family.
std::vector<sf::FamilySpec> expand_lambdas(const sf::FamilySpec& spec) {
  if (spec.lambda) return {spec};
  std::vector<sf::FamilySpec> out;
  const std::uint32_t q = spec.q();
  std::uint32_t lo = 1, hi = q - 1;
  if (spec.family == sf::Family::sumproduct) lo = 0;
  if (spec.family == sf::Family::noneuclidean) {
    lo = 2;
    hi = (q - 1) / 2;
  }
  for (std::uint32_t l = lo; l <= hi; ++l) {
    sf::FamilySpec s = spec;
    s.lambda = l;
    out.push_back(s);
  }
  return out;
}

sf::VertexSubset random_subset(std::uint32_t n, std::optional<std::uint32_t> size, sf::Rng& rng) {
  if (!size || *size >= n) return sf::VertexSubset::all(n);
  return sf::VertexSubset(n, rng.sample(n, *size));
}

std::string self_path(const char* argv0) {
  char buf[4096];
  const ssize_t len = readlink("/proc/self/exe", buf, sizeof buf - 1);
  if (len <= 0) return argv0;
  buf[len] = '\0';
  return buf;
}

int run_construct(const FamilyFlags& ff, const Common& common, const OutputFlags& of) {
  const auto spec = ff.resolve();
  const auto inst = sf::build_family(spec, common.caps());
  if (inst.graph) {
    of.write_text(sf::edge_list_csv(*inst.graph, spec.tag()));
  } else if (inst.colored) {
    of.write_text(sf::edge_list_csv(*inst.colored, spec.tag()));
  } else {
    of.write_text(sf::edge_list_csv(inst.scheme->graph, spec.tag()));
  }
  return 0;
}

int run_certify(const FamilyFlags& ff, const Common& common, const OutputFlags& of,
                double claim_scale) {
  const auto spec = ff.resolve();
  if (!spec.lambda) throw UsageError("certify needs a single --lambda");
  const auto caps = common.caps();
  const auto inst = sf::build_family(spec, caps);
  const auto claim = sf::scaled_claim(inst.lambda_claim_sq, claim_scale);
  sf::SpectralCert cert = sf::certify_ndl(*inst.graph, inst.d_claim, claim, caps);
  cert.family = sf::to_string(spec.family);
  cert.params = inst.params();
  if (claim_scale != 1.0) cert.params["claim_scale"] = claim_scale;
  if (of.format == "csv") {
    of.write(sf::certificate_rows(cert, common.seed));
  } else {
    of.write_text(cert.to_json().dump(2) + "\n");
  }
  if (!cert.satisfied) {
    std::cerr << "certificate not satisfied: lambda(G) = " << cert.lambda_measured
              << ", claim = " << cert.lambda_claim << "\n";
    return kExitFailure;
  }
  return 0;
}

int finish(const sf::ExperimentReport& rep, const OutputFlags& of) {
  of.write(rep);
  if (!rep.ok()) {
    std::cerr << rep.failures() << " hard check(s) failed\n";
    return kExitFailure;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectraff: spectral graphs over finite fields and their counting experiments"};
  app.require_subcommand(1);
  const std::string exe = self_path(argv[0]);

  // construct
  FamilyFlags construct_ff;
  Common construct_common;
  OutputFlags construct_out;
  auto* construct = app.add_subcommand("construct", "emit the edge list of a graph (or colored graph)");
  construct_ff.attach(construct);
  construct_common.attach(construct, false);
  construct->add_option("--out", construct_out.out, "output file (default: stdout)");

  // certify
  FamilyFlags certify_ff;
  Common certify_common;
  OutputFlags certify_out;
  certify_out.format = "json";
  double claim_scale = 1.0;
  auto* certify = app.add_subcommand("certify", "check the (n, d, lambda) claim of a single graph");
  certify_ff.attach(certify);
  certify_common.attach(certify, false);
  certify_out.attach(certify, false);
  certify->add_option("--claim-scale", claim_scale, "multiply the claimed lambda");

  // mix
  FamilyFlags mix_ff;
  Common mix_common;
  OutputFlags mix_out;
  sf::MixingParams mp;
  auto* mix = app.add_subcommand("mix", "mixing, degree-variance, path and K_{s,t} checks");
  mix_ff.attach(mix);
  mix_common.attach(mix, true);
  mix_out.attach(mix);
  mix->add_option("--pairs", mp.pairs, "random subset pairs for the mixing checks");
  mix->add_option("--kst-pairs", mp.kst_pairs, "random subset pairs for K_{s,t} counting");
  mix->add_option("--kst-max-size", mp.kst_max_size, "largest subset used for K_{s,t} counting");
  mix->add_option("--claim-scale", mp.claim_scale, "multiply the claimed lambda");
  mix->add_flag("--per-pair", mp.per_pair_rows, "one row per subset pair");

  // count
  FamilyFlags count_ff;
  Common count_common;
  OutputFlags count_out;
  std::string what = "equation";
  std::string system_path;
  std::optional<std::uint32_t> size_a, size_b;
  std::uint32_t kst_s = 2, kst_t = 2;
  auto* count = app.add_subcommand("count", "exact counts: kst | solve | equation");
  count_ff.attach(count);
  count_common.attach(count, false);
  count_out.attach(count);
  count->add_option("--what", what, "kst | solve | equation")
      ->check(CLI::IsMember({"kst", "solve", "equation"}));
  count->add_option("--system", system_path, "system spec JSON (for --what solve)");
  count->add_option("--size-a,--size", size_a, "size of the first random subset (default: all)");
  count->add_option("--size-b", size_b, "size of the second random subset (default: all)");
  count->add_option("--s", kst_s, "K_{s,t}: tuple length on the first side");
  count->add_option("--t", kst_t, "K_{s,t}: tuple length on the second side");

  // coverage
  FamilyFlags coverage_ff;
  Common coverage_common;
  OutputFlags coverage_out;
  sf::CoverageParams cp;
  auto* coverage = app.add_subcommand("coverage", "colored K_t pattern coverage on random sets");
  coverage_ff.attach(coverage);
  coverage_common.attach(coverage, true);
  coverage_out.attach(coverage);
  coverage->add_option("--t", cp.t, "clique size");
  coverage->add_option("--sizes", cp.sizes, "set sizes")->required()->delimiter(',');
  coverage->add_option("--trials", cp.trials, "trials per size");
  coverage->add_flag("--sphere", cp.sphere, "sample from the unit sphere (euclidean)");

  // pinned
  FamilyFlags pinned_ff;
  Common pinned_common;
  OutputFlags pinned_out;
  sf::PinnedParams pp;
  bool no_pair_chain = false;
  auto* pinned = app.add_subcommand("pinned", "pinned value sets and the Cauchy-Schwarz chain");
  pinned_ff.attach(pinned);
  pinned_common.attach(pinned, false);
  pinned_out.attach(pinned);
  pinned->add_option("--size", pp.set_size, "|E| (or |A| for the norm family)")->required();
  pinned->add_option("--second-size", pp.second_size, "|B| for the norm family");
  pinned->add_flag("--no-pair-chain", no_pair_chain, "skip the t = 2 chain");

  // sumprod
  Common sumprod_common;
  OutputFlags sumprod_out;
  std::uint32_t sp_q = 0, sp_d = 2, sp_count = 100;
  std::vector<std::uint32_t> sp_set;
  auto* sumprod = app.add_subcommand("sumprod", "sum-product estimate on random or given sets");
  sumprod_common.attach(sumprod, false);
  sumprod_out.attach(sumprod);
  sumprod->add_option("--q", sp_q, "field order")->required();
  sumprod->add_option("--d", sp_d, "dimension (>= 2)");
  sumprod->add_option("--count", sp_count, "number of random sets");
  sumprod->add_option("--set", sp_set, "explicit set of nonzero element codes")->delimiter(',');

  // acceptance
  sf::AcceptanceOptions ao;
  Common acc_common;
  std::string acc_report;
  std::vector<int> only;
  bool no_time = false;
  auto* acceptance = app.add_subcommand("acceptance", "run the acceptance criteria");
  acc_common.attach(acceptance, true);
  acceptance->add_option("--only", only, "criterion ids to run")->delimiter(',');
  acceptance->add_option("--report", acc_report, "write all rows as CSV here");
  acceptance->add_flag("--no-time-limits", no_time, "ignore time budgets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*construct) return run_construct(construct_ff, construct_common, construct_out);
    if (*certify) return run_certify(certify_ff, certify_common, certify_out, claim_scale);

    if (*mix) {
      mp.families = expand_lambdas(mix_ff.resolve());
      mp.seed = mix_common.seed;
      mp.jobs = mix_common.jobs;
      return finish(sf::mixing_grid(mp, mix_common.caps()), mix_out);
    }

    if (*count) {
      const auto caps = count_common.caps();
      sf::Rng rng(count_common.seed);
      if (what == "solve") {
        if (system_path.empty()) throw UsageError("--what solve needs --system");
        std::ifstream in(system_path);
        if (!in) throw UsageError("cannot read " + system_path);
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw UsageError("bad system JSON: " + std::string(e.what()));
        }
        const auto sys = sf::SystemSpec::from_json(j);
        const auto inst = sf::build_family(sys.ambient, caps, false);
        const auto e = random_subset(inst.n_vertices, size_a, rng);
        const auto solutions = sf::solve_count(inst, sys, e, caps);
        sf::ExperimentReport rep;
        sf::ReportRow row;
        row.family = sf::to_string(sys.ambient.family);
        row.params = sys.to_json();
        row.params["E"] = e.members();
        row.check = "solve_count";
        row.size = std::to_string(e.size());
        row.observed = static_cast<double>(solutions);
        row.seed = count_common.seed;
        rep.rows.push_back(row);
        return finish(rep, count_out);
      }
      const auto spec = count_ff.resolve();
      if (!spec.lambda) throw UsageError("--what " + what + " needs a single --lambda");
      if (what == "equation") {
        const auto inst = sf::build_family(spec, caps, false);
        const auto a = random_subset(inst.n_vertices, size_a, rng);
        const auto b = random_subset(inst.n_vertices, size_b, rng);
        return finish(sf::equation_experiment(inst, sf::FqElement{*spec.lambda}, a, b, count_common.seed),
                      count_out);
      }
      const auto inst = sf::build_family(spec, caps);
      const auto u1 = random_subset(inst.n_vertices, size_a, rng);
      const auto u2 = random_subset(inst.n_vertices, size_b, rng);
      const auto k = sf::kst_sum(*inst.graph, u1, u2, kst_s, kst_t, caps);
      sf::ExperimentReport rep;
      sf::ReportRow row;
      row.family = sf::to_string(spec.family);
      row.params = inst.params();
      row.params["s"] = kst_s;
      row.params["t"] = kst_t;
      row.params["z_side"] = k.z_side;
      if (k.nested) row.params["nested"] = *k.nested;
      row.params["injective"] = k.injective;
      row.check = "kst_double_counting";
      row.size = std::to_string(u1.size()) + "x" + std::to_string(u2.size());
      row.observed = static_cast<double>(k.y_side);
      row.expected = k.expected;
      row.satisfied = k.agree();
      row.seed = count_common.seed;
      rep.rows.push_back(row);
      return finish(rep, count_out);
    }

    if (*coverage) {
      cp.family = coverage_ff.resolve();
      cp.family.lambda.reset();
      cp.seed = coverage_common.seed;
      cp.jobs = coverage_common.jobs;
      return finish(sf::coverage_experiment(cp, coverage_common.caps()), coverage_out);
    }

    if (*pinned) {
      pp.family = pinned_ff.resolve();
      pp.family.lambda.reset();
      pp.seed = pinned_common.seed;
      pp.pair_chain = !no_pair_chain;
      return finish(sf::pinned_experiment(pp, pinned_common.caps()), pinned_out);
    }

    if (*sumprod) {
      const auto caps = sumprod_common.caps();
      if (sp_set.empty()) {
        return finish(sf::sumproduct_experiment(sp_q, sp_d, sp_count, sumprod_common.seed, caps), sumprod_out);
      }
      const auto field = sf::build_field_of_order(sp_q, caps);
      std::vector<sf::FqElement> a;
      for (auto c : sp_set) a.push_back(sf::FqElement{c});
      return finish(sf::sumproduct_rows(sf::sumproduct_check(*field, a, sp_d), sumprod_common.seed), sumprod_out);
    }

    if (*acceptance) {
      ao.seed = acc_common.seed;
      ao.jobs = acc_common.jobs;
      ao.only = std::set<int>(only.begin(), only.end());
      ao.cli_path = exe;
      ao.enforce_time = !no_time;
      sf::ExperimentReport rep;
      const auto results = sf::run_acceptance(ao, acc_common.caps(), &rep);
      bool all = true;
      for (const auto& r : results) {
        std::cout << sf::format_result(r) << "\n";
        all &= r.pass;
      }
      if (!acc_report.empty()) {
        std::ofstream f(acc_report, std::ios::binary);
        f << rep.to_csv();
      }
      return all ? 0 : kExitFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sf::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const sf::AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
