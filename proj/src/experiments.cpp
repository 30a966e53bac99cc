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

#include "spectraff/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace spectraff {

namespace {

using boost::multiprecision::cpp_int;

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

std::uint64_t saturating_pow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e--) {
    if (__builtin_mul_overflow(out, b, &out)) return std::numeric_limits<std::uint64_t>::max();
  }
  return out;
}

ReportRow base_row(const FamilyInstance& inst, const std::string& check, std::uint64_t seed) {
  ReportRow row;
  row.family = to_string(inst.spec.family);
  row.params = inst.params();
  row.check = check;
  row.seed = seed;
  return row;
}

double ratio_of(double a, double b) { return b == 0.0 ? 0.0 : a / b; }

}  // namespace

// ----------------------------------------------------------- equations

std::string to_string(SystemKind k) {
  switch (k) {
    case SystemKind::norm: return "norm";
    case SystemKind::bilinear: return "bilinear";
    case SystemKind::quadratic: return "quadratic";
    case SystemKind::sumproduct: return "sumproduct";
  }
  return "unknown";
}

SystemKind system_kind_from_string(const std::string& s) {
  if (s == "norm") return SystemKind::norm;
  if (s == "bilinear") return SystemKind::bilinear;
  if (s == "quadratic") return SystemKind::quadratic;
  if (s == "sumproduct") return SystemKind::sumproduct;
  throw std::invalid_argument("unknown system kind '" + s + "'");
}

Family family_of(SystemKind k) {
  switch (k) {
    case SystemKind::norm: return Family::norm;
    case SystemKind::bilinear: return Family::product;
    case SystemKind::quadratic: return Family::euclidean;
    case SystemKind::sumproduct: return Family::sumproduct;
  }
  return Family::norm;
}

std::uint32_t pair_slot(std::uint32_t t, std::uint32_t i, std::uint32_t j) {
  if (i >= j || j >= t) throw std::invalid_argument("pair_slot needs i < j < t");
  // pairs (0,1)..(0,t-1), (1,2).. precede (i, j)
  return i * t - i * (i + 1) / 2 + (j - i - 1);
}

nlohmann::json SystemSpec::to_json() const {
  nlohmann::json lam = nlohmann::json::array();
  for (const auto& l : lambdas) lam.push_back(l ? nlohmann::json(*l) : nlohmann::json("free"));
  return {{"kind", to_string(kind)}, {"t", t}, {"lambdas", lam}, {"ambient", ambient.to_json()}};
}

SystemSpec SystemSpec::from_json(const nlohmann::json& j) {
  SystemSpec s;
  s.kind = system_kind_from_string(j.at("kind").get<std::string>());
  s.t = j.value("t", 2u);
  if (j.contains("ambient")) {
    nlohmann::json amb = j.at("ambient");
    if (!amb.contains("family")) amb["family"] = to_string(family_of(s.kind));
    s.ambient = FamilySpec::from_json(amb);
  }
  s.ambient.family = family_of(s.kind);
  s.ambient.lambda.reset();
  if (j.contains("lambdas")) {
    for (const auto& l : j.at("lambdas")) {
      if (l.is_null() || (l.is_string() && l.get<std::string>() == "free")) {
        s.lambdas.emplace_back();
      } else {
        s.lambdas.emplace_back(l.get<std::uint32_t>());
      }
    }
  }
  return s;
}

std::uint64_t solve_count(const FamilyInstance& inst, const SystemSpec& spec,
                          const VertexSubset& e, const Caps& caps) {
  if (inst.spec.family != family_of(spec.kind)) {
    throw std::invalid_argument("system kind " + to_string(spec.kind) + " needs the " +
                                to_string(family_of(spec.kind)) + " family");
  }
  if (!inst.value) throw std::invalid_argument("family has no pair value function");
  const std::uint32_t t = spec.t;
  if (t < 2 || t > caps.max_tuple_len) {
    throw std::invalid_argument("t must be in 2.." + std::to_string(caps.max_tuple_len));
  }
  const std::uint32_t slots = t * (t - 1) / 2;
  std::vector<std::optional<std::uint32_t>> lambdas = spec.lambdas;
  if (lambdas.empty()) lambdas.resize(slots);
  if (lambdas.size() != slots) {
    throw std::invalid_argument("expected " + std::to_string(slots) + " lambda entries");
  }
  if (e.universe() != inst.n_vertices) throw std::invalid_argument("subset universe does not match family");
  caps.require_tuples(saturating_pow(e.size(), t), "system solve count");

  const auto& members = e.members();
  const std::size_t m = members.size();
  if (m == 0) return 0;
  std::vector<std::uint32_t> values(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) values[i * m + j] = inst.value(members[i], members[j]).code;
  }

  std::vector<std::size_t> pick(t);
  std::uint64_t count = 0;
  auto recurse = [&](auto&& self, std::uint32_t depth) -> void {
    if (depth == t) {
      ++count;
      return;
    }
    for (std::size_t x = 0; x < m; ++x) {
      bool ok = true;
      for (std::uint32_t i = 0; i < depth && ok; ++i) {
        const auto& l = lambdas[pair_slot(t, i, depth)];
        ok = !l || values[pick[i] * m + x] == *l;
      }
      if (!ok) continue;
      pick[depth] = x;
      self(self, depth + 1);
    }
  };
  recurse(recurse, 0);
  return count;
}

std::uint64_t solve_count_pair(const FamilyInstance& inst, FqElement lambda,
                               const VertexSubset& a, const VertexSubset& b) {
  if (!inst.value) throw std::invalid_argument("family has no pair value function");
  if (a.universe() != inst.n_vertices || b.universe() != inst.n_vertices) {
    throw std::invalid_argument("subset universe does not match family");
  }
  std::uint64_t count = 0;
  for (auto x : a.members()) {
    for (auto y : b.members()) count += inst.value(x, y) == lambda;
  }
  return count;
}

ExperimentReport equation_experiment(const FamilyInstance& inst, FqElement lambda,
                                     const VertexSubset& a, const VertexSubset& b,
                                     std::uint64_t seed) {
  ExperimentReport rep;
  const std::uint64_t count = solve_count_pair(inst, lambda, a, b);
  const std::uint64_t q = inst.field->q();
  const std::uint64_t prod = static_cast<std::uint64_t>(a.size()) * b.size();

  ReportRow row = base_row(inst, "equation_count", seed);
  row.params["lambda_value"] = inst.field->format(lambda);
  row.size = std::to_string(a.size()) + "x" + std::to_string(b.size());
  row.observed = static_cast<double>(count);
  if (inst.n_vertices > 0 && inst.d_claim > 0) {
    row.expected = static_cast<double>(inst.d_claim) * prod / inst.n_vertices;
    row.bound = std::sqrt(inst.lambda_claim_sq.value() * prod);
    row.ratio = ratio_of(row.observed, *row.expected);
  }

  // size hypothesis and whether it is strong enough to assert solvability
  std::optional<bool> hyp;
  bool strict = false;
  switch (inst.spec.family) {
    case Family::norm: {
      const std::uint64_t t = ipow(q, inst.spec.n + 2);
      hyp = prod >= t;
      strict = prod > t;
      break;
    }
    case Family::sumproduct: {
      const std::uint64_t t = 2 * ipow(q, inst.spec.d + 2);
      hyp = prod >= t;
      strict = prod > t;
      break;
    }
    case Family::product: {
      const std::uint64_t t = ipow(q, inst.spec.d + 1);
      hyp = prod >= t;
      strict = prod > t;
      break;
    }
    default:
      break;
  }
  row.hypothesis_met = hyp;
  rep.rows.push_back(row);

  ReportRow solv = row;
  solv.check = "equation_solvable";
  solv.observed = count > 0 ? 1.0 : 0.0;
  solv.expected.reset();
  solv.bound.reset();
  solv.ratio.reset();
  if (strict) solv.satisfied = count > 0;
  rep.rows.push_back(solv);
  return rep;
}

// ------------------------------------------------------------ coverage

std::optional<double> coverage_threshold(const FamilySpec& family, std::uint32_t t, bool sphere) {
  const double q = family.q();
  switch (family.family) {
    case Family::euclidean:
      return std::pow(q, (static_cast<double>(family.d) + t - (sphere ? 2.0 : 1.0)) / 2.0);
    case Family::product:
      return std::pow(q, (static_cast<double>(family.d) + t - 1.0) / 2.0);
    case Family::norm:
      return std::pow(q, (static_cast<double>(family.n) + t) / 2.0);
    case Family::sumproduct:
      return std::pow(q, (static_cast<double>(family.d) + t) / 2.0);
    case Family::noneuclidean:
      return std::nullopt;
  }
  return std::nullopt;
}

ExperimentReport coverage_experiment(const CoverageParams& params, const Caps& caps) {
  if (params.family.lambda) throw std::invalid_argument("coverage needs the colored family (lambda = all)");
  if (params.sphere && params.family.family != Family::euclidean) {
    throw std::invalid_argument("sphere mode needs the Euclidean family");
  }
  const FamilyInstance inst = build_family(params.family, caps);
  const ColoredGraph& cg = *inst.colored;

  std::vector<std::uint32_t> universe;
  if (params.sphere) {
    universe = sphere(*inst.quadratic, inst.field->one(), caps).points;
  } else {
    universe.resize(inst.n_vertices);
    std::iota(universe.begin(), universe.end(), 0u);
  }
  for (auto s : params.sizes) {
    if (s > universe.size()) {
      throw std::invalid_argument("size " + std::to_string(s) + " exceeds universe of " +
                                  std::to_string(universe.size()));
    }
  }

  const std::size_t items = params.sizes.size() * params.trials;
  std::vector<CoverageCount> results(items);
  std::vector<std::uint64_t> seeds(items);
  for (std::size_t i = 0; i < items; ++i) seeds[i] = derive_seed(params.seed, i);
  parallel_for(items, params.jobs, [&](std::size_t i) {
    const std::uint32_t size = params.sizes[i / params.trials];
    Rng rng(seeds[i]);
    std::vector<std::uint32_t> picked;
    for (auto k : rng.sample(static_cast<std::uint32_t>(universe.size()), size)) picked.push_back(universe[k]);
    results[i] = kt_color_coverage(cg, VertexSubset(cg.n(), std::move(picked)), params.t, caps);
  });

  ExperimentReport rep;
  const auto threshold = coverage_threshold(params.family, params.t, params.sphere);
  nlohmann::json p = inst.params();
  p["t"] = params.t;
  p["mode"] = params.sphere ? "sphere" : "full";
  std::vector<double> means;
  for (std::size_t si = 0; si < params.sizes.size(); ++si) {
    const std::uint32_t size = params.sizes[si];
    double total = 0.0;
    const double max_patterns = static_cast<double>(results.empty() ? 0 : results[0].max_patterns);
    for (std::uint32_t tr = 0; tr < params.trials; ++tr) {
      const std::size_t i = si * params.trials + tr;
      const auto& r = results[i];
      ReportRow row = base_row(inst, "kt_coverage", seeds[i]);
      row.params = p;
      row.size = std::to_string(size);
      row.observed = static_cast<double>(r.labeled);
      row.expected = static_cast<double>(r.max_patterns);
      row.ratio = ratio_of(row.observed, *row.expected);
      if (threshold) row.hypothesis_met = size >= *threshold;
      rep.rows.push_back(row);
      row.check = "kt_coverage_orbits";
      row.observed = static_cast<double>(r.orbits);
      row.expected.reset();
      row.ratio.reset();
      rep.rows.push_back(row);
      total += static_cast<double>(r.labeled);
    }
    const double mean = params.trials ? total / params.trials : 0.0;
    means.push_back(mean);
    ReportRow row = base_row(inst, "kt_coverage_mean", params.seed);
    row.params = p;
    row.size = std::to_string(size);
    row.observed = mean;
    row.expected = max_patterns;
    row.ratio = ratio_of(mean, max_patterns);
    if (threshold) row.hypothesis_met = size >= *threshold;
    rep.rows.push_back(row);
  }
  // mean coverage against |E|, reported only
  std::vector<std::size_t> order(params.sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return params.sizes[a] < params.sizes[b]; });
  bool monotone = true;
  for (std::size_t k = 1; k < order.size(); ++k) monotone &= means[order[k]] >= means[order[k - 1]];
  ReportRow row = base_row(inst, "kt_coverage_monotone", params.seed);
  row.params = p;
  row.size = std::to_string(params.sizes.size());
  row.observed = monotone ? 1.0 : 0.0;
  rep.rows.push_back(row);
  return rep;
}

// -------------------------------------------------------------- pinned

ExperimentReport pinned_experiment(const FamilyInstance& inst, const VertexSubset& pins,
                                   const VertexSubset& targets, std::uint64_t seed,
                                   bool pair_chain, const Caps& caps) {
  if (!inst.colored) throw std::invalid_argument("pinned sets need the colored family (lambda = all)");
  const ColoredGraph& cg = *inst.colored;
  const std::uint64_t q = inst.field->q();
  const bool zero_is_color = cg.has_color(0);

  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t color_incidences = 0;
  std::uint64_t full_colors = 0;
  std::vector<std::uint64_t> sizes;
  for (auto y : pins.members()) {
    const PinnedSet ps = pinned_set(cg, y, targets, inst.value);
    std::uint64_t k = ps.colors.size();
    if (!zero_is_color && ps.zero_realized.value_or(false)) ++k;
    sizes.push_back(k);
    ++histogram[k];
    color_incidences += ps.colors.size();
    full_colors += ps.colors.size() == cg.colors().size();
  }

  std::optional<bool> hyp;
  const double ptotal = static_cast<double>(pins.size()) * targets.size();
  switch (inst.spec.family) {
    case Family::norm: hyp = ptotal >= std::pow(static_cast<double>(q), inst.spec.n + 2.0); break;
    case Family::product:
    case Family::euclidean:
      hyp = targets.size() >= std::pow(static_cast<double>(q), (inst.spec.d + 1.0) / 2.0);
      break;
    default: break;
  }

  ExperimentReport rep;
  const std::string size_tag = std::to_string(pins.size()) + "x" + std::to_string(targets.size());
  for (const auto& [k, c] : histogram) {
    ReportRow row = base_row(inst, "pinned_size_hist", seed);
    row.size = std::to_string(k);
    row.observed = static_cast<double>(c);
    row.expected = static_cast<double>(pins.size());
    row.ratio = ratio_of(row.observed, *row.expected);
    rep.rows.push_back(row);
  }
  for (double eps : {0.1, 0.25}) {
    std::uint64_t hit = 0;
    for (auto k : sizes) hit += static_cast<double>(k) >= (1.0 - eps) * static_cast<double>(q);
    ReportRow row = base_row(inst, eps == 0.1 ? "pinned_fraction_eps0.1" : "pinned_fraction_eps0.25", seed);
    row.size = size_tag;
    row.observed = static_cast<double>(hit);
    row.expected = static_cast<double>(pins.size());
    row.bound = (1.0 - eps) * static_cast<double>(q);
    row.ratio = ratio_of(row.observed, *row.expected);
    row.hypothesis_met = hyp;
    rep.rows.push_back(row);
  }
  {
    ReportRow row = base_row(inst, "pinned_full_color_pins", seed);
    row.size = size_tag;
    row.observed = static_cast<double>(full_colors);
    row.expected = static_cast<double>(pins.size());
    row.ratio = ratio_of(row.observed, *row.expected);
    rep.rows.push_back(row);
  }

  // Cauchy-Schwarz chain, one color at a time: S^r_y(U) over pins y.
  std::uint64_t indicator_total = 0;
  std::uint64_t chain_ok = 0, chain_runs = 0;
  for (auto r : cg.colors()) {
    const std::int32_t one[1] = {r};
    ++chain_runs;
    try {
      const auto ind = colored_star_indicator(cg, targets, pins, one, caps);
      indicator_total += ind.sum_i;
      ++chain_ok;
    } catch (const AssertionFailure&) {
    }
  }
  {
    ReportRow row = base_row(inst, "cs_chain_t1", seed);
    row.size = size_tag;
    row.observed = static_cast<double>(chain_ok);
    row.expected = static_cast<double>(chain_runs);
    row.satisfied = chain_ok == chain_runs;
    rep.rows.push_back(row);
    ReportRow cons = base_row(inst, "pinned_indicator_consistency", seed);
    cons.size = size_tag;
    cons.observed = static_cast<double>(indicator_total);
    cons.expected = static_cast<double>(color_incidences);
    cons.satisfied = indicator_total == color_incidences;
    rep.rows.push_back(cons);
  }
  const std::uint64_t ncolors = cg.colors().size();
  const std::uint64_t pair_visits = ncolors * ncolors * pins.size() * pins.size();
  if (pair_chain && pair_visits <= std::min<std::uint64_t>(caps.tuple_budget, 20'000'000)) {
    std::uint64_t ok = 0, runs = 0;
    for (auto r1 : cg.colors()) {
      for (auto r2 : cg.colors()) {
        const std::int32_t two[2] = {r1, r2};
        ++runs;
        try {
          colored_star_indicator(cg, targets, pins, two, caps);
          ++ok;
        } catch (const AssertionFailure&) {
        }
      }
    }
    ReportRow row = base_row(inst, "cs_chain_t2", seed);
    row.size = size_tag;
    row.observed = static_cast<double>(ok);
    row.expected = static_cast<double>(runs);
    row.satisfied = ok == runs;
    rep.rows.push_back(row);
  }
  return rep;
}

ExperimentReport pinned_experiment(const PinnedParams& params, const Caps& caps) {
  if (params.family.lambda) throw std::invalid_argument("pinned sets need the colored family (lambda = all)");
  const FamilyInstance inst = build_family(params.family, caps);
  const std::uint32_t n = inst.n_vertices;
  if (params.set_size > n || params.second_size.value_or(0) > n) {
    throw std::invalid_argument("subset size exceeds universe of " + std::to_string(n));
  }
  Rng first(derive_seed(params.seed, 0));
  const VertexSubset a(n, first.sample(n, params.set_size));
  if (params.family.family == Family::norm) {
    Rng second(derive_seed(params.seed, 1));
    const VertexSubset b(n, second.sample(n, params.second_size.value_or(params.set_size)));
    return pinned_experiment(inst, a, b, params.seed, params.pair_chain, caps);
  }
  return pinned_experiment(inst, a, a, params.seed, params.pair_chain, caps);
}

// --------------------------------------------------------- sum-product

SumProductResult sumproduct_check(const FieldCtx& field, const std::vector<FqElement>& a_in,
                                  std::uint32_t d, std::uint64_t edge_budget) {
  if (d < 2) throw std::invalid_argument("sum-product check needs d >= 2");
  std::vector<FqElement> a = a_in;
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  const std::uint32_t q = field.q();
  for (auto x : a) {
    if (x.code >= q) throw std::invalid_argument("element outside F_q");
    if (x.code == 0) throw std::invalid_argument("0 must not be in A");
  }

  std::vector<bool> products(q, false), sums(q, false);
  for (auto x : a) {
    for (auto y : a) products[field.mul(x, y).code] = true;
  }
  for (auto x : a) sums[x.code] = true;
  for (std::uint32_t k = 1; k < d; ++k) {
    std::vector<bool> next(q, false);
    for (std::uint32_t s = 0; s < q; ++s) {
      if (!sums[s]) continue;
      for (auto x : a) next[field.add(FqElement{s}, x).code] = true;
    }
    sums.swap(next);
  }

  SumProductResult r;
  r.q = q;
  r.d = d;
  r.size = a.size();
  r.product_size = static_cast<std::uint64_t>(std::count(products.begin(), products.end(), true));
  r.sum_size = static_cast<std::uint64_t>(std::count(sums.begin(), sums.end(), true));

  const cpp_int na = r.size;
  const cpp_int p_term = boost::multiprecision::pow(na, d) *
                         boost::multiprecision::pow(cpp_int(r.product_size), d - 1) * r.sum_size;
  const cpp_int lhs = boost::multiprecision::pow(na, 2 * d - 1);
  // |A|^{2d-1} <= P/q + sqrt(q^d P)  <=>  qL - P <= 0 or (qL - P)^2 <= q^{d+2} P
  const cpp_int gap = cpp_int(q) * lhs - p_term;
  r.holds = gap <= 0 || gap * gap <= boost::multiprecision::pow(cpp_int(q), d + 2) * p_term;
  r.lhs = static_cast<double>(lhs);
  r.rhs = static_cast<double>(p_term) / q + std::sqrt(std::pow(static_cast<double>(q), d) * static_cast<double>(p_term));
  r.growth = std::pow(static_cast<double>(r.product_size), d - 1.0) * static_cast<double>(r.sum_size);
  r.growth_floor = std::min(static_cast<double>(q) * std::pow(static_cast<double>(r.size), d - 1.0),
                            std::pow(static_cast<double>(r.size), 3.0 * d - 2.0) /
                                std::pow(static_cast<double>(q), d - 1.0));

  // E_A = dA x (A.A)^{d-1}, F_A = (-A) x (1/A)^{d-1}; (s, p) ~ (c, v) iff s + c = <p, v>
  if (r.size == 0) return r;
  const std::uint64_t e_size = r.sum_size * saturating_pow(r.product_size, d - 1);
  const std::uint64_t f_vectors = saturating_pow(r.size, d - 1);
  if (e_size != std::numeric_limits<std::uint64_t>::max() &&
      f_vectors != std::numeric_limits<std::uint64_t>::max() &&
      e_size <= edge_budget / std::max<std::uint64_t>(f_vectors, 1)) {
    std::vector<FqElement> prod_list, sum_list, inverses;
    for (std::uint32_t c = 0; c < q; ++c) {
      if (products[c]) prod_list.push_back(FqElement{c});
      if (sums[c]) sum_list.push_back(FqElement{c});
    }
    std::vector<bool> neg_a(q, false);
    for (auto x : a) {
      neg_a[field.neg(x).code] = true;
      inverses.push_back(field.inv(x));
    }
    // all (d-1)-vectors over a list, as flat index tuples
    auto tuples = [&](const std::vector<FqElement>& list) {
      std::vector<std::vector<FqElement>> out{{}};
      for (std::uint32_t k = 0; k + 1 < d; ++k) {
        std::vector<std::vector<FqElement>> next;
        for (const auto& v : out) {
          for (auto x : list) {
            auto w = v;
            w.push_back(x);
            next.push_back(std::move(w));
          }
        }
        out.swap(next);
      }
      return out;
    };
    const auto p_vecs = tuples(prod_list);
    const auto v_vecs = tuples(inverses);
    std::uint64_t edges = 0;
    for (const auto& pv : p_vecs) {
      for (const auto& vv : v_vecs) {
        FqElement dot = field.zero();
        for (std::uint32_t k = 0; k + 1 < d; ++k) dot = field.add(dot, field.mul(pv[k], vv[k]));
        for (auto s : sum_list) edges += neg_a[field.sub(dot, s).code];
      }
    }
    r.edges = edges;
    r.edges_lower = cpp_int(edges) >= lhs;
    const cpp_int ef = cpp_int(e_size) * cpp_int(r.size) * f_vectors;
    const cpp_int egap = cpp_int(q) * edges - ef;
    r.edges_upper = egap <= 0 || egap * egap <= 2 * boost::multiprecision::pow(cpp_int(q), d + 1) * ef;
  }
  return r;
}

ExperimentReport sumproduct_rows(const SumProductResult& r, std::uint64_t seed) {
  ExperimentReport rep;
  const nlohmann::json params{{"q", r.q}, {"d", r.d}};
  auto row = [&](const std::string& check) {
    ReportRow out;
    out.family = "sumproduct_estimate";
    out.params = params;
    out.check = check;
    out.size = std::to_string(r.size);
    out.seed = seed;
    return out;
  };
  ReportRow ineq = row("spe_inequality");
  ineq.observed = r.lhs;
  ineq.bound = r.rhs;
  ineq.ratio = ratio_of(r.lhs, r.rhs);
  ineq.satisfied = r.holds;
  rep.rows.push_back(ineq);

  ReportRow growth = row(r.d == 2 ? "garaev_min" : "spe_growth");
  growth.observed = r.growth;
  growth.expected = r.growth_floor;
  growth.ratio = ratio_of(r.growth, r.growth_floor);
  rep.rows.push_back(growth);

  if (r.edges) {
    ReportRow lower = row("spe_edges_lower");
    lower.observed = static_cast<double>(*r.edges);
    lower.bound = std::pow(static_cast<double>(r.size), 2.0 * r.d - 1.0);
    lower.satisfied = *r.edges_lower;
    rep.rows.push_back(lower);
    ReportRow upper = row("spe_edges_upper");
    upper.observed = static_cast<double>(*r.edges);
    upper.satisfied = *r.edges_upper;
    rep.rows.push_back(upper);
  }
  return rep;
}

ExperimentReport sumproduct_experiment(std::uint32_t q, std::uint32_t d, std::uint32_t count,
                                       std::uint64_t seed, const Caps& caps) {
  const auto field = build_field_of_order(q, caps);
  ExperimentReport rep;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    Rng rng(s);
    const auto size = static_cast<std::uint32_t>(1 + rng.below(q - 1));
    std::vector<FqElement> a;
    for (auto k : rng.sample(q - 1, size)) a.push_back(FqElement{k + 1});
    const auto r = sumproduct_check(*field, a, d);
    auto rows = sumproduct_rows(r, s);
    for (auto& row : rows.rows) {
      nlohmann::json codes = nlohmann::json::array();
      for (auto x : a) codes.push_back(x.code);
      row.params["A"] = codes;
    }
    rep.append(rows);
  }
  return rep;
}

// -------------------------------------------------------------- mixing

Rational scaled_claim(const Rational& lambda_sq, double claim_scale) {
  if (claim_scale == 1.0) return lambda_sq;
  if (!(claim_scale > 0.0)) throw std::invalid_argument("claim scale must be positive");
  for (std::int64_t den = 1; den <= 1000; ++den) {
    const double num = claim_scale * static_cast<double>(den);
    if (std::abs(num - std::round(num)) < 1e-9) {
      const auto n = static_cast<std::int64_t>(std::round(num));
      return Rational{lambda_sq.num * n * n, lambda_sq.den * den * den};
    }
  }
  throw std::invalid_argument("claim scale must be a ratio of integers up to 1000");
}

ExperimentReport certificate_rows(const SpectralCert& cert, std::uint64_t seed) {
  ExperimentReport rep;
  ReportRow deg;
  deg.family = cert.family;
  deg.params = cert.params;
  deg.check = "degree";
  deg.size = std::to_string(cert.n);
  deg.observed = cert.lambda_top;
  deg.expected = cert.d_claim;
  deg.satisfied = cert.regular && cert.top_matches;
  deg.seed = seed;
  rep.rows.push_back(deg);
  ReportRow lam = deg;
  lam.check = "second_eigenvalue";
  lam.observed = cert.lambda_measured;
  lam.expected.reset();
  lam.bound = cert.lambda_claim;
  lam.ratio = ratio_of(cert.lambda_measured, cert.lambda_claim);
  lam.satisfied = cert.lambda_measured <= cert.lambda_claim + kSpectralTol;
  rep.rows.push_back(lam);
  return rep;
}

ExperimentReport mixing_rows(const Graph& g, const SpectralCert& cert, const std::string& family,
                             const nlohmann::json& params, const MixingParams& mp,
                             std::uint64_t seed, const Caps& caps) {
  ExperimentReport rep;
  const std::uint32_t n = g.n();
  if (n == 0) return rep;
  auto make_row = [&](const std::string& check) {
    ReportRow row;
    row.family = family;
    row.params = params;
    row.check = check;
    row.seed = seed;
    return row;
  };

  struct Agg {
    std::uint64_t violations = 0;
    double worst = 0.0;
  };
  Agg mixing, variance, path;
  Rng rng(seed);
  for (std::uint32_t i = 0; i < mp.pairs; ++i) {
    const auto bs = static_cast<std::uint32_t>(1 + rng.below(n));
    const auto cs = static_cast<std::uint32_t>(1 + rng.below(n));
    const VertexSubset b(n, rng.sample(n, bs));
    const VertexSubset c(n, rng.sample(n, cs));
    const std::string size = std::to_string(bs) + "x" + std::to_string(cs);
    auto record = [&](Agg& agg, const BoundCheck& chk, const std::string& name, double ratio) {
      agg.violations += !chk.satisfied;
      agg.worst = std::max(agg.worst, ratio);
      if (mp.per_pair_rows) {
        ReportRow row = make_row(name);
        row.size = size;
        row.observed = static_cast<double>(chk.observed);
        row.expected = chk.expected;
        row.bound = chk.bound;
        row.ratio = ratio;
        row.satisfied = chk.satisfied;
        rep.rows.push_back(row);
      }
    };
    const auto m = mixing_check(g, cert, b, c);
    record(mixing, m, "mixing", ratio_of(m.deviation, m.bound));
    const auto v = degree_variance(g, cert, b);
    record(variance, v, "degree_variance", ratio_of(v.deviation, v.bound));
    const auto p = path2_check(g, cert, b, c);
    record(path, p, "path2", ratio_of(p.deviation, p.bound));
  }
  if (!mp.per_pair_rows) {
    for (auto [name, agg] : {std::pair{"mixing", mixing}, std::pair{"degree_variance", variance},
                             std::pair{"path2", path}}) {
      ReportRow row = make_row(name);
      row.size = std::to_string(mp.pairs);
      row.observed = static_cast<double>(agg.violations);
      row.expected = 0.0;
      row.ratio = agg.worst;
      row.satisfied = agg.violations == 0;
      rep.rows.push_back(row);
    }
  }

  // double counting of ordered K_{s,t}, plus the star identities
  std::uint64_t kst_runs = 0, kst_bad = 0, star_bad = 0;
  Rng krng(derive_seed(seed, 0x6b7374));
  const std::uint32_t cap = std::min(n, mp.kst_max_size);
  for (std::uint32_t i = 0; i < mp.kst_pairs; ++i) {
    const auto s1 = static_cast<std::uint32_t>(1 + krng.below(cap));
    const auto s2 = static_cast<std::uint32_t>(1 + krng.below(cap));
    const VertexSubset u1(n, krng.sample(n, s1));
    const VertexSubset u2(n, krng.sample(n, s2));
    for (std::uint32_t s = 1; s <= 3; ++s) {
      for (std::uint32_t t = 1; t <= 3; ++t) {
        const auto k = kst_sum(g, u1, u2, s, t, caps);
        ++kst_runs;
        kst_bad += !k.agree() || !k.nested;
      }
    }
    star_bad += star_sum(g, u1, u2, 1) != edge_count(g, u1, u2);
    star_bad += star_sum(g, u1, u2, 2) != path2_count(g, u1, u2);
  }
  ReportRow kst = make_row("kst_double_counting");
  kst.size = std::to_string(kst_runs);
  kst.observed = static_cast<double>(kst_bad);
  kst.expected = 0.0;
  kst.satisfied = kst_bad == 0;
  rep.rows.push_back(kst);
  ReportRow star = make_row("star_identities");
  star.size = std::to_string(2 * mp.kst_pairs);
  star.observed = static_cast<double>(star_bad);
  star.expected = 0.0;
  star.satisfied = star_bad == 0;
  rep.rows.push_back(star);
  return rep;
}

ExperimentReport mixing_grid(const MixingParams& params, const Caps& caps) {
  std::vector<ExperimentReport> parts(params.families.size());
  parallel_for(params.families.size(), params.jobs, [&](std::size_t i) {
    const FamilySpec& spec = params.families[i];
    const std::uint64_t seed = derive_seed(params.seed, i);
    try {
      if (!spec.lambda) throw std::invalid_argument("mixing grid needs a single lambda");
      const FamilyInstance inst = build_family(spec, caps);
      const Rational claim = scaled_claim(inst.lambda_claim_sq, params.claim_scale);
      SpectralCert cert = certify_ndl(*inst.graph, inst.d_claim, claim, caps);
      cert.family = to_string(spec.family);
      cert.params = inst.params();
      if (params.claim_scale != 1.0) cert.params["claim_scale"] = params.claim_scale;
      ExperimentReport rep = certificate_rows(cert, seed);
      if (cert.satisfied) {
        rep.append(mixing_rows(*inst.graph, cert, cert.family, cert.params, params, seed, caps));
      }
      parts[i] = std::move(rep);
    } catch (const CapExceeded& e) {
      throw CapExceeded(spec.tag() + ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error(spec.tag() + ": " + e.what());
    }
  });
  ExperimentReport out;
  for (const auto& p : parts) out.append(p);
  return out;
}

}  // namespace spectraff
