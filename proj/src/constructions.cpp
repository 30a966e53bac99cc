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

#include "spectraff/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace spectraff {

namespace {

std::string vector_label(const FieldCtx& f, const FqVector& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ';';
    out += f.format(x[i]);
  }
  return out + ")";
}

std::vector<FqVector> decode_all(const VectorSpace& space) {
  std::vector<FqVector> out(space.size());
  for (std::uint32_t i = 0; i < space.size(); ++i) out[i] = space.decode(i);
  return out;
}

void require_symmetric(const BilinearForm& b, const char* what) {
  if (!b.matrix().is_symmetric()) {
    throw std::invalid_argument(std::string(what) + " needs a symmetric bilinear form");
  }
}

void require_nonzero(FqElement lambda, const char* what) {
  if (lambda.code == 0) throw std::invalid_argument(std::string(what) + ": lambda must be nonzero");
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

// Encoded difference table: diff[x * size + y] = encode(x - y).
class DifferenceCodes {
 public:
  explicit DifferenceCodes(const VectorSpace& space) : space_(space), vecs_(decode_all(space)) {}
  std::uint32_t diff(std::uint32_t x, std::uint32_t y) const {
    const auto& f = space_.field();
    std::uint32_t code = 0;
    for (std::size_t i = space_.dim(); i-- > 0;) {
      code = code * f.q() + f.sub(vecs_[x][i], vecs_[y][i]).code;
    }
    return code;
  }
  const FqVector& vec(std::uint32_t x) const { return vecs_[x]; }

 private:
  const VectorSpace& space_;
  std::vector<FqVector> vecs_;
};

std::string field_tag(const FieldCtx& f) { return "q=" + std::to_string(f.q()); }

std::vector<std::string> element_labels(const FieldCtx& f, bool include_zero) {
  std::vector<std::string> out;
  for (std::uint32_t c = include_zero ? 0 : 1; c < f.q(); ++c) out.push_back(f.format(FqElement{c}));
  return out;
}

std::vector<std::int32_t> element_colors(const FieldCtx& f, bool include_zero) {
  std::vector<std::int32_t> out;
  for (std::uint32_t c = include_zero ? 0 : 1; c < f.q(); ++c) out.push_back(static_cast<std::int32_t>(c));
  return out;
}

}  // namespace

// ------------------------------------------------------------- FamilySpec

std::string to_string(Family f) {
  switch (f) {
    case Family::norm: return "norm";
    case Family::product: return "product";
    case Family::sumproduct: return "sumproduct";
    case Family::euclidean: return "euclidean";
    case Family::noneuclidean: return "noneuclidean";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  if (s == "norm") return Family::norm;
  if (s == "product") return Family::product;
  if (s == "sumproduct") return Family::sumproduct;
  if (s == "euclidean") return Family::euclidean;
  if (s == "noneuclidean") return Family::noneuclidean;
  throw std::invalid_argument("unknown family '" + s + "'");
}

std::uint32_t FamilySpec::q() const { return static_cast<std::uint32_t>(ipow(p, r)); }

nlohmann::json FamilySpec::to_json() const {
  nlohmann::json j{{"family", to_string(family)}, {"p", p}, {"r", r}, {"form", form}};
  if (family == Family::norm) {
    j["n"] = n;
  } else {
    j["d"] = d;
  }
  if (form == "matrix") j["matrix"] = matrix;
  if (lambda) {
    j["lambda"] = *lambda;
  } else {
    j["lambda"] = "all";
  }
  j["loops"] = loops == LoopMode::keep ? "keep" : "strip";
  return j;
}

FamilySpec FamilySpec::from_json(const nlohmann::json& j) {
  FamilySpec s;
  s.family = family_from_string(j.at("family").get<std::string>());
  if (j.contains("q")) {
    const auto f = build_field_of_order(j.at("q").get<std::uint32_t>());
    s.p = f->p();
    s.r = f->r();
  } else {
    s.p = j.at("p").get<std::uint32_t>();
    s.r = j.value("r", 1u);
  }
  s.n = j.value("n", 2u);
  s.d = j.value("d", 2u);
  s.form = j.value("form", std::string("identity"));
  if (j.contains("matrix")) {
    s.matrix = j.at("matrix").get<std::vector<std::vector<std::uint32_t>>>();
    s.form = "matrix";
  }
  if (j.contains("lambda")) {
    const auto& l = j.at("lambda");
    if (l.is_string()) {
      const auto text = l.get<std::string>();
      if (text != "all") {
        const auto f = build_field(s.p, s.r);
        s.lambda = f->parse(text).code;
      }
    } else if (!l.is_null()) {
      s.lambda = l.get<std::uint32_t>();
    }
  }
  s.loops = j.value("loops", std::string("keep")) == "strip" ? LoopMode::strip : LoopMode::keep;
  return s;
}

std::string FamilySpec::tag() const {
  std::string out = to_string(family) + " q=" + std::to_string(q());
  out += family == Family::norm ? " n=" + std::to_string(n) : " d=" + std::to_string(d);
  if (family != Family::norm) out += " form=" + form;
  out += " lambda=" + (lambda ? std::to_string(*lambda) : std::string("all"));
  if (loops == LoopMode::strip) out += " loops=strip";
  return out;
}

// ------------------------------------------------------------ single graphs

Graph norm_graph(const ExtCtx& ext, FqElement lambda, LoopMode loops, const Caps& caps) {
  require_nonzero(lambda, "norm graph");
  caps.require_vertices(ext.size(), "norm graph");
  const std::uint32_t n = ext.size();
  std::vector<FqElement> norms(n);
  for (std::uint32_t x = 0; x < n; ++x) norms[x] = ext.norm(ExtElement{x});
  Graph g(n, "norm " + field_tag(ext.base()) + " n=" + std::to_string(ext.n()) +
                 " lambda=" + ext.base().format(lambda));
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = x; y < n; ++y) {
      if (x == y && loops == LoopMode::strip) continue;
      if (norms[ext.add(ExtElement{x}, ExtElement{y}).code] == lambda) g.add_edge(x, y);
    }
  }
  std::vector<std::string> labels(n);
  for (std::uint32_t x = 0; x < n; ++x) labels[x] = ext.format(ExtElement{x});
  g.set_labels(std::move(labels));
  return g;
}

Graph product_graph(const BilinearForm& b, FqElement lambda, LoopMode loops, const Caps& caps) {
  require_nonzero(lambda, "product graph");
  require_symmetric(b, "product graph");
  const VectorSpace space(b.field_ptr(), b.dim(), caps);
  const std::uint32_t n = space.size() - 1;
  caps.require_vertices(n, "product graph");
  const auto vecs = decode_all(space);
  Graph g(n, "product " + field_tag(b.field()) + " d=" + std::to_string(b.dim()) +
                 " lambda=" + b.field().format(lambda));
  std::vector<std::string> labels(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    labels[i] = vector_label(b.field(), vecs[i + 1]);
    for (std::uint32_t j = i; j < n; ++j) {
      if (i == j && loops == LoopMode::strip) continue;
      if (b.eval(vecs[i + 1], vecs[j + 1]) == lambda) g.add_edge(i, j);
    }
  }
  g.set_labels(std::move(labels));
  return g;
}

Graph sumproduct_graph(const BilinearForm& b, FqElement lambda, LoopMode loops, const Caps& caps) {
  require_symmetric(b, "sum-product graph");
  const auto& f = b.field();
  const VectorSpace space(b.field_ptr(), b.dim(), caps);
  const std::uint64_t n64 = static_cast<std::uint64_t>(space.size()) * f.q();
  caps.require_vertices(n64, "sum-product graph");
  const auto n = static_cast<std::uint32_t>(n64);
  const auto vecs = decode_all(space);
  Graph g(n, "sumproduct " + field_tag(f) + " d=" + std::to_string(b.dim()) +
                 " lambda=" + f.format(lambda));
  std::vector<std::string> labels(n);
  for (std::uint32_t bu = 0; bu < space.size(); ++bu) {
    for (std::uint32_t bv = bu; bv < space.size(); ++bv) {
      const FqElement target = f.sub(b.eval(vecs[bu], vecs[bv]), lambda);
      for (std::uint32_t a = 0; a < f.q(); ++a) {
        // a + c = target
        const FqElement c = f.sub(target, FqElement{a});
        const std::uint32_t u = sumproduct_index(f.q(), FqElement{a}, bu);
        const std::uint32_t v = sumproduct_index(f.q(), c, bv);
        if (u == v && loops == LoopMode::strip) continue;
        g.add_edge(u, v);
      }
    }
    for (std::uint32_t a = 0; a < f.q(); ++a) {
      FqVector lab{FqElement{a}};
      lab.insert(lab.end(), vecs[bu].begin(), vecs[bu].end());
      labels[sumproduct_index(f.q(), FqElement{a}, bu)] = vector_label(f, lab);
    }
  }
  g.set_labels(std::move(labels));
  return g;
}

Graph euclidean_graph(const QuadraticForm& q, FqElement lambda, const Caps& caps) {
  require_nonzero(lambda, "Euclidean graph");
  const VectorSpace space(q.field_ptr(), q.dim(), caps);
  caps.require_vertices(space.size(), "Euclidean graph");
  const DifferenceCodes diffs(space);
  std::vector<FqElement> qvals(space.size());
  for (std::uint32_t z = 0; z < space.size(); ++z) qvals[z] = q.eval(diffs.vec(z));
  Graph g(space.size(), "euclidean " + field_tag(q.field()) + " d=" + std::to_string(q.dim()) +
                            " lambda=" + q.field().format(lambda));
  std::vector<std::string> labels(space.size());
  for (std::uint32_t x = 0; x < space.size(); ++x) {
    labels[x] = vector_label(q.field(), diffs.vec(x));
    for (std::uint32_t y = x + 1; y < space.size(); ++y) {
      if (qvals[diffs.diff(x, y)] == lambda) g.add_edge(x, y);
    }
  }
  g.set_labels(std::move(labels));
  return g;
}

Graph linear_dependence_graph(const VectorSpace& space, const Caps& caps) {
  const std::uint32_t n = space.size() - 1;
  caps.require_vertices(n, "linear dependence graph");
  Graph g(n, "linear dependence " + field_tag(space.field()) + " d=" + std::to_string(space.dim()));
  for (std::uint32_t i = 1; i <= n; ++i) {
    const auto a = space.decode(i);
    for (std::uint32_t c = 2; c < space.field().q(); ++c) {
      const std::uint32_t j = space.encode(space.scale(FqElement{c}, a));
      g.add_edge(i - 1, j - 1);
    }
  }
  return g;
}

Graph same_fiber_graph(const VectorSpace& space, const Caps& caps) {
  const std::uint32_t q = space.field().q();
  const std::uint64_t n = static_cast<std::uint64_t>(space.size()) * q;
  caps.require_vertices(n, "same-fiber graph");
  Graph g(static_cast<std::uint32_t>(n), "same fiber " + field_tag(space.field()) +
                                             " d=" + std::to_string(space.dim()));
  for (std::uint32_t b = 0; b < space.size(); ++b) {
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t c = a + 1; c < q; ++c) {
        g.add_edge(sumproduct_index(q, FqElement{a}, b), sumproduct_index(q, FqElement{c}, b));
      }
    }
  }
  return g;
}

// ------------------------------------------------------------ non-Euclidean

NonEuclideanScheme noneuclidean_scheme(const QuadraticForm& form, const Caps& caps) {
  const auto& f = form.field();
  const VectorSpace space(form.field_ptr(), form.dim(), caps);
  const Sphere unit = sphere(form, f.one(), caps);
  if (unit.points.empty()) throw std::invalid_argument("unit sphere is empty");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> verts;  // (line rep, sphere point)
  for (auto code : unit.points) {
    const auto x = space.decode(code);
    const std::uint32_t neg = space.encode(space.scale(f.neg(f.one()), x));
    if (code < neg) verts.emplace_back(space.encode(canonical_line_rep(space, x)), code);
  }
  std::sort(verts.begin(), verts.end());
  const auto n = static_cast<std::uint32_t>(verts.size());
  caps.require_vertices(n, "non-Euclidean graph");

  NonEuclideanScheme s;
  s.sphere_size = static_cast<std::uint32_t>(unit.points.size());
  s.odd_dimension = form.dim() % 2 == 1;
  s.relation_count = (f.q() + 1) / 2;
  const std::uint32_t last_color = (f.q() - 1) / 2;

  // target[v] = relation index i with Q(x+y) = v defining R_i
  std::vector<std::uint8_t> target(f.q(), 0);
  auto assign = [&](FqElement v, std::uint32_t i) {
    if (target[v.code] != 0 && target[v.code] != i) {
      throw std::logic_error("relation values collide at Q = " + f.format(v));
    }
    target[v.code] = static_cast<std::uint8_t>(i);
  };
  const FqElement two = f.from_int(2);
  if (s.odd_dimension) {
    assign(f.zero(), 1);
    for (std::uint32_t i = 2; i <= last_color; ++i) {
      assign(f.add(two, f.mul(two, f.nu_pow(-static_cast<std::int64_t>(i - 1)))), i);
    }
  } else {
    const FqElement half = f.inv(two);
    for (std::uint32_t i = 1; i <= last_color; ++i) {
      assign(f.add(two, f.mul(half, f.nu_pow(i))), i);
    }
  }
  assign(two, s.relation_count);

  std::vector<std::int32_t> colors;
  std::vector<std::string> color_labels;
  for (std::uint32_t i = 2; i <= last_color; ++i) {
    colors.push_back(static_cast<std::int32_t>(i));
    color_labels.push_back("R" + std::to_string(i));
  }
  s.graph = ColoredGraph(n, colors, color_labels,
                         "noneuclidean " + field_tag(f) + " d=" + std::to_string(form.dim()));
  s.relation.assign(static_cast<std::size_t>(n) * n, 0);
  std::vector<FqVector> points(n);
  std::vector<std::string> labels(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    s.line_reps.push_back(verts[u].first);
    s.sphere_points.push_back(verts[u].second);
    points[u] = space.decode(verts[u].second);
    labels[u] = vector_label(f, points[u]);
  }
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const FqElement beta2 = f.mul(two, form.polar(points[u], points[v]));
      const std::uint8_t rp = target[f.add(two, beta2).code];
      const std::uint8_t rm = target[f.sub(two, beta2).code];
      if (rp != 0 && rm != 0 && rp != rm) {
        throw std::logic_error("ambiguous relation for vertices " + labels[u] + ", " + labels[v]);
      }
      const std::uint8_t rel = rp != 0 ? rp : rm;
      if (rel == 0) {
        throw std::logic_error("unclassified pair " + labels[u] + ", " + labels[v]);
      }
      s.relation[static_cast<std::size_t>(u) * n + v] = rel;
      s.relation[static_cast<std::size_t>(v) * n + u] = rel;
      if (rel >= 2 && rel <= last_color) s.graph.set_color(u, v, rel);
    }
  }
  s.graph.set_labels(std::move(labels));
  s.graph.finalize();
  return s;
}

// ----------------------------------------------------------------- colored

ColoredGraph colored_norm(const ExtCtx& ext, const Caps& caps) {
  caps.require_vertices(ext.size(), "colored norm graph");
  const auto& f = ext.base();
  const std::uint32_t n = ext.size();
  std::vector<FqElement> norms(n);
  for (std::uint32_t x = 0; x < n; ++x) norms[x] = ext.norm(ExtElement{x});
  ColoredGraph cg(n, element_colors(f, false), element_labels(f, false),
                  "norm " + field_tag(f) + " n=" + std::to_string(ext.n()));
  std::vector<std::string> labels(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    labels[x] = ext.format(ExtElement{x});
    for (std::uint32_t y = x; y < n; ++y) {
      const FqElement v = norms[ext.add(ExtElement{x}, ExtElement{y}).code];
      if (v.code != 0) cg.set_color(x, y, static_cast<std::int32_t>(v.code));
    }
  }
  cg.set_labels(std::move(labels));
  cg.finalize();
  return cg;
}

ColoredGraph colored_product(const BilinearForm& b, const Caps& caps) {
  require_symmetric(b, "product graph");
  const auto& f = b.field();
  const VectorSpace space(b.field_ptr(), b.dim(), caps);
  const std::uint32_t n = space.size() - 1;
  caps.require_vertices(n, "colored product graph");
  const auto vecs = decode_all(space);
  ColoredGraph cg(n, element_colors(f, false), element_labels(f, false),
                  "product " + field_tag(f) + " d=" + std::to_string(b.dim()));
  std::vector<std::string> labels(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    labels[i] = vector_label(f, vecs[i + 1]);
    for (std::uint32_t j = i; j < n; ++j) {
      const FqElement v = b.eval(vecs[i + 1], vecs[j + 1]);
      if (v.code != 0) cg.set_color(i, j, static_cast<std::int32_t>(v.code));
    }
  }
  cg.set_labels(std::move(labels));
  cg.finalize();
  return cg;
}

ColoredGraph colored_sumproduct(const BilinearForm& b, const Caps& caps) {
  require_symmetric(b, "sum-product graph");
  const auto& f = b.field();
  const VectorSpace space(b.field_ptr(), b.dim(), caps);
  const std::uint64_t n64 = static_cast<std::uint64_t>(space.size()) * f.q();
  caps.require_vertices(n64, "colored sum-product graph");
  const auto n = static_cast<std::uint32_t>(n64);
  const auto vecs = decode_all(space);
  ColoredGraph cg(n, element_colors(f, true), element_labels(f, true),
                  "sumproduct " + field_tag(f) + " d=" + std::to_string(b.dim()));
  std::vector<std::string> labels(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    const FqElement a{u % f.q()};
    const auto& bu = vecs[u / f.q()];
    FqVector lab{a};
    lab.insert(lab.end(), bu.begin(), bu.end());
    labels[u] = vector_label(f, lab);
    for (std::uint32_t v = u; v < n; ++v) {
      const FqElement c{v % f.q()};
      const FqElement lambda = f.sub(f.sub(b.eval(bu, vecs[v / f.q()]), a), c);
      cg.set_color(u, v, static_cast<std::int32_t>(lambda.code));
    }
  }
  cg.set_labels(std::move(labels));
  cg.finalize();
  return cg;
}

ColoredGraph colored_euclidean(const QuadraticForm& q, const Caps& caps) {
  const auto& f = q.field();
  const VectorSpace space(q.field_ptr(), q.dim(), caps);
  caps.require_vertices(space.size(), "colored Euclidean graph");
  const DifferenceCodes diffs(space);
  std::vector<FqElement> qvals(space.size());
  for (std::uint32_t z = 0; z < space.size(); ++z) qvals[z] = q.eval(diffs.vec(z));
  ColoredGraph cg(space.size(), element_colors(f, false), element_labels(f, false),
                  "euclidean " + field_tag(f) + " d=" + std::to_string(q.dim()));
  std::vector<std::string> labels(space.size());
  for (std::uint32_t x = 0; x < space.size(); ++x) {
    labels[x] = vector_label(f, diffs.vec(x));
    for (std::uint32_t y = x + 1; y < space.size(); ++y) {
      const FqElement v = qvals[diffs.diff(x, y)];
      if (v.code != 0) cg.set_color(x, y, static_cast<std::int32_t>(v.code));
    }
  }
  cg.set_labels(std::move(labels));
  cg.finalize();
  return cg;
}

// ----------------------------------------------------------- build_family

nlohmann::json FamilyInstance::params() const {
  nlohmann::json j{{"q", field->q()}};
  if (spec.family == Family::norm) {
    j["n"] = spec.n;
  } else {
    j["d"] = spec.d;
    j["form"] = spec.form;
  }
  if (spec.lambda) {
    j["lambda_value"] = spec.family == Family::noneuclidean
                            ? "R" + std::to_string(*spec.lambda)
                            : field->format(FqElement{*spec.lambda});
  } else {
    j["lambda_value"] = "all";
  }
  return j;
}

FamilyInstance build_family(const FamilySpec& spec, const Caps& caps, bool with_graphs) {
  FamilyInstance inst;
  inst.spec = spec;
  inst.field = build_field(spec.p, spec.r, caps);
  const auto& f = *inst.field;
  const std::uint64_t q = f.q();
  if (spec.lambda && spec.family != Family::noneuclidean && *spec.lambda >= q) {
    throw std::invalid_argument("lambda code outside F_q");
  }

  auto make_matrix = [&](std::uint32_t dim) {
    if (spec.form == "identity") return FqMatrix::identity(f, dim);
    if (spec.form == "skew") return skew_form(inst.field, dim).matrix();
    if (spec.form == "matrix") return FqMatrix::from_codes(f, spec.matrix);
    throw std::invalid_argument("unknown form '" + spec.form + "'");
  };

  switch (spec.family) {
    case Family::norm: {
      inst.ext = build_extension(inst.field, spec.n, caps);
      const ExtCtx& ext = *inst.ext;
      inst.n_vertices = ext.size();
      inst.d_claim = static_cast<std::uint32_t>(ext.norm_fiber_size());
      inst.lambda_claim_sq = Rational{static_cast<std::int64_t>(ext.size()), 1};
      auto norms = std::make_shared<std::vector<FqElement>>(ext.size());
      for (std::uint32_t x = 0; x < ext.size(); ++x) (*norms)[x] = ext.norm(ExtElement{x});
      inst.value = [ext = inst.ext, norms](std::uint32_t u, std::uint32_t v) {
        return (*norms)[ext->add(ExtElement{u}, ExtElement{v}).code];
      };
      if (with_graphs && spec.lambda) {
        inst.graph = norm_graph(ext, FqElement{*spec.lambda}, spec.loops, caps);
      } else if (with_graphs) {
        inst.colored = colored_norm(ext, caps);
      }
      break;
    }
    case Family::product: {
      inst.bilinear.emplace(inst.field, make_matrix(spec.d));
      inst.space.emplace(inst.field, spec.d, caps);
      inst.n_vertices = inst.space->size() - 1;
      inst.d_claim = static_cast<std::uint32_t>(ipow(q, spec.d - 1));
      inst.lambda_claim_sq = Rational{static_cast<std::int64_t>(2 * ipow(q, spec.d - 1)), 1};
      const auto vecs = std::make_shared<std::vector<FqVector>>(decode_all(*inst.space));
      inst.value = [b = *inst.bilinear, vecs](std::uint32_t u, std::uint32_t v) {
        return b.eval((*vecs)[u + 1], (*vecs)[v + 1]);
      };
      if (with_graphs && spec.lambda) {
        inst.graph = product_graph(*inst.bilinear, FqElement{*spec.lambda}, spec.loops, caps);
      } else if (with_graphs) {
        inst.colored = colored_product(*inst.bilinear, caps);
      }
      break;
    }
    case Family::sumproduct: {
      inst.bilinear.emplace(inst.field, make_matrix(spec.d));
      inst.space.emplace(inst.field, spec.d, caps);
      inst.n_vertices = inst.space->size() * f.q();
      inst.d_claim = static_cast<std::uint32_t>(ipow(q, spec.d));
      inst.lambda_claim_sq = Rational{static_cast<std::int64_t>(2 * ipow(q, spec.d)), 1};
      const auto vecs = std::make_shared<std::vector<FqVector>>(decode_all(*inst.space));
      inst.value = [b = *inst.bilinear, vecs, field = inst.field](std::uint32_t u, std::uint32_t v) {
        const std::uint32_t qq = field->q();
        const FqElement prod = b.eval((*vecs)[u / qq], (*vecs)[v / qq]);
        return field->sub(field->sub(prod, FqElement{u % qq}), FqElement{v % qq});
      };
      if (with_graphs && spec.lambda) {
        inst.graph = sumproduct_graph(*inst.bilinear, FqElement{*spec.lambda}, spec.loops, caps);
      } else if (with_graphs) {
        inst.colored = colored_sumproduct(*inst.bilinear, caps);
      }
      break;
    }
    case Family::euclidean: {
      inst.quadratic.emplace(inst.field, make_matrix(spec.d));
      inst.space.emplace(inst.field, spec.d, caps);
      inst.n_vertices = inst.space->size();
      inst.lambda_claim_sq = Rational{static_cast<std::int64_t>(4 * ipow(q, spec.d - 1)), 1};
      const auto vecs = std::make_shared<std::vector<FqVector>>(decode_all(*inst.space));
      inst.value = [qf = *inst.quadratic, vecs, sp = *inst.space](std::uint32_t u, std::uint32_t v) {
        return qf.eval(sp.sub((*vecs)[u], (*vecs)[v]));
      };
      if (spec.lambda) {
        const FqElement lambda{*spec.lambda};
        inst.d_claim = static_cast<std::uint32_t>(sphere(*inst.quadratic, lambda, caps).points.size());
        if (with_graphs) inst.graph = euclidean_graph(*inst.quadratic, lambda, caps);
      } else if (with_graphs) {
        inst.colored = colored_euclidean(*inst.quadratic, caps);
      }
      break;
    }
    case Family::noneuclidean: {
      inst.quadratic.emplace(inst.field, make_matrix(spec.d));
      inst.space.emplace(inst.field, spec.d, caps);
      inst.scheme = noneuclidean_scheme(*inst.quadratic, caps);
      inst.n_vertices = inst.scheme->n();
      // |lambda| <= 2.5 q^{(d-2)/2}
      inst.lambda_claim_sq = Rational{static_cast<std::int64_t>(25 * ipow(q, spec.d - 2)), 4};
      if (spec.lambda) {
        const auto rel = static_cast<std::int32_t>(*spec.lambda);
        if (!inst.scheme->graph.has_color(rel)) {
          throw std::invalid_argument("relation R" + std::to_string(rel) +
                                      " is not a color (need 2 <= i <= (q-1)/2)");
        }
        inst.graph = inst.scheme->graph.class_graph(rel);
        inst.d_claim = inst.graph->regular_degree().value_or(0);
      } else {
        inst.colored = inst.scheme->graph;
      }
      break;
    }
  }
  return inst;
}

}  // namespace spectraff
