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

#include "spectraff/forms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace spectraff {

// ------------------------------------------------------------ VectorSpace

VectorSpace::VectorSpace(FieldPtr field, std::uint32_t dim, const Caps& caps)
    : field_(std::move(field)), dim_(dim) {
  if (!field_) throw std::invalid_argument("null field");
  if (dim_ == 0) throw std::invalid_argument("dimension must be >= 1");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < dim_; ++i) {
    size *= field_->q();
    caps.require_field(size, "vector space F_" + std::to_string(field_->q()) +
                                 "^" + std::to_string(dim_));
  }
  size_ = static_cast<std::uint32_t>(size);
}

std::uint32_t VectorSpace::encode(std::span<const FqElement> x) const {
  if (x.size() != dim_) throw std::invalid_argument("dimension mismatch");
  std::uint32_t code = 0;
  for (std::size_t i = dim_; i-- > 0;) code = code * field_->q() + x[i].code;
  return code;
}

FqVector VectorSpace::decode(std::uint32_t index) const {
  FqVector out(dim_);
  for (std::uint32_t i = 0; i < dim_; ++i) {
    out[i] = FqElement{index % field_->q()};
    index /= field_->q();
  }
  return out;
}

FqVector VectorSpace::add(std::span<const FqElement> x, std::span<const FqElement> y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("dimension mismatch");
  FqVector out(dim_);
  for (std::uint32_t i = 0; i < dim_; ++i) out[i] = field_->add(x[i], y[i]);
  return out;
}

FqVector VectorSpace::sub(std::span<const FqElement> x, std::span<const FqElement> y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("dimension mismatch");
  FqVector out(dim_);
  for (std::uint32_t i = 0; i < dim_; ++i) out[i] = field_->sub(x[i], y[i]);
  return out;
}

FqVector VectorSpace::scale(FqElement c, std::span<const FqElement> x) const {
  FqVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = field_->mul(c, x[i]);
  return out;
}

bool VectorSpace::is_zero(std::span<const FqElement> x) const {
  return std::all_of(x.begin(), x.end(), [](FqElement c) { return c.code == 0; });
}

// ---------------------------------------------------------------- matrices

FqMatrix FqMatrix::identity(const FieldCtx& f, std::uint32_t dim) {
  FqMatrix m{dim, std::vector<FqElement>(static_cast<std::size_t>(dim) * dim, f.zero())};
  for (std::uint32_t i = 0; i < dim; ++i) m.entries[i * dim + i] = f.one();
  return m;
}

FqMatrix FqMatrix::from_codes(const FieldCtx& f,
                              const std::vector<std::vector<std::uint32_t>>& rows) {
  FqMatrix m;
  m.dim = static_cast<std::uint32_t>(rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw std::invalid_argument("matrix must be square");
    for (auto c : row) m.entries.push_back(f.element(c));
  }
  return m;
}

bool FqMatrix::is_symmetric() const {
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t j = i + 1; j < dim; ++j) {
      if (at(i, j) != at(j, i)) return false;
    }
  }
  return true;
}

FqElement determinant(const FieldCtx& f, const FqMatrix& m) {
  const std::uint32_t n = m.dim;
  if (n == 0) return f.one();
  std::vector<FqElement> a = m.entries;
  auto at = [&](std::uint32_t i, std::uint32_t j) -> FqElement& { return a[i * n + j]; };
  FqElement prev = f.one();
  bool negate = false;
  for (std::uint32_t k = 0; k + 1 < n; ++k) {
    if (at(k, k).code == 0) {
      std::uint32_t swap = k + 1;
      while (swap < n && at(swap, k).code == 0) ++swap;
      if (swap == n) return f.zero();
      for (std::uint32_t j = 0; j < n; ++j) std::swap(at(k, j), at(swap, j));
      negate = !negate;
    }
    for (std::uint32_t i = k + 1; i < n; ++i) {
      for (std::uint32_t j = k + 1; j < n; ++j) {
        const FqElement num = f.sub(f.mul(at(i, j), at(k, k)), f.mul(at(i, k), at(k, j)));
        at(i, j) = f.div(num, prev);
      }
      at(i, k) = f.zero();
    }
    prev = at(k, k);
  }
  const FqElement det = at(n - 1, n - 1);
  return negate ? f.neg(det) : det;
}

// ------------------------------------------------------------------- forms

namespace {

FqElement bilinear_eval(const FieldCtx& f, const FqMatrix& m, std::span<const FqElement> x,
                        std::span<const FqElement> y) {
  if (x.size() != m.dim || y.size() != m.dim) throw std::invalid_argument("dimension mismatch");
  FqElement acc = f.zero();
  for (std::uint32_t i = 0; i < m.dim; ++i) {
    if (x[i].code == 0) continue;
    FqElement row = f.zero();
    for (std::uint32_t j = 0; j < m.dim; ++j) row = f.add(row, f.mul(m.at(i, j), y[j]));
    acc = f.add(acc, f.mul(x[i], row));
  }
  return acc;
}

void check_nondegenerate(const FieldCtx& f, const FqMatrix& m) {
  if (m.dim == 0 || m.entries.size() != static_cast<std::size_t>(m.dim) * m.dim) {
    throw std::invalid_argument("form matrix must be square and nonempty");
  }
  for (const auto& e : m.entries) {
    if (e.code >= f.q()) throw std::invalid_argument("matrix entry outside the field");
  }
  if (determinant(f, m).code == 0) throw std::invalid_argument("degenerate form matrix");
}

}  // namespace

BilinearForm::BilinearForm(FieldPtr field, FqMatrix matrix)
    : field_(std::move(field)), matrix_(std::move(matrix)) {
  check_nondegenerate(*field_, matrix_);
}

FqElement BilinearForm::eval(std::span<const FqElement> x, std::span<const FqElement> y) const {
  return bilinear_eval(*field_, matrix_, x, y);
}

QuadraticForm::QuadraticForm(FieldPtr field, FqMatrix matrix)
    : field_(std::move(field)), matrix_(std::move(matrix)) {
  if (!matrix_.is_symmetric()) throw std::invalid_argument("quadratic form matrix must be symmetric");
  check_nondegenerate(*field_, matrix_);
}

FqElement QuadraticForm::eval(std::span<const FqElement> x) const {
  return bilinear_eval(*field_, matrix_, x, x);
}

FqElement QuadraticForm::polar(std::span<const FqElement> x, std::span<const FqElement> y) const {
  return bilinear_eval(*field_, matrix_, x, y);
}

Form make_form(FieldPtr field, FqMatrix matrix, FormKind kind) {
  if (kind == FormKind::quadratic) return QuadraticForm(std::move(field), std::move(matrix));
  return BilinearForm(std::move(field), std::move(matrix));
}

QuadraticForm sum_of_squares(FieldPtr field, std::uint32_t dim) {
  auto m = FqMatrix::identity(*field, dim);
  return QuadraticForm(std::move(field), std::move(m));
}

QuadraticForm skew_form(FieldPtr field, std::uint32_t dim) {
  if (dim < 2) throw std::invalid_argument("skew form needs dim >= 2");
  auto m = FqMatrix::identity(*field, dim);
  m.entries[1] = field->one();
  m.entries[dim] = field->one();
  m.entries[dim + 1] = field->from_int(2);
  return QuadraticForm(std::move(field), std::move(m));
}

Sphere sphere(const QuadraticForm& form, FqElement radius, const Caps& caps) {
  const VectorSpace space(form.field_ptr(), form.dim(), caps);
  Sphere s{radius, {}};
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    if (form.eval(space.decode(i)) == radius) s.points.push_back(i);
  }
  return s;
}

std::string to_string(LineType t) {
  switch (t) {
    case LineType::isotropic: return "isotropic";
    case LineType::square: return "square-type";
    case LineType::nonsquare: return "nonsquare-type";
  }
  return "unknown";
}

LineType classify_line(const QuadraticForm& form, std::span<const FqElement> x) {
  if (std::all_of(x.begin(), x.end(), [](FqElement c) { return c.code == 0; })) {
    throw std::invalid_argument("classify_line needs a nonzero vector");
  }
  const FqElement v = form.eval(x);
  if (v.code == 0) return LineType::isotropic;
  return form.field().is_square(v) ? LineType::square : LineType::nonsquare;
}

FqVector canonical_line_rep(const VectorSpace& space, std::span<const FqElement> x) {
  if (space.is_zero(x)) throw std::invalid_argument("zero vector spans no line");
  std::uint32_t best = space.encode(x);
  for (std::uint32_t c = 2; c < space.field().q(); ++c) {
    best = std::min(best, space.encode(space.scale(FqElement{c}, x)));
  }
  return space.decode(best);
}

nlohmann::json form_descriptor(const FqMatrix& m, const FieldCtx& f, FormKind kind) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint32_t i = 0; i < m.dim; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::uint32_t j = 0; j < m.dim; ++j) row.push_back(f.format(m.at(i, j)));
    rows.push_back(row);
  }
  return {{"field", context_descriptor(f, nullptr)},
          {"dim", m.dim},
          {"kind", kind == FormKind::quadratic ? "quadratic" : "bilinear"},
          {"matrix", rows}};
}

FqMatrix matrix_from_json(const FieldCtx& f, const nlohmann::json& rows) {
  FqMatrix m;
  m.dim = static_cast<std::uint32_t>(rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw std::invalid_argument("matrix must be square");
    for (const auto& e : row) {
      if (e.is_string()) {
        m.entries.push_back(f.parse(e.get<std::string>()));
      } else {
        m.entries.push_back(f.element(e.get<std::uint32_t>()));
      }
    }
  }
  return m;
}

std::string sphere_csv(const VectorSpace& space, const Sphere& s) {
  std::ostringstream out;
  out << "index";
  for (std::uint32_t i = 1; i <= space.dim(); ++i) out << ",x" << i;
  out << '\n';
  for (auto idx : s.points) {
    out << idx;
    for (auto c : space.decode(idx)) out << ',' << c.code;
    out << '\n';
  }
  return out.str();
}

}  // namespace spectraff
