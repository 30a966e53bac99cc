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

#pragma once

// Bilinear and quadratic forms on F_q^d, the vector-space encoding used for
// vertex indexing, and sphere / line utilities.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spectraff/caps.hpp"
#include "spectraff/field.hpp"

namespace spectraff {

using FqVector = std::vector<FqElement>;

/// F_q^d with the integer encoding sum_i code(x_i) q^i (x_0 lowest).
class VectorSpace {
 public:
  VectorSpace(FieldPtr field, std::uint32_t dim, const Caps& caps = {});

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t dim() const { return dim_; }
  std::uint32_t size() const { return size_; }

  std::uint32_t encode(std::span<const FqElement> x) const;
  FqVector decode(std::uint32_t index) const;

  FqVector add(std::span<const FqElement> x, std::span<const FqElement> y) const;
  FqVector sub(std::span<const FqElement> x, std::span<const FqElement> y) const;
  FqVector scale(FqElement c, std::span<const FqElement> x) const;
  bool is_zero(std::span<const FqElement> x) const;

 private:
  FieldPtr field_;
  std::uint32_t dim_;
  std::uint32_t size_;
};

struct FqMatrix {
  std::uint32_t dim = 0;
  std::vector<FqElement> entries;  // row-major

  static FqMatrix identity(const FieldCtx& f, std::uint32_t dim);
  static FqMatrix from_codes(const FieldCtx& f,
                             const std::vector<std::vector<std::uint32_t>>& rows);

  FqElement at(std::uint32_t i, std::uint32_t j) const { return entries[i * dim + j]; }
  bool is_symmetric() const;
};

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
FqElement determinant(const FieldCtx& f, const FqMatrix& m);

class BilinearForm {
 public:
  /// Throws std::invalid_argument for a degenerate or non-square matrix.
  BilinearForm(FieldPtr field, FqMatrix matrix);

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t dim() const { return matrix_.dim; }
  const FqMatrix& matrix() const { return matrix_; }

  FqElement eval(std::span<const FqElement> x, std::span<const FqElement> y) const;

 private:
  FieldPtr field_;
  FqMatrix matrix_;
};

class QuadraticForm {
 public:
  /// Throws std::invalid_argument for asymmetric or degenerate input.
  QuadraticForm(FieldPtr field, FqMatrix matrix);

  const FieldCtx& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::uint32_t dim() const { return matrix_.dim; }
  const FqMatrix& matrix() const { return matrix_; }

  FqElement eval(std::span<const FqElement> x) const;
  /// Associated bilinear form x^T M y.
  FqElement polar(std::span<const FqElement> x, std::span<const FqElement> y) const;
  BilinearForm bilinear() const { return BilinearForm(field_, matrix_); }

 private:
  FieldPtr field_;
  FqMatrix matrix_;
};

enum class FormKind { bilinear, quadratic };
using Form = std::variant<BilinearForm, QuadraticForm>;

Form make_form(FieldPtr field, FqMatrix matrix, FormKind kind);

/// Sum of squares on F_q^d.
QuadraticForm sum_of_squares(FieldPtr field, std::uint32_t dim);
/// A fixed non-diagonal form with determinant 1: the identity with the
/// leading 2x2 block replaced by [[1,1],[1,2]].
QuadraticForm skew_form(FieldPtr field, std::uint32_t dim);

struct Sphere {
  FqElement radius;
  std::vector<std::uint32_t> points;  // encoded, ascending
};

Sphere sphere(const QuadraticForm& form, FqElement radius, const Caps& caps = {});

enum class LineType { isotropic, square, nonsquare };
std::string to_string(LineType t);

LineType classify_line(const QuadraticForm& form, std::span<const FqElement> x);

/// The scalar multiple c*x (c != 0) with the smallest encoding.
FqVector canonical_line_rep(const VectorSpace& space, std::span<const FqElement> x);

/// {field: descriptor, dim, kind, matrix: rows of element literals}.
nlohmann::json form_descriptor(const FqMatrix& m, const FieldCtx& f, FormKind kind);
FqMatrix matrix_from_json(const FieldCtx& f, const nlohmann::json& rows);

/// CSV of sphere points: header "index,x1,...,xd", entries as element codes.
std::string sphere_csv(const VectorSpace& space, const Sphere& s);

}  // namespace spectraff
