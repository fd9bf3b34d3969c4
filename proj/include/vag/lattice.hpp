#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "vag/errors.hpp"

namespace vag {

using IntVector = std::vector<Int>;

/// Dense row-major integer matrix. All arithmetic is overflow-checked.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Int> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Int> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  IntVector column(std::size_t c) const;

  IntMatrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;

  /// Matrix-vector product M * v.
  IntVector apply(std::span<const Int> v) const;

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);
  void add_row_multiple(std::size_t target, std::size_t source, Int k);  // row_t += k row_s
  void add_col_multiple(std::size_t target, std::size_t source, Int k);  // col_t += k col_s

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// row_transform * M * col_transform = diagonal, with d_i | d_{i+1} and
/// non-negative diagonal entries. col_inverse is the inverse of col_transform.
struct SmithForm {
  IntMatrix diagonal;
  IntMatrix row_transform;
  IntMatrix col_transform;
  IntMatrix col_inverse;
  std::size_t rank = 0;

  std::vector<Int> invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite form: transform * M = form. The nonzero rows of form come
/// first, pivots are positive and strictly increasing in column, and entries
/// above each pivot lie in [0, pivot).
struct HermiteForm {
  IntMatrix form;
  IntMatrix transform;
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// Integer span of a finite set of vectors, with exact membership testing.
class Sublattice {
 public:
  Sublattice(std::size_t dimension, const std::vector<IntVector>& generators);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t rank() const noexcept { return hermite_.rank(); }
  bool contains(std::span<const Int> v) const;
  const HermiteForm& hermite() const noexcept { return hermite_; }

 private:
  std::size_t dimension_;
  HermiteForm hermite_;
};

Int gcd(Int a, Int b);

}  // namespace vag
