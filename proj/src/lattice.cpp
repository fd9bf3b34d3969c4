#include "vag/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <utility>

namespace vag {

namespace {

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int abs_checked(Int a) { return a < 0 ? checked::neg(a) : a; }

}  // namespace

Int gcd(Int a, Int b) {
  a = abs_checked(a);
  b = abs_checked(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DomainError("IntMatrix::from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Int v) { return v == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

IntVector IntMatrix::apply(std::span<const Int> v) const {
  if (v.size() != cols_) throw DomainError("IntMatrix::apply: dimension mismatch");
  IntVector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Int acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      Int a = (*this)(r, c);
      if (a != 0 && v[c] != 0) acc = checked::fma(acc, a, v[c]);
    }
    out[r] = acc;
  }
  return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::negate_row(std::size_t r) {
  for (auto& v : row(r)) v = checked::neg(v);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = checked::neg((*this)(r, c));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, Int k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(target, c) = checked::fma((*this)(target, c), k, (*this)(source, c));
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, Int k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, target) = checked::fma((*this)(r, target), k, (*this)(r, source));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("IntMatrix product: dimension mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = checked::fma(out(i, j), aik, b(k, j));
    }
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "]\n";
  }
  return os;
}

std::vector<Int> SmithForm::invariant_factors() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(diagonal(i, i));
  return out;
}

namespace {

// Working state for the Smith reduction. Column operations are mirrored on
// the inverse column transform as the inverse row operation.
struct SmithWork {
  IntMatrix a, u, v, vinv;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
    vinv.swap_rows(i, j);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    u.negate_row(i);
  }
  void add_row(std::size_t target, std::size_t source, Int k) {
    a.add_row_multiple(target, source, k);
    u.add_row_multiple(target, source, k);
  }
  void add_col(std::size_t target, std::size_t source, Int k) {
    a.add_col_multiple(target, source, k);
    v.add_col_multiple(target, source, k);
    vinv.add_row_multiple(source, target, checked::neg(k));
  }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithWork w{m, IntMatrix::identity(rows), IntMatrix::identity(cols), IntMatrix::identity(cols)};

  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    std::size_t pi = rows, pj = cols;
    Int best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        Int v = abs_checked(w.a(i, j));
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (w.a(i, t) == 0) continue;
        w.add_row(i, t, checked::neg(w.a(i, t) / w.a(t, t)));
        if (w.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (w.a(t, j) == 0) continue;
        w.add_col(j, t, checked::neg(w.a(t, j) / w.a(t, t)));
        if (w.a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Remainders are strictly smaller than the pivot; promote the least.
        Int cur = abs_checked(w.a(t, t));
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i) {
          Int v = abs_checked(w.a(i, t));
          if (v != 0 && v < cur) cur = v, bi = i, bj = t;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          Int v = abs_checked(w.a(t, j));
          if (v != 0 && v < cur) cur = v, bi = t, bj = j;
        }
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (w.a(i, j) % w.a(t, t) != 0) {
            w.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (w.a(t, t) < 0) w.negate_row(t);
  }

  SmithForm out;
  out.rank = t;
  out.diagonal = std::move(w.a);
  out.row_transform = std::move(w.u);
  out.col_transform = std::move(w.v);
  out.col_inverse = std::move(w.vinv);
  return out;
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix tr = IntMatrix::identity(rows);
  std::vector<std::size_t> pivots;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    tr.swap_rows(i, j);
  };
  auto add_row = [&](std::size_t target, std::size_t source, Int k) {
    a.add_row_multiple(target, source, k);
    tr.add_row_multiple(target, source, k);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    bool has_pivot = false;
    for (;;) {
      std::size_t best_row = rows;
      Int best = 0;
      for (std::size_t i = r; i < rows; ++i) {
        Int v = abs_checked(a(i, c));
        if (v != 0 && (best == 0 || v < best)) best = v, best_row = i;
      }
      if (best == 0) break;
      has_pivot = true;
      swap_rows(r, best_row);
      bool more = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        add_row(i, r, checked::neg(a(i, c) / a(r, c)));
        if (a(i, c) != 0) more = true;
      }
      if (!more) break;
    }
    if (!has_pivot) continue;
    if (a(r, c) < 0) {
      a.negate_row(r);
      tr.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) add_row(i, r, checked::neg(floor_div(a(i, c), a(r, c))));
    pivots.push_back(c);
    ++r;
  }
  return HermiteForm{std::move(a), std::move(tr), std::move(pivots)};
}

Sublattice::Sublattice(std::size_t dimension, const std::vector<IntVector>& generators)
    : dimension_(dimension),
      hermite_(hermite_normal_form(IntMatrix::from_rows(generators, dimension))) {}

bool Sublattice::contains(std::span<const Int> v) const {
  if (v.size() != dimension_) throw DomainError("Sublattice::contains: dimension mismatch");
  IntVector rest(v.begin(), v.end());
  const IntMatrix& h = hermite_.form;
  for (std::size_t i = 0; i < hermite_.rank(); ++i) {
    const std::size_t c = hermite_.pivot_columns[i];
    const Int p = h(i, c);
    if (rest[c] % p != 0) return false;
    const Int k = rest[c] / p;
    if (k == 0) continue;
    for (std::size_t j = 0; j < dimension_; ++j) rest[j] = checked::sub(rest[j], checked::mul(k, h(i, j)));
  }
  return std::all_of(rest.begin(), rest.end(), [](Int x) { return x == 0; });
}

}  // namespace vag
