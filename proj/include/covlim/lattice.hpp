#pragma once

// Exact integer matrices, Smith and column Hermite normal forms, and
// sublattices of Z^n.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "covlim/bigint.hpp"
#include "covlim/word.hpp"

namespace covlim {

using IntVector = std::vector<Integer>;

class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  /// Row-major literal, e.g. {{2, 4}, {6, 8}}.
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    for (const auto& r : rows) {
      if (r.size() != cols_) throw input_error("ragged matrix literal");
      for (long long x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw input_error("column has wrong length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  /// Z^source -> Z^target keeping the first `target` coordinates.
  static IntMatrix deletion(std::size_t source, std::size_t target) {
    if (target > source) throw input_error("deletion projection must not increase rank");
    IntMatrix m(target, source);
    for (std::size_t i = 0; i < target; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::vector<IntVector> columns() const {
    std::vector<IntVector> cs;
    for (std::size_t j = 0; j < cols_; ++j) cs.push_back(column(j));
    return cs;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += c * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& c) {
    if (c == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += c * (*this)(src, j);
  }
  /// col[dst] += c * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += c * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

  IntMatrix block_columns(std::size_t first, std::size_t count) const {
    IntMatrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }

  IntMatrix block_rows(std::size_t first, std::size_t count) const {
    IntMatrix m(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
    return m;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw input_error("matrix dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols() != v.size()) throw input_error("matrix-vector dimension mismatch");
  IntVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) r[i] += a(i, k) * v[k];
  return r;
}

/// [a | b]
inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw input_error("hconcat row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline IntMatrix matrix_power(const IntMatrix& a, unsigned k) {
  IntMatrix r = IntMatrix::identity(a.rows());
  for (unsigned i = 0; i < k; ++i) r = r * a;
  return r;
}

inline std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

inline std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

/// Abelianization of a free group homomorphism: column k is the exponent
/// vector of the image of x_k.
inline IntMatrix abelianize(const FreeHom& h) {
  IntMatrix m(h.target_rank, h.source_rank);
  for (int k = 0; k < h.source_rank; ++k) {
    auto e = exponent_vector(h.images[k]);
    for (int i = 0; i < h.target_rank; ++i) m(i, k) = e[i];
  }
  return m;
}

// ---------------------------------------------------------------------------

/// m = U * D * V with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix D = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);
  // Invariant m == U * D * V. A row op D <- E D is balanced by U <- U E^-1,
  // a column op D <- D F by V <- F^-1 V.
  auto row_swap = [&](std::size_t a, std::size_t b) { D.swap_rows(a, b); U.swap_cols(a, b); };
  auto col_swap = [&](std::size_t a, std::size_t b) { D.swap_cols(a, b); V.swap_rows(a, b); };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& c) {
    D.add_row(dst, src, c);
    U.add_col(src, dst, -c);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& c) {
    D.add_col(dst, src, c);
    V.add_row(src, dst, -c);
  };

  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // smallest nonzero entry of the trailing block goes to the pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (D(i, j) != 0 && (!best || abs_value(D(i, j)) < abs_value(D(best->first, best->second))))
          best = {i, j};
    if (!best) break;
    row_swap(t, best->first);
    col_swap(t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i)
        if (D(i, t) != 0) {
          row_add(i, t, -(D(i, t) / D(t, t)));
          if (D(i, t) != 0) clean = false;
        }
      for (std::size_t j = t + 1; j < C; ++j)
        if (D(t, j) != 0) {
          col_add(j, t, -(D(t, j) / D(t, t)));
          if (D(t, j) != 0) clean = false;
        }
      if (!clean) {
        // move the smallest remainder in the pivot row/column to the pivot
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < R; ++i)
          if (D(i, t) != 0 && abs_value(D(i, t)) < abs_value(D(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < C; ++j)
          if (D(t, j) != 0 && abs_value(D(t, j)) < abs_value(D(bi, bj))) bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (D(i, j) % D(t, t) != 0) {
            row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      U.negate_col(t);
    }
  }
  return {std::move(U), std::move(D), std::move(V)};
}

/// Column echelon form H = m * T (T unimodular), zero columns last, pivots
/// positive, entries left of each pivot reduced into [0, pivot).
struct ColumnEchelon {
  IntMatrix H;
  IntMatrix T;
  std::vector<std::size_t> pivot_rows;  // one per nonzero column of H
};

inline ColumnEchelon column_echelon(const IntMatrix& m) {
  IntMatrix H = m, T = IntMatrix::identity(m.cols());
  std::vector<std::size_t> pivots;
  std::size_t pc = 0;
  for (std::size_t r = 0; r < H.rows() && pc < H.cols(); ++r) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t c = pc; c < H.cols(); ++c)
        if (H(r, c) != 0 && (!best || abs_value(H(r, c)) < abs_value(H(r, *best)))) best = c;
      if (!best) break;
      H.swap_cols(pc, *best);
      T.swap_cols(pc, *best);
      bool done = true;
      for (std::size_t c = pc + 1; c < H.cols(); ++c)
        if (H(r, c) != 0) {
          Integer q = H(r, c) / H(r, pc);
          H.add_col(c, pc, -q);
          T.add_col(c, pc, -q);
          if (H(r, c) != 0) done = false;
        }
      if (done) break;
    }
    if (H(r, pc) == 0) continue;
    if (H(r, pc) < 0) {
      H.negate_col(pc);
      T.negate_col(pc);
    }
    for (std::size_t c = 0; c < pc; ++c) {
      Integer q = floor_div(H(r, c), H(r, pc));
      H.add_col(c, pc, -q);
      T.add_col(c, pc, -q);
    }
    pivots.push_back(r);
    ++pc;
  }
  return {std::move(H), std::move(T), std::move(pivots)};
}

/// Basis of {x : m x = 0}, as columns.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  ColumnEchelon ce = column_echelon(m);
  const std::size_t r = ce.pivot_rows.size();
  return ce.T.block_columns(r, m.cols() - r);
}

// ---------------------------------------------------------------------------

/// Sublattice of Z^n stored by its column Hermite normal form.
class Lattice {
public:
  Lattice() = default;

  /// The zero lattice in Z^n.
  explicit Lattice(std::size_t ambient) : basis_(ambient, 0) {}

  /// Lattice spanned by the columns of `gens`.
  static Lattice span(const IntMatrix& gens) {
    Lattice L;
    ColumnEchelon ce = column_echelon(gens);
    L.basis_ = ce.H.block_columns(0, ce.pivot_rows.size());
    L.pivots_ = std::move(ce.pivot_rows);
    return L;
  }

  static Lattice span(std::size_t ambient, const std::vector<IntVector>& gens) {
    return span(IntMatrix::from_columns(ambient, gens));
  }

  static Lattice whole(std::size_t n) { return span(IntMatrix::identity(n)); }

  std::size_t ambient() const { return basis_.rows(); }
  std::size_t rank() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_rows() const { return pivots_; }

  /// Coefficients of v in the basis, if v lies in the lattice.
  std::optional<IntVector> coordinates(IntVector v) const {
    if (v.size() != ambient()) throw input_error("vector does not live in the lattice's ambient group");
    IntVector coeff(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      const std::size_t p = pivots_[j];
      for (std::size_t i = 0; i < p; ++i)
        if (v[i] != 0) return std::nullopt;
      if (v[p] % basis_(p, j) != 0) return std::nullopt;
      coeff[j] = v[p] / basis_(p, j);
      for (std::size_t i = p; i < ambient(); ++i) v[i] -= coeff[j] * basis_(i, j);
    }
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
    return coeff;
  }

  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

  bool contains(const Lattice& other) const {
    require_same_ambient(other);
    for (std::size_t j = 0; j < other.rank(); ++j)
      if (!contains(other.basis_.column(j))) return false;
    return true;
  }

  /// Full rank: the quotient Z^n / L is finite.
  bool is_full_rank() const { return rank() == ambient(); }

  /// Canonical coset representative of v; needs a full-rank lattice.
  IntVector reduce(IntVector v) const {
    if (!is_full_rank()) throw input_error("coset reduction needs a full-rank lattice");
    for (std::size_t j = 0; j < rank(); ++j) {
      Integer q = floor_div(v[j], basis_(j, j));
      for (std::size_t i = j; i < ambient(); ++i) v[i] -= q * basis_(i, j);
    }
    return v;
  }

  void require_same_ambient(const Lattice& other) const {
    if (ambient() != other.ambient())
      throw input_error("lattices live in different ambient groups (Z^" +
                        std::to_string(ambient()) + " vs Z^" + std::to_string(other.ambient()) + ")");
  }

  friend bool operator==(const Lattice& a, const Lattice& b) { return a.basis_ == b.basis_; }

private:
  IntMatrix basis_;
  std::vector<std::size_t> pivots_;
};

inline Lattice image_lattice(const IntMatrix& m) { return Lattice::span(m); }

inline bool lattice_equal(const Lattice& a, const Lattice& b) {
  a.require_same_ambient(b);
  return a == b;
}

/// b is a sublattice of a.
inline bool lattice_contains(const Lattice& a, const Lattice& b) { return a.contains(b); }

/// m(L)
inline Lattice image(const IntMatrix& m, const Lattice& L) {
  if (m.cols() != L.ambient()) throw input_error("matrix does not act on the lattice's ambient group");
  return Lattice::span(m * L.basis());
}

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  a.require_same_ambient(b);
  return Lattice::span(hconcat(a.basis(), b.basis()));
}

inline Lattice kernel_lattice(const IntMatrix& m) { return Lattice::span(kernel_basis(m)); }

/// {v : m v in L}
inline Lattice preimage(const IntMatrix& m, const Lattice& L) {
  if (m.rows() != L.ambient()) throw input_error("preimage dimension mismatch");
  IntMatrix aug = hconcat(m, L.basis());
  IntMatrix k = kernel_basis(aug);
  return Lattice::span(k.block_rows(0, m.cols()));
}

/// Invariant factors of Z^n / L: the nonzero Smith entries, then a zero for
/// every missing rank. Units are kept so the list has length n.
inline IntVector quotient_invariants(const Lattice& L) {
  IntVector d = smith_normal_form(L.basis()).diagonal();
  d.resize(L.ambient(), 0);
  return d;
}

/// [outer : inner] for sublattices of equal rank, nullopt when infinite.
inline std::optional<Integer> lattice_index(const Lattice& outer, const Lattice& inner) {
  outer.require_same_ambient(inner);
  if (outer.rank() != inner.rank() || !outer.contains(inner)) return std::nullopt;
  std::vector<IntVector> coords;
  for (std::size_t j = 0; j < inner.rank(); ++j) coords.push_back(*outer.coordinates(inner.basis().column(j)));
  Integer idx = 1;
  for (const auto& d : smith_normal_form(IntMatrix::from_columns(outer.rank(), coords)).diagonal()) idx *= d;
  return idx;
}

inline std::string to_string(const Lattice& L) {
  std::ostringstream os;
  os << "span{";
  for (std::size_t j = 0; j < L.rank(); ++j) os << (j ? ", " : "") << to_string(L.basis().column(j));
  os << "} in Z^" << L.ambient();
  return os.str();
}

}  // namespace covlim
