#pragma once

// Exact linear algebra over the rationals.
//
// Every routine goes through the reduced row echelon form, which is unique
// for a given row space, so outputs do not depend on pivot choices or on
// the order in which sparse entries were inserted.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rinehart/rational.hpp"

namespace rinehart::qlinalg {

using Vector = std::vector<Rational>;

/// One sparse row: (column, value) pairs, strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

class QMatrix {
public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix from_dense(const std::vector<Vector>& rows);
  /// Matrix whose columns are the given vectors.
  static QMatrix from_columns(std::size_t rows, const std::vector<Vector>& columns);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept;

  Rational get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  void add_to(std::size_t r, std::size_t c, const Rational& value);

  const SparseRow& row(std::size_t r) const { return data_.at(r); }
  Vector dense_row(std::size_t r) const;
  Vector column(std::size_t c) const;

  Vector apply(std::span<const Rational> v) const;
  QMatrix multiply(const QMatrix& rhs) const;
  QMatrix transpose() const;
  /// Rows [0, r) and columns [0, c).
  QMatrix top_left(std::size_t r, std::size_t c) const;
  bool is_zero() const noexcept;

  friend bool operator==(const QMatrix& a, const QMatrix& b);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

/// Reduced row echelon form: `rows[i]` has a leading 1 in column `pivots[i]`,
/// pivots strictly increasing, and every pivot column is zero elsewhere.
struct Echelon {
  std::size_t cols = 0;
  std::vector<std::size_t> pivots;
  std::vector<SparseRow> rows;

  std::size_t rank() const noexcept { return pivots.size(); }
  /// Reduces v against the echelon rows; result has zeros at pivot columns.
  Vector reduce(Vector v) const;
};

/// Matrices with fewer columns than this use the dense elimination path.
inline constexpr std::size_t kDenseColumnThreshold = 64;

Echelon rref(const QMatrix& m);
Echelon rref_dense(const QMatrix& m);
Echelon rref_sparse(const QMatrix& m);

std::size_t rank(const QMatrix& m);

struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<Vector> basis;

  std::size_t dim() const noexcept { return basis.size(); }
  static Subspace whole(std::size_t n);
  static Subspace zero(std::size_t n) { return Subspace{n, {}}; }
  /// Canonical basis (nonzero RREF rows) of the span of arbitrary vectors.
  static Subspace span(std::size_t n, const std::vector<Vector>& vectors);
  bool contains(const Vector& v) const;
};

/// Basis of {v : Mv = 0}; one vector per free column, in increasing order.
Subspace kernel_basis(const QMatrix& m);

/// Column space of m, as a canonical basis.
Subspace image(const QMatrix& m);

/// Canonical reduced-echelon particular solution of Mx = b, or nullopt.
std::optional<Vector> solve_linear(const QMatrix& m, std::span<const Rational> b);

struct Subquotient {
  std::size_t dim = 0;
  /// Vectors of Z whose cosets form a basis of Z/B.
  std::vector<Vector> representatives;
};

/// dim(Z/B) with canonical coset representatives. Throws ContainmentError
/// unless B ⊆ Z.
Subquotient subquotient_dim(const Subspace& z, const Subspace& b);

bool is_zero(std::span<const Rational> v);

}  // namespace rinehart::qlinalg
