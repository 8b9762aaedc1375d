#include "rinehart/qlinalg.hpp"

#include <algorithm>
#include <numeric>

#include "rinehart/error.hpp"

namespace rinehart::qlinalg {

namespace {

// a - factor * b, both sorted by column.
SparseRow axpy(const SparseRow& a, const Rational& factor, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -factor * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - factor * b[j].second;
      if (sgn(v) != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Rational* find_entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  if (it == row.end() || it->first != col) return nullptr;
  return &it->second;
}

SparseRow to_sparse(const Vector& v) {
  SparseRow r;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (sgn(v[c]) != 0) r.emplace_back(c, v[c]);
  return r;
}

Vector to_dense(const SparseRow& r, std::size_t n) {
  Vector v(n);
  for (const auto& [c, x] : r) v[c] = x;
  return v;
}

}  // namespace

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

QMatrix QMatrix::from_dense(const std::vector<Vector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("from_dense: ragged rows");
    m.data_[r] = to_sparse(rows[r]);
  }
  return m;
}

QMatrix QMatrix::from_columns(std::size_t rows, const std::vector<Vector>& columns) {
  QMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidArgument("from_columns: wrong column length");
    for (std::size_t r = 0; r < rows; ++r)
      if (sgn(columns[c][r]) != 0) m.data_[r].emplace_back(c, columns[c][r]);
  }
  return m;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
  return m;
}

std::size_t QMatrix::nonzeros() const noexcept {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Rational QMatrix::get(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("QMatrix::get out of range");
  const Rational* e = find_entry(data_[r], c);
  return e ? *e : Rational(0);
}

void QMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("QMatrix::set out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (sgn(value) == 0)
      row.erase(it);
    else
      it->second = value;
  } else if (sgn(value) != 0) {
    row.insert(it, {c, value});
  }
}

void QMatrix::add_to(std::size_t r, std::size_t c, const Rational& value) {
  if (sgn(value) == 0) return;
  set(r, c, get(r, c) + value);
}

Vector QMatrix::dense_row(std::size_t r) const { return to_dense(data_.at(r), cols_); }

Vector QMatrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (const Rational* e = find_entry(data_[r], c)) v[r] = *e;
  return v;
}

Vector QMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != cols_) throw InvalidArgument("QMatrix::apply: dimension mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, x] : data_[r]) out[r] += x * v[c];
  return out;
}

QMatrix QMatrix::multiply(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("QMatrix::multiply: dimension mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::vector<Rational> acc(rhs.cols_);
    std::vector<char> touched(rhs.cols_, 0);
    for (const auto& [k, a] : data_[r])
      for (const auto& [c, b] : rhs.data_[k]) {
        acc[c] += a * b;
        touched[c] = 1;
      }
    for (std::size_t c = 0; c < rhs.cols_; ++c)
      if (touched[c] && sgn(acc[c]) != 0) out.data_[r].emplace_back(c, acc[c]);
  }
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, x] : data_[r]) t.data_[c].emplace_back(r, x);
  return t;
}

QMatrix QMatrix::top_left(std::size_t r, std::size_t c) const {
  if (r > rows_ || c > cols_) throw InvalidArgument("QMatrix::top_left out of range");
  QMatrix out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& e : data_[i])
      if (e.first < c) out.data_[i].push_back(e);
  return out;
}

bool QMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const SparseRow& r) { return r.empty(); });
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Vector Echelon::reduce(Vector v) const {
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (sgn(v[pivots[i]]) == 0) continue;
    Rational f = v[pivots[i]];
    for (const auto& [c, x] : rows[i]) v[c] -= f * x;
  }
  return v;
}

Echelon rref_dense(const QMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  std::vector<Vector> a(nr);
  for (std::size_t r = 0; r < nr; ++r) a[r] = m.dense_row(r);

  Echelon e;
  e.cols = nc;
  std::size_t top = 0;
  for (std::size_t c = 0; c < nc && top < nr; ++c) {
    // Largest-magnitude numerator keeps fraction growth in check.
    std::size_t best = nr;
    for (std::size_t r = top; r < nr; ++r) {
      if (sgn(a[r][c]) == 0) continue;
      if (best == nr || mpz_cmpabs(a[r][c].get_num_mpz_t(), a[best][c].get_num_mpz_t()) > 0) best = r;
    }
    if (best == nr) continue;
    std::swap(a[top], a[best]);
    Rational inv = 1 / a[top][c];
    for (std::size_t k = c; k < nc; ++k) a[top][k] *= inv;
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == top || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < nc; ++k)
        if (sgn(a[top][k]) != 0) a[r][k] -= f * a[top][k];
    }
    e.pivots.push_back(c);
    ++top;
  }
  for (std::size_t i = 0; i < e.pivots.size(); ++i) e.rows.push_back(to_sparse(a[i]));
  return e;
}

Echelon rref_sparse(const QMatrix& m) {
  // Incremental echelonization: each row is reduced against the pivots found
  // so far by clearing its leading entry until it starts in a fresh column.
  std::vector<std::size_t> order(m.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.row(a).size() < m.row(b).size();
  });

  std::vector<long> pivot_of(m.cols(), -1);
  std::vector<SparseRow> pivot_rows;
  for (std::size_t idx : order) {
    SparseRow row = m.row(idx);
    while (!row.empty()) {
      long p = pivot_of[row.front().first];
      if (p < 0) break;
      Rational f = row.front().second;
      row = axpy(row, f, pivot_rows[static_cast<std::size_t>(p)]);
    }
    if (row.empty()) continue;
    Rational inv = 1 / row.front().second;
    for (auto& e : row) e.second *= inv;
    pivot_of[row.front().first] = static_cast<long>(pivot_rows.size());
    pivot_rows.push_back(std::move(row));
  }

  // Back substitution, highest pivot column first, so every row used for
  // elimination is already fully reduced.
  std::vector<std::size_t> by_col(pivot_rows.size());
  std::iota(by_col.begin(), by_col.end(), 0);
  std::sort(by_col.begin(), by_col.end(), [&](std::size_t a, std::size_t b) {
    return pivot_rows[a].front().first > pivot_rows[b].front().first;
  });
  for (std::size_t k : by_col) {
    SparseRow& row = pivot_rows[k];
    std::size_t i = 1;
    while (i < row.size()) {
      long p = pivot_of[row[i].first];
      if (p < 0) {
        ++i;
        continue;
      }
      std::size_t col = row[i].first;
      Rational f = row[i].second;
      row = axpy(row, f, pivot_rows[static_cast<std::size_t>(p)]);
      // Entries before `col` are untouched; restart the scan there.
      i = static_cast<std::size_t>(
          std::lower_bound(row.begin(), row.end(), col,
                           [](const auto& e, std::size_t c) { return e.first < c; }) -
          row.begin());
    }
  }

  std::sort(pivot_rows.begin(), pivot_rows.end(),
            [](const SparseRow& a, const SparseRow& b) { return a.front().first < b.front().first; });
  Echelon e;
  e.cols = m.cols();
  for (auto& r : pivot_rows) {
    e.pivots.push_back(r.front().first);
    e.rows.push_back(std::move(r));
  }
  return e;
}

Echelon rref(const QMatrix& m) {
  return m.cols() < kDenseColumnThreshold ? rref_dense(m) : rref_sparse(m);
}

std::size_t rank(const QMatrix& m) { return rref(m).rank(); }

Subspace Subspace::whole(std::size_t n) {
  Subspace s{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(n);
    v[i] = 1;
    s.basis.push_back(std::move(v));
  }
  return s;
}

Subspace Subspace::span(std::size_t n, const std::vector<Vector>& vectors) {
  Subspace s{n, {}};
  if (vectors.empty()) return s;
  Echelon e = rref(QMatrix::from_dense(vectors));
  for (const auto& r : e.rows) s.basis.push_back(to_dense(r, n));
  return s;
}

bool Subspace::contains(const Vector& v) const {
  if (v.size() != ambient_dim) throw InvalidArgument("Subspace::contains: dimension mismatch");
  if (basis.empty()) return is_zero(v);
  Echelon e = rref(QMatrix::from_dense(basis));
  return is_zero(e.reduce(v));
}

Subspace kernel_basis(const QMatrix& m) {
  Echelon e = rref(m);
  Subspace k{m.cols(), {}};
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t p : e.pivots) is_pivot[p] = 1;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (const Rational* x = find_entry(e.rows[i], f)) v[e.pivots[i]] = -*x;
    k.basis.push_back(std::move(v));
  }
  return k;
}

Subspace image(const QMatrix& m) {
  Subspace s{m.rows(), {}};
  Echelon e = rref(m.transpose());
  for (const auto& r : e.rows) s.basis.push_back(to_dense(r, m.rows()));
  return s;
}

std::optional<Vector> solve_linear(const QMatrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw InvalidArgument("solve_linear: rhs length mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, x] : m.row(r)) aug.set(r, c, x);
    aug.set(r, m.cols(), b[r]);
  }
  Echelon e = rref(aug);
  Vector x(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    if (const Rational* v = find_entry(e.rows[i], m.cols())) x[e.pivots[i]] = *v;
  }
  return x;
}

Subquotient subquotient_dim(const Subspace& z, const Subspace& b) {
  if (z.ambient_dim != b.ambient_dim)
    throw InvalidArgument("subquotient_dim: ambient dimensions differ");
  const std::size_t n = z.ambient_dim;
  Subspace zc = Subspace::span(n, z.basis);
  Echelon ez = zc.basis.empty() ? Echelon{n, {}, {}} : rref(QMatrix::from_dense(zc.basis));
  for (std::size_t i = 0; i < b.basis.size(); ++i)
    if (!is_zero(ez.reduce(b.basis[i])))
      throw ContainmentError("subquotient_dim: basis vector " + std::to_string(i) +
                             " of B is not in span(Z)");

  Echelon eb = b.basis.empty() ? Echelon{n, {}, {}} : rref(QMatrix::from_dense(b.basis));
  std::vector<Vector> reduced;
  for (const auto& v : zc.basis) {
    Vector r = eb.reduce(v);
    if (!is_zero(r)) reduced.push_back(std::move(r));
  }
  Subquotient out;
  if (reduced.empty()) return out;
  Echelon er = rref(QMatrix::from_dense(reduced));
  for (const auto& r : er.rows) out.representatives.push_back(to_dense(r, n));
  out.dim = out.representatives.size();
  return out;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

}  // namespace rinehart::qlinalg
