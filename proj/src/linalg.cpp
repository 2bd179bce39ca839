#include "braidhopf/linalg.hpp"

#include <stdexcept>

namespace braidhopf {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) += a * b;
      }
    }
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix::Echelon Matrix::rref() const {
  Echelon e{*this, {}};
  Matrix& m = e.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t piv = row;
    while (piv < rows_ && m.at(piv, col).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != row) {
      for (std::size_t j = col; j < cols_; ++j) std::swap(m.at(piv, j), m.at(row, j));
    }
    Scalar inv = m.at(row, col).inverse();
    for (std::size_t j = col; j < cols_; ++j) {
      if (!m.at(row, j).is_zero()) m.at(row, j) = m.at(row, j) * inv;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Scalar f = m.at(i, col);
      for (std::size_t j = col; j < cols_; ++j) {
        if (!m.at(row, j).is_zero()) m.at(i, j) -= f * m.at(row, j);
      }
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

std::vector<std::vector<Scalar>> Matrix::kernel() const {
  Echelon e = rref();
  std::vector<bool> is_pivot(cols_, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols_);
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> Matrix::solve(const std::vector<Scalar>& b) const {
  if (b.size() != rows_) throw std::invalid_argument("right-hand side size mismatch");
  Matrix aug(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_) = b[i];
  }
  Echelon e = aug.rref();
  if (!e.pivots.empty() && e.pivots.back() == cols_) return std::nullopt;
  std::vector<Scalar> x(cols_);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced.at(r, cols_);
  return x;
}

std::optional<Matrix> Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  std::size_t n = rows_;
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, n + i) = Scalar(1);
  }
  Echelon e = aug.rref();
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  return inv;
}

bool SparseSpan::insert(Vec v) {
  // only the leading key needs to be eliminated for an echelon basis
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    Scalar f = -v.front().second;
    v = add_terms(v, it->second, f);
  }
  if (v.empty()) return false;
  Scalar inv = v.front().second.inverse();
  for (auto& [k, c] : v) c = c * inv;
  std::uint32_t lead = v.front().first;
  pivots_.emplace(lead, std::move(v));
  return true;
}

bool SparseSpan::contains(Vec v) const {
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) return false;
    Scalar f = -v.front().second;
    v = add_terms(v, it->second, f);
  }
  return true;
}

std::size_t sparse_rank(std::vector<Vec> rows) {
  SparseSpan span;
  for (auto& r : rows) span.insert(std::move(r));
  return span.dimension();
}

}  // namespace braidhopf
