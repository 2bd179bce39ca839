// Exact linear algebra over Scalar: sparse combinations and dense elimination.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "braidhopf/scalar.hpp"

namespace braidhopf {

// Sparse linear combination, sorted by key, no zero coefficients.
template <class K>
using Terms = std::vector<std::pair<K, Scalar>>;

using Vec = Terms<std::uint32_t>;

template <class K>
class Accumulator {
 public:
  void add(const K& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = m_.try_emplace(k, c);
    if (!inserted) it->second += c;
  }
  void add_all(const Terms<K>& t, const Scalar& scale) {
    for (const auto& [k, c] : t) add(k, c * scale);
  }
  Terms<K> take() {
    Terms<K> out;
    out.reserve(m_.size());
    for (auto& [k, c] : m_) {
      if (!c.is_zero()) out.emplace_back(k, std::move(c));
    }
    m_.clear();
    return out;
  }
  bool empty() const { return m_.empty(); }

 private:
  std::map<K, Scalar> m_;
};

template <class K>
Terms<K> scaled(const Terms<K>& t, const Scalar& s) {
  Terms<K> out;
  if (s.is_zero()) return out;
  out.reserve(t.size());
  for (const auto& [k, c] : t) out.emplace_back(k, c * s);
  return out;
}

template <class K>
Terms<K> add_terms(const Terms<K>& a, const Terms<K>& b, const Scalar& sb = Scalar(1)) {
  Terms<K> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Scalar c = b[j].second * sb;
      if (!c.is_zero()) out.emplace_back(b[j].first, std::move(c));
      ++j;
    } else {
      Scalar c = a[i].second + b[j].second * sb;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Matrix operator*(const Matrix& o) const;
  Matrix transpose() const;
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  struct Echelon;
  Echelon rref() const;
  std::size_t rank() const;
  // Basis of the right kernel, one vector per non-pivot column.
  std::vector<std::vector<Scalar>> kernel() const;
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;
  std::optional<Matrix> inverse() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

struct Matrix::Echelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

inline std::size_t Matrix::rank() const { return rref().pivots.size(); }

// Rank of a sparse matrix given by rows (column keys are arbitrary indices).
std::size_t sparse_rank(std::vector<Vec> rows);

// Incremental span membership test over sparse vectors.
class SparseSpan {
 public:
  // Returns true if v was independent of the current span (and adds it).
  bool insert(Vec v);
  bool contains(Vec v) const;
  std::size_t dimension() const { return pivots_.size(); }

 private:
  std::map<std::uint32_t, Vec> pivots_;  // leading key -> row with leading coefficient 1
};

}  // namespace braidhopf
