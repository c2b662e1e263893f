#include "symcone/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace symcone {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("RationalMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  RationalMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
  auto s = row_span(r);
  return RationalVector(s.begin(), s.end());
}

RationalVector RationalMatrix::col(std::size_t c) const {
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void RationalMatrix::append_row(const RationalVector& row) {
  if (row.size() != cols_) throw std::invalid_argument("append_row: dimension mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

RationalMatrix RationalMatrix::select_rows(std::span<const int> indices) const {
  RationalMatrix out(indices.size(), cols_);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const auto src = row_span(static_cast<std::size_t>(indices[k]));
    std::copy(src.begin(), src.end(), out.row_span(k).begin());
  }
  return out;
}

RationalMatrix RationalMatrix::select_cols(std::span<const int> indices) const {
  RationalMatrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < indices.size(); ++k) out(r, k) = (*this)(r, static_cast<std::size_t>(indices[k]));
  }
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector: dimension mismatch");
  RationalVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn((*this)(r, c)) != 0 && sgn(x[c]) != 0) s += (*this)(r, c) * x[c];
    }
    y[r] = s;
  }
  return y;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        if (sgn(other(k, c)) != 0) out(r, c) += a * other(k, c);
      }
    }
  }
  return out;
}

std::vector<int> row_reduce(RationalMatrix& m) {
  std::vector<int> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t p = lead_row;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead_row) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(p, k), m(lead_row, k));
    }
    const Rational inv = 1 / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || sgn(m(r, c)) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        if (sgn(m(lead_row, k)) != 0) m(r, k) -= factor * m(lead_row, k);
      }
    }
    pivots.push_back(static_cast<int>(c));
    ++lead_row;
  }
  return pivots;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix copy = m;
  return row_reduce(copy).size();
}

RationalMatrix kernel_basis(const RationalMatrix& m) {
  RationalMatrix r = m;
  const auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  RationalMatrix basis(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[static_cast<std::size_t>(pivots[k])] = -r(k, free);
    basis.append_row(v);
  }
  return basis;
}

std::optional<RationalVector> solve_linear(const RationalMatrix& m, const RationalVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && static_cast<std::size_t>(pivots.back()) == m.cols()) return std::nullopt;
  RationalVector x(m.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[static_cast<std::size_t>(pivots[k])] = aug(k, m.cols());
  return x;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || static_cast<std::size_t>(pivots[n - 1]) >= n) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = aug(r, n + c);
  }
  return inv;
}

std::vector<int> independent_rows(const RationalMatrix& m) {
  // Incremental elimination against the rows accepted so far.
  std::vector<int> chosen;
  std::vector<RationalVector> reduced;
  std::vector<std::size_t> lead;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RationalVector v = m.row(r);
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      const Rational f = v[lead[k]];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (sgn(reduced[k][c]) != 0) v[c] -= f * reduced[k][c];
      }
    }
    std::size_t p = 0;
    while (p < v.size() && sgn(v[p]) == 0) ++p;
    if (p == v.size()) continue;
    const Rational inv = 1 / v[p];
    for (auto& x : v) x *= inv;
    // Keep the stored rows fully reduced on the new lead column.
    for (auto& other : reduced) {
      const Rational f = other[p];
      if (sgn(f) == 0) continue;
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (sgn(v[c]) != 0) other[c] -= f * v[c];
      }
    }
    reduced.push_back(std::move(v));
    lead.push_back(p);
    chosen.push_back(static_cast<int>(r));
    if (chosen.size() == m.cols()) break;
  }
  return chosen;
}

}  // namespace symcone
