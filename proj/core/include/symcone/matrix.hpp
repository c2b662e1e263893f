#pragma once

#include "symcone/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace symcone {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Rational> row_span(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> row_span(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  RationalVector row(std::size_t r) const;
  RationalVector col(std::size_t c) const;

  void append_row(const RationalVector& row);
  RationalMatrix select_rows(std::span<const int> indices) const;
  RationalMatrix select_cols(std::span<const int> indices) const;
  RationalMatrix transpose() const;

  RationalVector operator*(const RationalVector& x) const;
  RationalMatrix operator*(const RationalMatrix& other) const;

  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> row_reduce(RationalMatrix& m);

std::size_t rank(const RationalMatrix& m);

/// Rows form a basis of {x : M x = 0}.
RationalMatrix kernel_basis(const RationalMatrix& m);

/// Some x with M x = b, or nullopt when the system is inconsistent.
std::optional<RationalVector> solve_linear(const RationalMatrix& m, const RationalVector& b);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Indices of a maximal linearly independent subset of rows, chosen greedily in order.
std::vector<int> independent_rows(const RationalMatrix& m);

}  // namespace symcone
