#pragma once
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "pervarr/error.hpp"
#include "pervarr/rational.hpp"

namespace pervarr {

/// Dense matrix over the exact scalar field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t ambient, const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const = default;

  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const;
  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;

  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Rat& c) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

/// Reduced row echelon form; second member lists the pivot columns.
std::pair<Matrix, std::vector<std::size_t>> rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Exact inverse. Throws SingularError on rank-deficient or non-square input.
Matrix inverse(const Matrix& m);

bool is_invertible(const Matrix& m);

/// Solves a·x = b for each column b of rhs; nullopt-style: throws
/// SingularError when some column is outside the column space of a.
Matrix solve(const Matrix& a, const Matrix& rhs);

/// Kronecker product (used for modules on product arrangements).
Matrix kronecker(const Matrix& a, const Matrix& b);

Matrix block_diag(const Matrix& a, const Matrix& b);

}  // namespace pervarr
