#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qes/exact/mpoly.hpp"

namespace qes::rep {

using exact::BigInt;
using exact::BigRat;
using exact::MPoly;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!(e == T(0))) return false;
    return true;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<BigRat>;
using PolyMatrix = Matrix<MPoly>;

// Result of fraction-free Gauss-Jordan elimination: every pivot entry equals
// `pivot`, entries left of a pivot in its row are zero.
template <class T>
struct FFReduction {
  Matrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
  T pivot;
};

FFReduction<BigInt> fraction_free_reduce(Matrix<BigInt> m);
FFReduction<MPoly> fraction_free_reduce(Matrix<MPoly> m);

// Nullspace basis. Rational vectors are scaled to primitive integer vectors.
std::vector<std::vector<BigRat>> kernel(const RatMatrix& m);
std::vector<std::vector<MPoly>> kernel(const PolyMatrix& m);

BigRat determinant(const RatMatrix& m);
MPoly determinant(const PolyMatrix& m);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const PolyMatrix& m);

}  // namespace qes::rep
