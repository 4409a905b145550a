#pragma once

// Exact integer and rational matrix kernels. Lattice elements are coordinate
// rows and a basis is a matrix of rows, so a Gram matrix transforms as
// B * G * B^T and an integral kernel collects rows x with x * M = 0.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "thetacong/error.hpp"

namespace thetacong {

using BigInt = mpz_class;
using BigRat = mpq_class;

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix transpose() const;
  Matrix select_rows(std::size_t begin, std::size_t end) const;
  void append_row(std::span<const T> r);
  void swap_rows(std::size_t a, std::size_t b);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<BigInt>;
using RationalMatrix = Matrix<BigRat>;

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator*(const BigInt& s, const IntegerMatrix& a);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

RationalMatrix to_rational(const IntegerMatrix& m);
IntegerMatrix matrix_power(const IntegerMatrix& m, unsigned exponent);

/// Row vector times matrix.
std::vector<BigInt> row_times(std::span<const BigInt> x, const IntegerMatrix& m);
BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b);
/// b(x, y) = x * G * y^T.
BigInt bilinear(std::span<const BigInt> x, const IntegerMatrix& gram, std::span<const BigInt> y);
/// B * G * B^T.
IntegerMatrix gram_of(const IntegerMatrix& basis, const IntegerMatrix& gram);

std::string to_string(const IntegerMatrix& m);

BigInt det_bareiss(const IntegerMatrix& m);

struct HnfResult {
  IntegerMatrix h;  // u * m = h, upper echelon
  IntegerMatrix u;  // unimodular
  std::size_t rank = 0;
};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into [0, pivot), zero rows at the bottom.
HnfResult hnf(const IntegerMatrix& m);

/// Nonzero rows of the HNF, i.e. the canonical basis of the row lattice.
IntegerMatrix hnf_basis(const IntegerMatrix& m);

std::size_t rank(const IntegerMatrix& m);

/// Basis (in HNF) of the saturated lattice {x : x * m = 0}; zero rows when trivial.
IntegerMatrix integer_kernel(const IntegerMatrix& m);

/// |det(coords)| for a full-rank square coordinate matrix.
BigInt index_of_sublattice(const IntegerMatrix& coords);

/// Integral y with y * basis = v, where basis has independent rows.
std::optional<std::vector<BigInt>> solve_integral(const IntegerMatrix& basis, std::span<const BigInt> v);

/// True iff every row of `sub` is an integral combination of the rows of `basis`.
bool rows_in_lattice(const IntegerMatrix& sub, const IntegerMatrix& basis);

/// Exact solution x of a * x = rhs (column convention) for nonsingular square a.
std::vector<BigRat> solve_rational(const IntegerMatrix& a, std::span<const BigInt> rhs);

struct LdlDecomposition {
  RationalMatrix lower;       // unit lower triangular
  std::vector<BigRat> diag;   // all positive
};

/// g = lower * diag(d) * lower^T; throws NotPositiveDefinite.
LdlDecomposition rational_cholesky(const RationalMatrix& g);
LdlDecomposition rational_cholesky(const IntegerMatrix& g);

bool is_positive_definite(const IntegerMatrix& g);

struct LllResult {
  IntegerMatrix gram;       // transform * g * transform^T
  IntegerMatrix transform;  // unimodular
};

/// Integral LLL on a Gram matrix with delta = 3/4.
LllResult lll_reduce(const IntegerMatrix& g);

/// Incrementally maintained HNF basis of the lattice spanned by added rows.
class HnfAccumulator {
 public:
  explicit HnfAccumulator(std::size_t dim) : dim_(dim), basis_(0, dim) {}

  /// Adds v; returns true if the spanned lattice grew.
  bool add(std::span<const BigInt> v);
  bool contains(std::span<const BigInt> v) const;
  const IntegerMatrix& basis() const { return basis_; }
  /// True once the spanned lattice is all of Z^dim.
  bool is_full() const;

 private:
  std::size_t dim_;
  IntegerMatrix basis_;
};

}  // namespace thetacong
