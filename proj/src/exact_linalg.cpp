#include "thetacong/exact_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace thetacong {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotFullRank: return "NotFullRank";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NotPsd: return "NotPsd";
    case Errc::NotIsometry: return "NotIsometry";
    case Errc::WrongOrder: return "WrongOrder";
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::NotInImage: return "NotInImage";
    case Errc::RankTooLarge: return "RankTooLarge";
    case Errc::UnknownName: return "UnknownName";
    case Errc::ConstructionSelfCheckFailed: return "ConstructionSelfCheckFailed";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Matrix<T>

template <typename T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init) {
  rows_ = init.size();
  cols_ = rows_ ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

template <typename T>
Matrix<T> Matrix<T>::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

template <typename T>
Matrix<T> Matrix<T>::from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(Errc::DimensionMismatch, "ragged row list");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

template <typename T>
bool Matrix<T>::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

template <typename T>
bool Matrix<T>::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
}

template <typename T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <typename T>
Matrix<T> Matrix<T>::select_rows(std::size_t begin, std::size_t end) const {
  Matrix m(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i) std::copy(row(i).begin(), row(i).end(), m.row(i - begin).begin());
  return m;
}

template <typename T>
void Matrix<T>::append_row(std::span<const T> r) {
  if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "append_row width");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

template <typename T>
void Matrix<T>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template class Matrix<BigInt>;
template class Matrix<BigRat>;

// ---------------------------------------------------------------------------
// arithmetic

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product");
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix product");
  RationalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "matrix sum");
  IntegerMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntegerMatrix operator-(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "matrix difference");
  IntegerMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntegerMatrix operator*(const BigInt& s, const IntegerMatrix& a) {
  IntegerMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

IntegerMatrix matrix_power(const IntegerMatrix& m, unsigned exponent) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "matrix_power");
  IntegerMatrix result = IntegerMatrix::identity(m.rows());
  IntegerMatrix base = m;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

std::vector<BigInt> row_times(std::span<const BigInt> x, const IntegerMatrix& m) {
  if (x.size() != m.rows()) throw Error(Errc::DimensionMismatch, "row_times");
  std::vector<BigInt> out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[k] * m(k, j);
  }
  return out;
}

BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot");
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigInt bilinear(std::span<const BigInt> x, const IntegerMatrix& gram, std::span<const BigInt> y) {
  auto xg = row_times(x, gram);
  return dot(xg, y);
}

IntegerMatrix gram_of(const IntegerMatrix& basis, const IntegerMatrix& gram) {
  return basis * gram * basis.transpose();
}

std::string to_string(const IntegerMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// determinants

BigInt det_bareiss(const IntegerMatrix& m) {
  if (!m.is_square()) throw Error(Errc::NonSquare, "det_bareiss needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Hermite normal form

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void row_axpy(IntegerMatrix& m, std::size_t dst, const BigInt& q, std::size_t src) {
  // row_dst -= q * row_src
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (m(src, j) != 0) mpz_submul(m(dst, j).get_mpz_t(), q.get_mpz_t(), m(src, j).get_mpz_t());
}

void negate_row(IntegerMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

HnfResult hnf(const IntegerMatrix& m) {
  HnfResult res{m, IntegerMatrix::identity(m.rows()), 0};
  IntegerMatrix& h = res.h;
  IntegerMatrix& u = res.u;
  const std::size_t rows = h.rows();
  std::size_t r = 0;
  for (std::size_t j = 0; j < h.cols() && r < rows; ++j) {
    bool has_pivot = false;
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, j) == 0) continue;
        if (best == rows || mpz_cmpabs(h(i, j).get_mpz_t(), h(best, j).get_mpz_t()) < 0) best = i;
      }
      if (best == rows) break;
      has_pivot = true;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, j) == 0) continue;
        BigInt q = floor_div(h(i, j), h(r, j));
        row_axpy(h, i, q, r);
        row_axpy(u, i, q, r);
        if (h(i, j) != 0) done = false;
      }
      if (done) break;
    }
    if (!has_pivot) continue;
    if (h(r, j) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = floor_div(h(i, j), h(r, j));
      if (q == 0) continue;
      row_axpy(h, i, q, r);
      row_axpy(u, i, q, r);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

IntegerMatrix hnf_basis(const IntegerMatrix& m) {
  auto res = hnf(m);
  return res.h.select_rows(0, res.rank);
}

std::size_t rank(const IntegerMatrix& m) { return hnf(m).rank; }

IntegerMatrix integer_kernel(const IntegerMatrix& m) {
  auto res = hnf(m);
  IntegerMatrix kernel = res.u.select_rows(res.rank, m.rows());
  if (kernel.rows() == 0) return kernel;
  return hnf_basis(kernel);
}

BigInt index_of_sublattice(const IntegerMatrix& coords) {
  if (!coords.is_square() || rank(coords) < coords.cols())
    throw Error(Errc::NotFullRank, "sublattice coordinates are not of full rank");
  BigInt d = det_bareiss(coords);
  return abs(d);
}

namespace {

// Reduces v against an HNF basis (nonzero rows only). Returns coefficients if
// v lies in the row lattice.
std::optional<std::vector<BigInt>> reduce_against_hnf(const IntegerMatrix& h, std::span<const BigInt> v) {
  std::vector<BigInt> rem(v.begin(), v.end());
  std::vector<BigInt> coeff(h.rows());
  std::size_t col = 0;
  for (std::size_t k = 0; k < h.rows(); ++k) {
    std::size_t pivot = col;
    while (pivot < h.cols() && h(k, pivot) == 0) ++pivot;
    if (pivot == h.cols()) throw Error(Errc::Internal, "zero row in HNF basis");
    for (; col < pivot; ++col)
      if (rem[col] != 0) return std::nullopt;
    if (!mpz_divisible_p(rem[pivot].get_mpz_t(), h(k, pivot).get_mpz_t())) return std::nullopt;
    BigInt q = rem[pivot] / h(k, pivot);
    coeff[k] = q;
    if (q != 0)
      for (std::size_t j = pivot; j < h.cols(); ++j) mpz_submul(rem[j].get_mpz_t(), q.get_mpz_t(), h(k, j).get_mpz_t());
    col = pivot + 1;
  }
  for (; col < rem.size(); ++col)
    if (rem[col] != 0) return std::nullopt;
  return coeff;
}

}  // namespace

std::optional<std::vector<BigInt>> solve_integral(const IntegerMatrix& basis, std::span<const BigInt> v) {
  if (v.size() != basis.cols()) throw Error(Errc::DimensionMismatch, "solve_integral");
  auto res = hnf(basis);
  if (res.rank != basis.rows()) throw Error(Errc::NotFullRank, "solve_integral basis rows are dependent");
  auto coeff = reduce_against_hnf(res.h, v);
  if (!coeff) return std::nullopt;
  return row_times(*coeff, res.u);
}

bool rows_in_lattice(const IntegerMatrix& sub, const IntegerMatrix& basis) {
  if (sub.rows() == 0) return true;
  if (sub.cols() != basis.cols()) throw Error(Errc::DimensionMismatch, "rows_in_lattice");
  IntegerMatrix h = hnf_basis(basis);
  for (std::size_t i = 0; i < sub.rows(); ++i)
    if (!reduce_against_hnf(h, sub.row(i))) return false;
  return true;
}

std::vector<BigRat> solve_rational(const IntegerMatrix& a, std::span<const BigInt> rhs) {
  if (!a.is_square()) throw Error(Errc::NonSquare, "solve_rational");
  const std::size_t n = a.rows();
  if (rhs.size() != n) throw Error(Errc::DimensionMismatch, "solve_rational");
  RationalMatrix m(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = rhs[i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw Error(Errc::NotFullRank, "solve_rational: singular matrix");
    m.swap_rows(k, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      BigRat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j <= n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  std::vector<BigRat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m(i, n) / m(i, i);
  return x;
}

// ---------------------------------------------------------------------------
// rational LDL^T

LdlDecomposition rational_cholesky(const RationalMatrix& g) {
  if (!g.is_square()) throw Error(Errc::NonSquare, "rational_cholesky");
  if (!g.is_symmetric()) throw Error(Errc::InvalidInput, "rational_cholesky needs a symmetric matrix");
  const std::size_t n = g.rows();
  LdlDecomposition out{RationalMatrix::identity(n), std::vector<BigRat>(n)};
  RationalMatrix& l = out.lower;
  for (std::size_t j = 0; j < n; ++j) {
    BigRat d = g(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k) * out.diag[k];
    if (sgn(d) <= 0) throw Error(Errc::NotPositiveDefinite, "pivot " + std::to_string(j) + " is " + d.get_str());
    out.diag[j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      BigRat s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k) * out.diag[k];
      l(i, j) = s / d;
    }
  }
  return out;
}

LdlDecomposition rational_cholesky(const IntegerMatrix& g) { return rational_cholesky(to_rational(g)); }

bool is_positive_definite(const IntegerMatrix& g) {
  if (!g.is_square() || !g.is_symmetric()) return false;
  try {
    rational_cholesky(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// integral LLL (Gram matrix variant, all quantities integral)

namespace {

class IntegralLll {
 public:
  explicit IntegralLll(const IntegerMatrix& g)
      : n_(g.rows()), g_(g), h_(IntegerMatrix::identity(n_)), d_(n_ + 1), lam_(n_ + 1, std::vector<BigInt>(n_ + 1)) {}

  LllResult run() {
    if (n_ == 0) return {g_, h_};
    d_[0] = 1;
    d_[1] = gram(1, 1);
    if (sgn(d_[1]) <= 0) throw Error(Errc::NotPositiveDefinite, "lll_reduce: nonpositive diagonal");
    std::size_t k = 2;
    std::size_t kmax = 1;
    while (k <= n_) {
      if (k > kmax) {
        kmax = k;
        for (std::size_t j = 1; j <= k; ++j) {
          BigInt u = gram(k, j);
          for (std::size_t i = 1; i < j; ++i) {
            u = d_[i] * u - lam_[k][i] * lam_[j][i];
            mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d_[i - 1].get_mpz_t());
          }
          if (j < k) {
            lam_[k][j] = u;
          } else {
            if (sgn(u) <= 0) throw Error(Errc::NotPositiveDefinite, "lll_reduce: Gram matrix is not positive definite");
            d_[k] = u;
          }
        }
      }
      reduce(k, k - 1);
      BigInt lhs = 4 * d_[k] * d_[k - 2];
      BigInt rhs = 3 * d_[k - 1] * d_[k - 1] - 4 * lam_[k][k - 1] * lam_[k][k - 1];
      if (lhs < rhs) {
        swap(k, kmax);
        k = std::max<std::size_t>(2, k - 1);
      } else {
        for (std::size_t l = k - 1; l-- > 1;) reduce(k, l);
        ++k;
      }
    }
    return {g_, h_};
  }

 private:
  BigInt& gram(std::size_t i, std::size_t j) { return g_(i - 1, j - 1); }

  void reduce(std::size_t k, std::size_t l) {
    BigInt two_lam = 2 * lam_[k][l];
    if (mpz_cmpabs(two_lam.get_mpz_t(), d_[l].get_mpz_t()) <= 0) return;
    BigInt q;
    BigInt num = two_lam + d_[l];
    BigInt den = 2 * d_[l];
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    row_axpy(h_, k - 1, q, l - 1);
    // basis row k -= q * row l, applied to the Gram on both sides
    for (std::size_t j = 0; j < n_; ++j) mpz_submul(g_(k - 1, j).get_mpz_t(), q.get_mpz_t(), g_(l - 1, j).get_mpz_t());
    for (std::size_t j = 0; j < n_; ++j) mpz_submul(g_(j, k - 1).get_mpz_t(), q.get_mpz_t(), g_(j, l - 1).get_mpz_t());
    lam_[k][l] -= q * d_[l];
    for (std::size_t i = 1; i < l; ++i) lam_[k][i] -= q * lam_[l][i];
  }

  void swap(std::size_t k, std::size_t kmax) {
    h_.swap_rows(k - 1, k - 2);
    g_.swap_rows(k - 1, k - 2);
    for (std::size_t j = 0; j < n_; ++j) std::swap(g_(j, k - 1), g_(j, k - 2));
    for (std::size_t j = 1; j + 2 <= k; ++j) std::swap(lam_[k][j], lam_[k - 1][j]);
    BigInt lam = lam_[k][k - 1];
    BigInt b = d_[k - 2] * d_[k] + lam * lam;
    mpz_divexact(b.get_mpz_t(), b.get_mpz_t(), d_[k - 1].get_mpz_t());
    for (std::size_t i = k + 1; i <= kmax; ++i) {
      BigInt t = lam_[i][k];
      BigInt a = d_[k] * lam_[i][k - 1] - lam * t;
      mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d_[k - 1].get_mpz_t());
      lam_[i][k] = a;
      BigInt c = b * t + lam * lam_[i][k];
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d_[k].get_mpz_t());
      lam_[i][k - 1] = c;
    }
    d_[k - 1] = b;
  }

  std::size_t n_;
  IntegerMatrix g_;
  IntegerMatrix h_;
  std::vector<BigInt> d_;
  std::vector<std::vector<BigInt>> lam_;
};

}  // namespace

LllResult lll_reduce(const IntegerMatrix& g) {
  if (!g.is_square()) throw Error(Errc::NonSquare, "lll_reduce");
  if (!g.is_symmetric()) throw Error(Errc::InvalidInput, "lll_reduce needs a symmetric Gram matrix");
  return IntegralLll(g).run();
}

// ---------------------------------------------------------------------------
// HnfAccumulator

bool HnfAccumulator::contains(std::span<const BigInt> v) const {
  if (v.size() != dim_) throw Error(Errc::DimensionMismatch, "HnfAccumulator");
  if (basis_.rows() == 0) return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
  return reduce_against_hnf(basis_, v).has_value();
}

bool HnfAccumulator::add(std::span<const BigInt> v) {
  if (contains(v)) return false;
  IntegerMatrix stacked = basis_;
  stacked.append_row(v);
  basis_ = hnf_basis(stacked);
  return true;
}

bool HnfAccumulator::is_full() const {
  if (basis_.rows() != dim_) return false;
  for (std::size_t i = 0; i < dim_; ++i)
    if (basis_(i, i) != 1) return false;
  return true;
}

}  // namespace thetacong
