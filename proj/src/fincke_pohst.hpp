#pragma once

// Exact Fincke-Pohst enumeration core.
//
// Enumerates integer z with
//     (delta*z + shift) * G * (delta*z + shift)^T <= bound
// using the LDL^T data of G in fraction-free form. With D_i the leading
// (i+1)-minor of G and A(i,j) = D_i * L(j,i) (integral), the quantities
//     Y_i = D_i*u_i + sum_{j>i} u_j*A(i,j),      u = delta*z + shift,
//     R_i = D_i * (bound - sum_{k>i} Y_k^2 / (D_k*D_{k-1}))
// are integers, and level i admits exactly the z_i with Y_i^2 <= D_{i-1}*R_i.
// No floating point is involved; the int64 instantiation is only selected
// when every intermediate is provably below 2^61.

#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "thetacong/exact_linalg.hpp"

namespace thetacong::detail {

struct EnumerationSetup {
  std::size_t n = 0;
  std::vector<BigInt> minors;  // minors[i] = D_i
  IntegerMatrix coupling;      // coupling(i, j) = D_i * L(j, i), j > i
  std::vector<BigInt> shift;
  BigInt delta = 1;
  BigInt bound = 0;
  bool fits_int64 = false;
};

/// Throws NotPositiveDefinite when gram is not positive definite.
EnumerationSetup make_setup(const IntegerMatrix& gram, std::vector<BigInt> shift, BigInt delta, BigInt bound);

inline std::int64_t isqrt_i64(std::int64_t v) {
  if (v < 2) return v;
  std::int64_t x = std::int64_t{1} << ((64 - __builtin_clzll(static_cast<unsigned long long>(v)) + 1) / 2);
  for (;;) {
    std::int64_t y = (x + v / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}
inline std::int64_t floor_div_i64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline std::int64_t ceil_div_i64(std::int64_t a, std::int64_t b) { return -floor_div_i64(-a, b); }

inline BigInt isqrt_big(const BigInt& v) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}
inline BigInt floor_div_big(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline BigInt ceil_div_big(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline std::int64_t isqrt_of(std::int64_t v) { return isqrt_i64(v); }
inline BigInt isqrt_of(const BigInt& v) { return isqrt_big(v); }
inline std::int64_t floor_div_of(std::int64_t a, std::int64_t b) { return floor_div_i64(a, b); }
inline BigInt floor_div_of(const BigInt& a, const BigInt& b) { return floor_div_big(a, b); }
inline std::int64_t ceil_div_of(std::int64_t a, std::int64_t b) { return ceil_div_i64(a, b); }
inline BigInt ceil_div_of(const BigInt& a, const BigInt& b) { return ceil_div_big(a, b); }
inline bool divides_of(std::int64_t d, std::int64_t a) { return a % d == 0; }
inline bool divides_of(const BigInt& d, const BigInt& a) { return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0; }

template <class Int>
Int convert(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    return static_cast<Int>(v.get_si());
  }
}

template <class Int>
class FinckePohst {
 public:
  explicit FinckePohst(const EnumerationSetup& s)
      : n_(s.n), delta_(convert<Int>(s.delta)), bound_(convert<Int>(s.bound)), z_(s.n), u_(s.n), c_(s.n), r_(s.n) {
    minors_.reserve(n_);
    shift_.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      minors_.push_back(convert<Int>(s.minors[i]));
      shift_.push_back(convert<Int>(s.shift[i]));
    }
    coupling_.assign(n_ * n_, Int(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) coupling_[i * n_ + j] = convert<Int>(s.coupling(i, j));
  }

  /// visit(std::span<const Int> z, const Int& value) for every point in the ellipsoid.
  template <class Visit>
  void enumerate_all(Visit&& visit) {
    start();
    descend<false>(n_ - 1, visit);
  }

  /// Only points with value == bound; the last level is solved directly.
  template <class Visit>
  void enumerate_exact(Visit&& visit) {
    start();
    descend<true>(n_ - 1, visit);
  }

 private:
  void start() {
    r_[n_ - 1] = minors_[n_ - 1] * bound_;
    c_[n_ - 1] = minors_[n_ - 1] * shift_[n_ - 1];
  }

  const Int& minor_below(std::size_t i) const { return i == 0 ? one_ : minors_[i - 1]; }

  template <bool Exact, class Visit>
  void descend(std::size_t i, Visit& visit) {
    const Int bound_sq = minor_below(i) * r_[i];
    if (bound_sq < 0) return;
    const Int s = isqrt_of(bound_sq);
    const Int den = minors_[i] * delta_;
    const Int& c = c_[i];
    if (i == 0) {
      if constexpr (Exact) {
        if (s * s != bound_sq) return;
        for (int sign = 1; sign >= -1; sign -= 2) {
          Int y = sign > 0 ? Int(s) : Int(-s);
          if (sign < 0 && s == 0) break;
          Int num = y - c;
          if (!divides_of(den, num)) continue;
          z_[0] = num / den;
          visit(std::span<const Int>(z_), bound_);
        }
      } else {
        Int lo = ceil_div_of(Int(-s - c), den);
        Int hi = floor_div_of(Int(s - c), den);
        for (Int z = lo; z <= hi; ++z) {
          z_[0] = z;
          Int y = den * z + c;
          Int value = bound_ - (bound_sq - y * y) / minors_[0];
          visit(std::span<const Int>(z_), value);
        }
      }
      return;
    }
    Int lo = ceil_div_of(Int(-s - c), den);
    Int hi = floor_div_of(Int(s - c), den);
    if (lo > hi) return;
    const std::size_t below = i - 1;
    Int base = minors_[below] * shift_[below];
    for (std::size_t j = i + 1; j < n_; ++j) base += u_[j] * coupling_[below * n_ + j];
    const Int& link = coupling_[below * n_ + i];
    for (Int z = lo; z <= hi; ++z) {
      z_[i] = z;
      u_[i] = delta_ * z + shift_[i];
      Int y = den * z + c;
      r_[below] = (bound_sq - y * y) / minors_[i];
      c_[below] = base + u_[i] * link;
      descend<Exact>(below, visit);
    }
  }

  std::size_t n_;
  Int delta_;
  Int bound_;
  Int one_ = Int(1);
  std::vector<Int> minors_;
  std::vector<Int> shift_;
  std::vector<Int> coupling_;
  std::vector<Int> z_;
  std::vector<Int> u_;
  std::vector<Int> c_;
  std::vector<Int> r_;
};

/// Dispatches to the int64 or arbitrary-precision instantiation. The visitor
/// must accept both std::span<const std::int64_t> and std::span<const BigInt>.
template <class Visit>
void for_each_point(const EnumerationSetup& s, bool exact, Visit&& visit, bool allow_fixed_width = true) {
  if (s.n == 0) {
    // the single point of the zero-dimensional lattice has value 0
    std::vector<std::int64_t> none;
    if (!exact || s.bound == 0) visit(std::span<const std::int64_t>(none), std::int64_t{0});
    return;
  }
  if (s.fits_int64 && allow_fixed_width) {
    FinckePohst<std::int64_t> e(s);
    if (exact) e.enumerate_exact(visit); else e.enumerate_all(visit);
  } else {
    FinckePohst<BigInt> e(s);
    if (exact) e.enumerate_exact(visit); else e.enumerate_all(visit);
  }
}

}  // namespace thetacong::detail
