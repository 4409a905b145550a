#include "thetacong/enumeration.hpp"

#include <algorithm>
#include <numeric>
#include <type_traits>

#include "fincke_pohst.hpp"

namespace thetacong {

namespace detail {

EnumerationSetup make_setup(const IntegerMatrix& gram, std::vector<BigInt> shift, BigInt delta, BigInt bound) {
  if (!gram.is_square()) throw Error(Errc::NonSquare, "enumeration needs a square Gram matrix");
  const std::size_t n = gram.rows();
  if (shift.size() != n) throw Error(Errc::DimensionMismatch, "enumeration shift");
  if (delta <= 0) throw Error(Errc::InvalidInput, "enumeration scale must be positive");

  EnumerationSetup s;
  s.n = n;
  s.shift = std::move(shift);
  s.delta = std::move(delta);
  s.bound = std::move(bound);
  s.coupling = IntegerMatrix(n, n);
  if (n == 0) {
    s.fits_int64 = true;
    return s;
  }

  LdlDecomposition ldl = rational_cholesky(gram);
  s.minors.resize(n);
  BigRat running = 1;
  for (std::size_t i = 0; i < n; ++i) {
    running *= ldl.diag[i];
    if (running.get_den() != 1) throw Error(Errc::Internal, "leading minor is not integral");
    s.minors[i] = running.get_num();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      BigRat a = ldl.lower(j, i) * s.minors[i];
      if (a.get_den() != 1) throw Error(Errc::Internal, "fraction-free coupling is not integral");
      s.coupling(i, j) = a.get_num();
    }

  if (s.bound < 0) {
    s.fits_int64 = true;
    return s;
  }

  // Diagonal of G^{-1} = L^{-T} D^{-1} L^{-1} bounds |u_j| <= sqrt(bound * (G^{-1})_jj).
  RationalMatrix linv = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      BigRat acc = 0;
      for (std::size_t k = j; k < i; ++k) acc -= ldl.lower(i, k) * linv(k, j);
      linv(i, j) = acc;
    }
  std::vector<BigInt> umax(n);
  for (std::size_t j = 0; j < n; ++j) {
    BigRat inv_jj = 0;
    for (std::size_t k = j; k < n; ++k) inv_jj += linv(k, j) * linv(k, j) / ldl.diag[k];
    BigRat scaled = inv_jj * s.bound;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    umax[j] = isqrt_big(fl) + 1;
  }

  const BigInt limit = BigInt(1) << 61;
  BigInt worst = 0;
  auto track = [&](const BigInt& v) {
    BigInt a = abs(v);
    if (a > worst) worst = a;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const BigInt below = i == 0 ? BigInt(1) : s.minors[i - 1];
    BigInt bound_sq = below * s.minors[i] * s.bound;
    track(bound_sq);
    BigInt cmax = abs(s.minors[i] * s.shift[i]);
    for (std::size_t j = i + 1; j < n; ++j) cmax += abs(s.coupling(i, j)) * (umax[j] + abs(s.shift[j]));
    BigInt sq = isqrt_big(bound_sq);
    track(cmax + sq + s.minors[i] * s.delta);
    track(umax[i] + 2 * abs(s.shift[i]) + s.delta);
    track(s.minors[i] * s.delta * (umax[i] + abs(s.shift[i]) + 1));
  }
  s.fits_int64 = worst < limit;
  return s;
}

}  // namespace detail

namespace {

std::int64_t to_i64(std::int64_t v) { return v; }
std::int64_t to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) throw Error(Errc::TooLarge, "coordinate exceeds 64 bits");
  return v.get_si();
}
BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }
BigInt to_big(const BigInt& v) { return v; }

void require_pd(const IntegerMatrix& gram) {
  if (!gram.is_square()) throw Error(Errc::NonSquare, "Gram matrix must be square");
  if (!gram.is_symmetric()) throw Error(Errc::InvalidInput, "Gram matrix must be symmetric");
  // rational_cholesky (inside lll_reduce / make_setup) raises NotPositiveDefinite
}

bool lex_less(std::span<const BigInt> a, std::span<const BigInt> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<BigInt> zero_shift(std::size_t n) { return std::vector<BigInt>(n); }

// Converts enumerated coordinates z (reduced basis) to x = z * transform.
template <class Span>
std::vector<BigInt> apply_transform(Span z, const IntegerMatrix& transform) {
  std::vector<BigInt> x(transform.cols());
  for (std::size_t k = 0; k < z.size(); ++k) {
    if (z[k] == 0) continue;
    BigInt zk = to_big(z[k]);
    for (std::size_t j = 0; j < transform.cols(); ++j) x[j] += zk * transform(k, j);
  }
  return x;
}

bool all_zero_span(auto z) {
  for (const auto& v : z)
    if (v != 0) return false;
  return true;
}

}  // namespace

std::vector<ShortVector> short_vectors(const IntegerMatrix& gram, const BigInt& bound) {
  require_pd(gram);
  std::vector<ShortVector> out;
  if (gram.rows() == 0 || bound <= 0) {
    if (gram.rows() != 0 && !is_positive_definite(gram)) throw Error(Errc::NotPositiveDefinite, "Gram matrix");
    return out;
  }
  LllResult red = lll_reduce(gram);
  auto setup = detail::make_setup(red.gram, zero_shift(gram.rows()), 1, bound);
  detail::for_each_point(setup, false, [&](auto z, const auto& value) {
    if (all_zero_span(z)) return;
    out.push_back({apply_transform(z, red.transform), to_big(value)});
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) { return lex_less(a.coords, b.coords); });
  return out;
}

std::vector<ShortVector> vectors_with_norm(const IntegerMatrix& gram, const BigInt& norm) {
  require_pd(gram);
  std::vector<ShortVector> out;
  if (gram.rows() == 0 || norm <= 0) {
    if (gram.rows() != 0 && !is_positive_definite(gram)) throw Error(Errc::NotPositiveDefinite, "Gram matrix");
    return out;
  }
  LllResult red = lll_reduce(gram);
  auto setup = detail::make_setup(red.gram, zero_shift(gram.rows()), 1, norm);
  detail::for_each_point(setup, true, [&](auto z, const auto&) {
    out.push_back({apply_transform(z, red.transform), norm});
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) { return lex_less(a.coords, b.coords); });
  return out;
}

std::vector<ShortVector> constrained_vectors(const IntegerMatrix& gram, const BigInt& norm,
                                             std::span<const InnerProductConstraint> constraints) {
  require_pd(gram);
  const std::size_t n = gram.rows();
  if (!is_positive_definite(gram)) throw Error(Errc::NotPositiveDefinite, "Gram matrix");
  if (constraints.empty()) return vectors_with_norm(gram, norm);
  std::vector<ShortVector> out;
  if (norm < 0) return out;

  // x * A = c with A(:, j) = G * v_j^T.
  const std::size_t m = constraints.size();
  IntegerMatrix a(n, m);
  std::vector<BigInt> c(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (constraints[j].vector.size() != n) throw Error(Errc::DimensionMismatch, "constraint vector length");
    auto gv = row_times(constraints[j].vector, gram);  // G symmetric
    for (std::size_t i = 0; i < n; ++i) a(i, j) = gv[i];
    c[j] = constraints[j].value;
  }
  HnfResult h = hnf(a);

  // Particular solution: y_top * h_top = c by forward substitution on pivots.
  std::vector<BigInt> y(h.rank);
  std::vector<BigInt> rem = c;
  std::size_t col = 0;
  for (std::size_t k = 0; k < h.rank; ++k) {
    std::size_t pivot = col;
    while (h.h(k, pivot) == 0) ++pivot;
    for (; col < pivot; ++col)
      if (rem[col] != 0) return out;
    if (!mpz_divisible_p(rem[pivot].get_mpz_t(), h.h(k, pivot).get_mpz_t())) return out;
    y[k] = rem[pivot] / h.h(k, pivot);
    for (std::size_t j = pivot; j < m; ++j) rem[j] -= y[k] * h.h(k, j);
    col = pivot + 1;
  }
  for (; col < m; ++col)
    if (rem[col] != 0) return out;
  std::vector<BigInt> x0(n);
  for (std::size_t k = 0; k < h.rank; ++k)
    for (std::size_t j = 0; j < n; ++j) x0[j] += y[k] * h.u(k, j);

  IntegerMatrix kernel = h.u.select_rows(h.rank, n);
  if (kernel.rows() == 0) {
    if (bilinear(x0, gram, x0) == norm && norm > 0) out.push_back({x0, norm});
    return out;
  }

  LllResult kred = lll_reduce(gram_of(kernel, gram));
  kernel = kred.transform * kernel;
  const IntegerMatrix& gk = kred.gram;
  const std::size_t k = kernel.rows();

  // q(x0 + z K) = (z + z0) Gk (z + z0)^T + const with z0 = Gk^{-1} (K G x0^T).
  auto gx0 = row_times(x0, gram);
  std::vector<BigInt> lin(k);
  for (std::size_t i = 0; i < k; ++i) lin[i] = dot(kernel.row(i), gx0);
  std::vector<BigRat> z0 = solve_rational(gk, lin);
  BigInt delta = 1;
  for (const auto& q : z0) mpz_lcm(delta.get_mpz_t(), delta.get_mpz_t(), q.get_den_mpz_t());
  std::vector<BigInt> shift(k);
  for (std::size_t i = 0; i < k; ++i) {
    BigRat t = z0[i] * delta;
    BigInt num = t.get_num();
    // move the integral part of z0 into x0 so the shift lies in [0, delta)
    BigInt q = detail::floor_div_big(num, delta);
    shift[i] = num - q * delta;
    if (q != 0)
      for (std::size_t j = 0; j < n; ++j) x0[j] -= q * kernel(i, j);
  }
  // delta^2 * (norm - q(x0)) + shift Gk shift^T
  BigInt target = delta * delta * (norm - bilinear(x0, gram, x0)) + bilinear(shift, gk, shift);
  if (target < 0) return out;

  auto setup = detail::make_setup(gk, shift, delta, target);
  detail::for_each_point(setup, true, [&](auto z, const auto&) {
    std::vector<BigInt> x = x0;
    for (std::size_t i = 0; i < k; ++i) {
      if (z[i] == 0) continue;
      BigInt zi = to_big(z[i]);
      for (std::size_t j = 0; j < n; ++j) x[j] += zi * kernel(i, j);
    }
    if (norm == 0 && std::all_of(x.begin(), x.end(), [](const BigInt& v) { return v == 0; })) return;
    out.push_back({std::move(x), norm});
  });
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) { return lex_less(a.coords, b.coords); });
  return out;
}

std::map<BigInt, BigInt> norm_counts(const IntegerMatrix& gram, const BigInt& bound) {
  require_pd(gram);
  std::map<BigInt, BigInt> out;
  if (gram.rows() == 0) return out;
  LllResult red = lll_reduce(gram);
  if (bound <= 0) return out;
  auto setup = detail::make_setup(red.gram, zero_shift(gram.rows()), 1, bound);
  if (setup.fits_int64 && bound.fits_slong_p()) {
    std::vector<std::uint64_t> hist(bound.get_ui() + 1, 0);
    detail::for_each_point(setup, false, [&](auto, const auto& value) { ++hist[to_i64(value)]; });
    for (std::size_t v = 1; v < hist.size(); ++v)
      if (hist[v]) out[BigInt(static_cast<unsigned long>(v))] = BigInt(static_cast<unsigned long>(hist[v]));
  } else {
    detail::for_each_point(setup, false, [&](auto, const auto& value) {
      BigInt v = to_big(value);
      if (v != 0) out[v] += 1;
    });
  }
  return out;
}

MinimumInfo min_norm_and_kissing(const IntegerMatrix& gram) {
  require_pd(gram);
  if (gram.rows() == 0) throw Error(Errc::InvalidInput, "zero lattice has no minimum");
  LllResult red = lll_reduce(gram);
  BigInt bound = red.gram(0, 0);
  for (std::size_t i = 1; i < gram.rows(); ++i) bound = std::min(bound, BigInt(red.gram(i, i)));
  auto counts = norm_counts(red.gram, bound);
  if (counts.empty()) throw Error(Errc::Internal, "no vector found below a basis norm");
  return {counts.begin()->first, counts.begin()->second};
}

BigInt count_vectors_with_norm(const IntegerMatrix& gram, const BigInt& norm) {
  require_pd(gram);
  if (gram.rows() == 0) return 0;
  LllResult red = lll_reduce(gram);
  if (norm <= 0) return 0;
  auto setup = detail::make_setup(red.gram, zero_shift(gram.rows()), 1, norm);
  std::uint64_t count = 0;
  detail::for_each_point(setup, true, [&](auto, const auto&) { ++count; });
  return BigInt(static_cast<unsigned long>(count));
}

// ---------------------------------------------------------------------------

void PackedVectors::push_back(std::span<const std::int64_t> coords, std::int64_t norm) {
  if (coords.size() != dim_) throw Error(Errc::DimensionMismatch, "PackedVectors::push_back");
  coords_.insert(coords_.end(), coords.begin(), coords.end());
  norms_.push_back(norm);
}

void PackedVectors::sort_by_norm_then_coords() {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (norms_[a] != norms_[b]) return norms_[a] < norms_[b];
    auto x = (*this)[a];
    auto y = (*this)[b];
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  std::vector<std::int64_t> coords;
  std::vector<std::int64_t> norms;
  coords.reserve(coords_.size());
  norms.reserve(norms_.size());
  for (std::size_t i : order) {
    auto x = (*this)[i];
    coords.insert(coords.end(), x.begin(), x.end());
    norms.push_back(norms_[i]);
  }
  coords_ = std::move(coords);
  norms_ = std::move(norms);
}

std::vector<BigInt> PackedVectors::big_coords(std::size_t i) const {
  auto x = (*this)[i];
  std::vector<BigInt> out;
  out.reserve(dim_);
  for (auto v : x) out.emplace_back(static_cast<long>(v));
  return out;
}

PackedVectors short_vectors_packed(const IntegerMatrix& gram, const BigInt& bound) {
  require_pd(gram);
  const std::size_t n = gram.rows();
  PackedVectors out(n);
  if (n == 0) return out;
  LllResult red = lll_reduce(gram);
  if (bound <= 0) return out;

  std::vector<std::int64_t> transform(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) transform[i * n + j] = to_i64(red.transform(i, j));

  auto setup = detail::make_setup(red.gram, zero_shift(n), 1, bound);
  std::vector<std::int64_t> x(n);
  detail::for_each_point(setup, false, [&](auto z, const auto& value) {
    if (all_zero_span(z)) return;
    for (std::size_t j = 0; j < n; ++j) {
      __int128 acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += static_cast<__int128>(to_i64(z[k])) * transform[k * n + j];
      if (acc > INT64_MAX || acc < INT64_MIN) throw Error(Errc::TooLarge, "coordinate exceeds 64 bits");
      x[j] = static_cast<std::int64_t>(acc);
    }
    out.push_back(x, to_i64(value));
  });
  out.sort_by_norm_then_coords();
  return out;
}

}  // namespace thetacong
