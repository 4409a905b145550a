#include <doctest.h>

#include "../support/errors.hpp"
#include "../support/oracles.hpp"
#include "thetacong/exact_linalg.hpp"

using namespace thetacong;

TEST_CASE("det_bareiss examples") {
  CHECK(det_bareiss(IntegerMatrix{{4, 1}, {1, 6}}) == 23);
  for (std::size_t n = 0; n <= 6; ++n) CHECK(det_bareiss(IntegerMatrix::identity(n)) == 1);
  IntegerMatrix g{{2, 1}, {1, 2}};
  CHECK(det_bareiss(g) == g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0));
  CHECK(det_bareiss(g) == 3);
  CHECK(error_of([] { det_bareiss(IntegerMatrix(2, 3)); }) == Errc::NonSquare);
}

TEST_CASE("det_bareiss handles entries beyond 64 bits") {
  IntegerMatrix m{{1, 0}, {0, 1}};
  m(0, 0) = BigInt("123456789012345678901234567890");
  m(1, 1) = BigInt("987654321098765432109876543210");
  CHECK(det_bareiss(m) == m(0, 0) * m(1, 1));
}

TEST_CASE("hnf examples") {
  HnfResult r = hnf(IntegerMatrix{{2, 0}, {1, 1}});
  CHECK(r.h == IntegerMatrix{{1, 1}, {0, 2}});
  CHECK(r.u * IntegerMatrix{{2, 0}, {1, 1}} == r.h);

  CHECK(hnf(IntegerMatrix::identity(4)).h == IntegerMatrix::identity(4));

  HnfResult z = hnf(IntegerMatrix(2, 2));
  CHECK(z.h == IntegerMatrix(2, 2));
  CHECK(z.u == IntegerMatrix::identity(2));
  CHECK(z.rank == 0);
}

TEST_CASE("integer_kernel examples") {
  CHECK(integer_kernel(IntegerMatrix{{-1, 1}, {1, -1}}) == IntegerMatrix{{1, 1}});
  CHECK(integer_kernel(IntegerMatrix::identity(3)).rows() == 0);
  // x * m = 0 with x in Z^2 and m a column: 2a + 4b = 0
  CHECK(integer_kernel(IntegerMatrix{{2}, {4}}) == IntegerMatrix{{2, -1}});
  // a single row has only the trivial kernel under x * m
  CHECK(integer_kernel(IntegerMatrix{{2, 4}}).rows() == 0);
}

TEST_CASE("index_of_sublattice examples") {
  CHECK(index_of_sublattice(IntegerMatrix::identity(3)) == 1);
  CHECK(index_of_sublattice(IntegerMatrix{{2, 0}, {0, 1}}) == 2);
  CHECK(index_of_sublattice(IntegerMatrix{{1, 1}, {-1, 1}}) == 2);
  CHECK(error_of([] { index_of_sublattice(IntegerMatrix{{1, 2}, {2, 4}}); }) == Errc::NotFullRank);
}

TEST_CASE("rational_cholesky examples") {
  auto a = rational_cholesky(IntegerMatrix{{2, 0}, {0, 2}});
  CHECK(a.diag == std::vector<BigRat>{2, 2});
  CHECK(a.lower == RationalMatrix::identity(2));

  auto b = rational_cholesky(IntegerMatrix{{2, -1}, {-1, 2}});
  CHECK(b.diag == std::vector<BigRat>{2, BigRat(3, 2)});
  CHECK(b.lower(1, 0) == BigRat(-1, 2));

  CHECK(error_of([] { rational_cholesky(IntegerMatrix{{0, 0}, {0, 1}}); }) == Errc::NotPositiveDefinite);
}

TEST_CASE("rational_cholesky reconstructs the input") {
  oracle::Rng rng(11);
  for (int c = 0; c < 100; ++c) {
    auto n = static_cast<std::size_t>(rng.between(1, 5));
    IntegerMatrix g = oracle::random_even_gram(rng, n);
    auto d = rational_cholesky(g);
    RationalMatrix diag(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(d.diag[i] > 0);
      diag(i, i) = d.diag[i];
    }
    CHECK(d.lower * diag * d.lower.transpose() == to_rational(g));
  }
}

TEST_CASE("lll_reduce examples") {
  auto a = lll_reduce(IntegerMatrix{{2, -1}, {-1, 2}});
  CHECK(a.gram(0, 0) == 2);
  CHECK(a.gram(1, 1) == 2);
  CHECK(abs(a.gram(0, 1)) == 1);

  IntegerMatrix g{{2, 3}, {3, 5}};
  auto b = lll_reduce(g);
  CHECK(det_bareiss(b.gram) == 1);
  CHECK(b.gram(0, 0) <= 2);
  CHECK(b.gram(1, 1) <= 2);
  // exhaustive oracle: the first reduced vector is a shortest vector
  BigInt best = 100;
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y)
      if (x != 0 || y != 0) best = std::min(best, BigInt(2 * x * x + 6 * x * y + 5 * y * y));
  CHECK(b.gram(0, 0) == best);

  CHECK(error_of([] { lll_reduce(IntegerMatrix{{2, 3}, {3, 2}}); }) == Errc::NotPositiveDefinite);
}

TEST_CASE("lll_reduce preserves determinant and parity") {
  oracle::Rng rng(12);
  for (int c = 0; c < 100; ++c) {
    auto n = static_cast<std::size_t>(rng.between(1, 6));
    IntegerMatrix g = oracle::random_basis_change(rng, oracle::random_even_gram(rng, n));
    auto r = lll_reduce(g);
    CHECK(r.transform * g * r.transform.transpose() == r.gram);
    BigInt du = det_bareiss(r.transform);
    CHECK((du == 1 || du == -1));
    CHECK(det_bareiss(r.gram) == det_bareiss(g));
    for (std::size_t i = 0; i < n; ++i) CHECK(mpz_even_p(r.gram(i, i).get_mpz_t()));
  }
}

TEST_CASE("solve_integral and rows_in_lattice") {
  IntegerMatrix basis{{2, 0}, {0, 3}};
  auto y = solve_integral(basis, std::vector<BigInt>{4, 9});
  REQUIRE(y);
  CHECK(*y == std::vector<BigInt>{2, 3});
  CHECK_FALSE(solve_integral(basis, std::vector<BigInt>{1, 0}));
  CHECK(rows_in_lattice(IntegerMatrix{{2, 3}, {6, 0}}, basis));
  CHECK_FALSE(rows_in_lattice(IntegerMatrix{{2, 1}}, basis));
}

TEST_CASE("HnfAccumulator matches hnf_basis of everything added") {
  oracle::Rng rng(13);
  for (int c = 0; c < 100; ++c) {
    auto dim = static_cast<std::size_t>(rng.between(1, 4));
    HnfAccumulator acc(dim);
    IntegerMatrix all(0, dim);
    for (int k = 0; k < 6; ++k) {
      IntegerMatrix v = oracle::random_matrix(rng, 1, dim, -4, 4);
      bool before = acc.contains(v.row(0));
      bool grew = acc.add(v.row(0));
      CHECK(grew != before);
      all.append_row(v.row(0));
      CHECK(acc.basis() == hnf_basis(all));
    }
    CHECK(acc.is_full() == (hnf_basis(all) == IntegerMatrix::identity(dim)));
  }
}

TEST_CASE("randomized cross-checks against naive algorithms") {
  oracle::Tally t = oracle::linalg_properties(2024, 1000);
  CHECK(t.cases >= 1000);
  for (const auto& f : t.failures) FAIL_CHECK(f);
}
