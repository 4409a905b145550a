#include <doctest.h>

#include "../support/errors.hpp"
#include "../support/oracles.hpp"
#include "thetacong/fixpoint.hpp"

using namespace thetacong;

namespace {

struct Pair {
  std::string name;
  Lattice lattice;
  IntegerMatrix matrix;
  unsigned long p;
};

// Coxeter element of A_{p-1} on simple-root coordinates, as the file matrix U.
IntegerMatrix coxeter_a(std::size_t n) {
  IntegerMatrix g = cartan_a(n);
  IntegerMatrix r = IntegerMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    IntegerMatrix s = IntegerMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) s(k, i) -= g(k, i);
    r = r * s;
  }
  return r.transpose();
}

IntegerMatrix block(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// Same pair in the basis W: Gram W G W^T and row action W R W^{-1}.
Pair conjugate(oracle::Rng& rng, const Pair& in) {
  IntegerMatrix w;
  IntegerMatrix g = oracle::random_basis_change(rng, in.lattice.gram, &w);
  IntegerMatrix w_inv = hnf(w).u;
  IntegerMatrix r = w * in.matrix.transpose() * w_inv;
  return {in.name + "'", make_lattice(g), r.transpose(), in.p};
}

std::vector<Pair> catalog_pairs() {
  std::vector<Pair> out;
  for (const auto& name : catalog_names()) {
    const auto& e = catalog(name);
    for (const auto& a : e.automorphisms) out.push_back({name + "/" + a.name, e.lattice, a.matrix, a.order});
  }
  return out;
}

std::vector<Pair> random_pairs() {
  oracle::Rng rng(41);
  std::vector<Pair> base;
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    Lattice a = make_lattice(cartan_a(p - 1));
    base.push_back({"A" + std::to_string(p - 1), a, coxeter_a(p - 1), p});
    Lattice a1 = make_lattice(IntegerMatrix{{2}});
    base.push_back({"A+A1", direct_sum(a, a1), block(coxeter_a(p - 1), IntegerMatrix::identity(1)), p});
    base.push_back({"A+A", direct_sum(a, a), block(coxeter_a(p - 1), coxeter_a(p - 1)), p});
  }
  std::vector<Pair> out;
  for (const auto& b : base)
    for (int k = 0; k < 3; ++k) out.push_back(conjugate(rng, b));
  return out;
}

Automorphism checked(const Pair& pair) { return validate_automorphism(pair.lattice, pair.matrix, pair.p); }

}  // namespace

TEST_CASE("validate_automorphism examples") {
  Lattice a2 = catalog("A2").lattice;
  IntegerMatrix rot{{0, -1}, {1, -1}};
  Automorphism s = validate_automorphism(a2, rot, 3);
  CHECK(matrix_power(rot, 3) == IntegerMatrix::identity(2));
  CHECK(s.action == rot.transpose());

  CHECK(error_of([&] { validate_automorphism(a2, IntegerMatrix::identity(2), 3); }) == Errc::WrongOrder);
  CHECK(error_of([&] { validate_automorphism(a2, rot, 2); }) == Errc::NotOddPrime);
  CHECK(error_of([&] { validate_automorphism(a2, rot, 9); }) == Errc::NotOddPrime);
  CHECK(error_of([&] { validate_automorphism(a2, IntegerMatrix{{1, 1}, {0, 1}}, 3); }) == Errc::NotIsometry);
  CHECK(error_of([&] { validate_automorphism(a2, IntegerMatrix::identity(3), 3); }) == Errc::DimensionMismatch);
  CHECK(error_of([&] { validate_automorphism(a2, rot, 5); }) == Errc::WrongOrder);
}

TEST_CASE("iota_embed examples") {
  auto one = iota_embed(GroupRingElement{{1, 0, 0}}, 3);
  CHECK(one.a == 1);
  CHECK(one.beta == std::vector<BigInt>{-1, -1});

  auto norm = iota_embed(GroupRingElement{{1, 1, 1}}, 3);
  CHECK(norm.a == 3);
  CHECK(norm.beta == std::vector<BigInt>{0, 0});

  auto sigma = iota_embed(GroupRingElement{{0, 1, 0}}, 3);
  CHECK(sigma.a == 1);
  CHECK(sigma.beta == std::vector<BigInt>{1, 0});
}

TEST_CASE("iota_preimage examples") {
  std::vector<BigInt> zero{0, 0};
  CHECK(iota_preimage(3, zero, 3) == GroupRingElement{{1, 1, 1}});
  CHECK(error_of([&] { iota_preimage(1, zero, 3); }) == Errc::NotInImage);

  // p Z + (1 - zeta) Z[zeta] lies in the image: a = p with sum(beta) = 0 mod p
  oracle::Rng rng(42);
  for (unsigned long p : {3ul, 5ul, 7ul, 11ul})
    for (int c = 0; c < 50; ++c) {
      std::vector<BigInt> beta;
      BigInt sum = 0;
      for (unsigned long i = 0; i + 1 < p; ++i) {
        beta.emplace_back(rng.between(-5, 5));
        sum += beta.back();
      }
      beta.back() -= sum;  // force sum(beta) = 0
      beta.back() += BigInt(static_cast<long>(p)) * rng.between(-2, 2);
      auto e = iota_preimage(BigInt(static_cast<long>(p)), beta, p);
      auto back = iota_embed(e, p);
      CHECK(back.a == BigInt(static_cast<long>(p)));
      CHECK(back.beta == beta);
    }
}

TEST_CASE("cyclotomic_multiply: zeta^p = 1 and 1 + zeta + ... + zeta^{p-1} = 0") {
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    std::vector<BigInt> zeta(p - 1, BigInt(0));
    zeta[0] = 1;
    std::vector<BigInt> power = zeta;
    for (unsigned long k = 1; k < p; ++k) power = cyclotomic_multiply(power, zeta, p);
    // zeta^p = 1 = -(zeta + ... + zeta^{p-1})
    CHECK(power == std::vector<BigInt>(p - 1, BigInt(-1)));
  }
}

TEST_CASE("iota is a ring homomorphism and round-trips") {
  oracle::Tally t = oracle::iota_properties(7, 1200);
  CHECK(t.cases >= 1000);
  for (const auto& f : t.failures) FAIL_CHECK(f);
}

TEST_CASE("fixed and complementary sublattices of the catalog") {
  Automorphism a2 = validate_automorphism(catalog("A2").lattice, catalog("A2").automorphism("order3").matrix, 3);
  CHECK(fixed_sublattice(catalog("A2").lattice, a2).rank() == 0);
  CHECK(sigma_complement(catalog("A2").lattice, a2).rank() == 2);
  CHECK(is_fixed_point_free(catalog("A2").lattice, a2));

  const auto& leech = catalog("Leech");
  Automorphism s23 = validate_automorphism(leech.lattice, leech.automorphism("order23").matrix, 23);
  Sublattice m0 = fixed_sublattice(leech.lattice, s23);
  CHECK(m0.rank() == 2);
  CHECK(m0.determinant() == 23);
  CHECK(reduce_binary(BinaryForm::from_gram(m0.gram())) == BinaryForm{4, 1, 6});
  CHECK(sigma_complement(leech.lattice, s23).rank() == 22);
  CHECK_FALSE(is_fixed_point_free(leech.lattice, s23));

  Automorphism s11 = validate_automorphism(leech.lattice, leech.automorphism("order11").matrix, 11);
  CHECK(fixed_sublattice(leech.lattice, s11).rank() == 4);

  const auto& e8 = catalog("E8");
  Automorphism s7 = validate_automorphism(e8.lattice, e8.automorphism("order7").matrix, 7);
  CHECK(sigma_complement(e8.lattice, s7).rank() == 6);

  const auto& e8e8 = catalog("E8+E8");
  Automorphism b7 = validate_automorphism(e8e8.lattice, e8e8.automorphism("order7").matrix, 7);
  CHECK_FALSE(is_fixed_point_free(e8e8.lattice, b7));
}

TEST_CASE("projected lattices") {
  const auto& a2 = catalog("A2");
  Automorphism rot = validate_automorphism(a2.lattice, a2.automorphism("order3").matrix, 3);
  CHECK(projected_lattice(a2.lattice, rot, 0).scaled.rank() == 0);
  CHECK(error_of([&] { projected_lattice(a2.lattice, rot, 2); }) == Errc::InvalidInput);

  const auto& leech = catalog("Leech");
  Automorphism s = validate_automorphism(leech.lattice, leech.automorphism("order23").matrix, 23);
  ProjectedLattice p0 = projected_lattice(leech.lattice, s, 0);
  CHECK(p0.scaled.rank() == 2);
  // (P_0 : M_0) = (p P_0 : p M_0), read off from coordinates of p M_0 in the basis of p P_0
  Sublattice m0 = fixed_sublattice(leech.lattice, s);
  IntegerMatrix rel(0, 2);
  for (std::size_t i = 0; i < m0.rank(); ++i) {
    std::vector<BigInt> scaled;
    for (const auto& x : m0.coords().row(i)) scaled.push_back(23 * x);
    auto y = solve_integral(p0.scaled.coords(), scaled);
    REQUIRE(y);
    rel.append_row(*y);
  }
  BigInt index = index_of_sublattice(rel);
  CHECK(23 % index == 0);
}

TEST_CASE("p P_0 + p P_1 has p-power index in M") {
  auto pairs = catalog_pairs();
  for (const auto& extra : random_pairs()) pairs.push_back(extra);
  for (const auto& pair : pairs) {
    CAPTURE(pair.name);
    Automorphism s = checked(pair);
    IntegerMatrix stacked(0, pair.lattice.rank());
    for (int part : {0, 1}) {
      ProjectedLattice pl = projected_lattice(pair.lattice, s, part);
      for (std::size_t i = 0; i < pl.scaled.rank(); ++i) stacked.append_row(pl.scaled.coords().row(i));
    }
    REQUIRE(stacked.rows() == pair.lattice.rank());
    BigInt index = index_of_sublattice(stacked);
    BigInt full;
    mpz_pow_ui(full.get_mpz_t(), BigInt(static_cast<long>(pair.p)).get_mpz_t(), pair.lattice.rank());
    CHECK(full % index == 0);
  }
}

TEST_CASE("lemma chain on the catalog") {
  for (const auto& pair : catalog_pairs()) {
    CAPTURE(pair.name);
    ChainReport r = lemma_chain_check(pair.lattice, checked(pair));
    CHECK(r.all_hold());
  }
}

TEST_CASE("splitting_check examples") {
  const auto& leech = catalog("Leech");
  FixedSplitReport r = splitting_check(leech.lattice, validate_automorphism(leech.lattice, leech.automorphism("order23").matrix, 23));
  CHECK_FALSE(r.is_orthogonal_split);
  CHECK(r.det_m0 == 23);
  CHECK(r.det_m0_divisible_by_p);
  CHECK(r.all_hold());

  const auto& e8e8 = catalog("E8+E8");
  FixedSplitReport b = splitting_check(e8e8.lattice, validate_automorphism(e8e8.lattice, e8e8.automorphism("order7").matrix, 7));
  CHECK(b.m0 == 10);
  CHECK(b.components.size() == 2);
  CHECK(b.all_hold());

  const auto& a2 = catalog("A2");
  FixedSplitReport t = splitting_check(a2.lattice, validate_automorphism(a2.lattice, a2.automorphism("order3").matrix, 3));
  CHECK(t.m0 == 0);
  CHECK(t.m1 == 2);
  CHECK(t.is_orthogonal_split);
  CHECK(t.all_hold());
}

TEST_CASE("structural invariants on catalog and conjugated pairs") {
  auto pairs = catalog_pairs();
  for (const auto& extra : random_pairs()) pairs.push_back(extra);
  oracle::Rng rng(43);
  for (const auto& pair : pairs) {
    CAPTURE(pair.name);
    Automorphism s = checked(pair);
    FixedSplitReport r = splitting_check(pair.lattice, s);
    CHECK(r.m0 + r.m1 == pair.lattice.rank());
    CHECK(r.m1 % (pair.p - 1) == 0);
    CHECK(r.chain.all_hold());
    if (!r.is_orthogonal_split) CHECK(r.det_m0 % BigInt(static_cast<long>(pair.p)) == 0);
    CHECK(r.all_hold());

    // orbits of non-fixed vectors have exactly p elements
    IntegerMatrix shift = s.action - IntegerMatrix::identity(pair.lattice.rank());
    for (int k = 0; k < 10; ++k) {
      IntegerMatrix x = oracle::random_matrix(rng, 1, pair.lattice.rank(), -2, 2);
      auto moved = row_times(x.row(0), shift);
      bool fixed = std::all_of(moved.begin(), moved.end(), [](const BigInt& v) { return v == 0; });
      CHECK(orbit_size(s, x.row(0)) == (fixed ? 1 : pair.p));
    }
  }
}
