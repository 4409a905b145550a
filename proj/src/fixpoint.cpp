#include "thetacong/fixpoint.hpp"

#include <algorithm>
#include <set>

namespace thetacong {

bool is_odd_prime(unsigned long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (unsigned long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

Automorphism validate_automorphism(const Lattice& lattice, const IntegerMatrix& u, unsigned long p) {
  if (!is_odd_prime(p)) throw Error(Errc::NotOddPrime, "automorphism order " + std::to_string(p) + " is not an odd prime");
  const std::size_t n = lattice.rank();
  if (u.rows() != n || u.cols() != n) throw Error(Errc::DimensionMismatch, "automorphism size does not match the lattice");
  if (u.transpose() * lattice.gram * u != lattice.gram) throw Error(Errc::NotIsometry, "U^T G U != G");
  const IntegerMatrix id = IntegerMatrix::identity(n);
  if (u == id) throw Error(Errc::WrongOrder, "automorphism is the identity");
  if (p > 0xFFFFFFFFul || matrix_power(u, static_cast<unsigned>(p)) != id)
    throw Error(Errc::WrongOrder, "U^p != I for p = " + std::to_string(p));
  return {u, u.transpose(), p};
}

// ---------------------------------------------------------------------------
// Group ring

namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) throw Error(Errc::DimensionMismatch, what);
}

}  // namespace

IotaImage iota_embed(const GroupRingElement& e, unsigned long p) {
  require_length(e.coeffs.size(), p, "group ring element must have p coefficients");
  IotaImage out;
  for (const auto& c : e.coeffs) out.a += c;
  out.beta.resize(p - 1);
  for (std::size_t i = 1; i < p; ++i) out.beta[i - 1] = e.coeffs[i] - e.coeffs[0];
  return out;
}

GroupRingElement iota_preimage(const BigInt& a, std::span<const BigInt> beta, unsigned long p) {
  require_length(beta.size(), p - 1, "beta must have p - 1 coefficients");
  BigInt num = a;
  for (const auto& b : beta) num -= b;
  if (!mpz_divisible_ui_p(num.get_mpz_t(), p)) throw Error(Errc::NotInImage, "p does not divide a - sum(beta)");
  GroupRingElement e;
  e.coeffs.resize(p);
  e.coeffs[0] = num / BigInt(p);
  for (std::size_t i = 1; i < p; ++i) e.coeffs[i] = beta[i - 1] + e.coeffs[0];
  return e;
}

GroupRingElement group_ring_add(const GroupRingElement& x, const GroupRingElement& y) {
  require_length(x.coeffs.size(), y.coeffs.size(), "group ring elements of different length");
  GroupRingElement out{x.coeffs};
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += y.coeffs[i];
  return out;
}

GroupRingElement group_ring_multiply(const GroupRingElement& x, const GroupRingElement& y) {
  const std::size_t p = x.coeffs.size();
  require_length(y.coeffs.size(), p, "group ring elements of different length");
  GroupRingElement out{std::vector<BigInt>(p)};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out.coeffs[(i + j) % p] += x.coeffs[i] * y.coeffs[j];
  return out;
}

std::vector<BigInt> cyclotomic_multiply(std::span<const BigInt> x, std::span<const BigInt> y, unsigned long p) {
  require_length(x.size(), p - 1, "cyclotomic element must have p - 1 coefficients");
  require_length(y.size(), p - 1, "cyclotomic element must have p - 1 coefficients");
  std::vector<BigInt> acc(p);  // coefficients of zeta^0 .. zeta^{p-1}
  for (std::size_t i = 0; i + 1 < p; ++i)
    for (std::size_t j = 0; j + 1 < p; ++j) acc[(i + j + 2) % p] += x[i] * y[j];
  // zeta^0 = -(zeta + ... + zeta^{p-1})
  std::vector<BigInt> out(p - 1);
  for (std::size_t k = 1; k < p; ++k) out[k - 1] = acc[k] - acc[0];
  return out;
}

IotaImage iota_add(const IotaImage& x, const IotaImage& y) {
  require_length(x.beta.size(), y.beta.size(), "images of different length");
  IotaImage out{x.a + y.a, x.beta};
  for (std::size_t i = 0; i < out.beta.size(); ++i) out.beta[i] += y.beta[i];
  return out;
}

IotaImage iota_multiply(const IotaImage& x, const IotaImage& y, unsigned long p) {
  return {x.a * y.a, cyclotomic_multiply(x.beta, y.beta, p)};
}

// ---------------------------------------------------------------------------
// Sublattices attached to sigma

namespace {

IntegerMatrix orbit_sum(const Automorphism& sigma) {
  const std::size_t n = sigma.action.rows();
  IntegerMatrix sum(n, n), power = IntegerMatrix::identity(n);
  for (unsigned long i = 0; i < sigma.order; ++i) {
    sum = sum + power;
    power = power * sigma.action;
  }
  return sum;
}

void require_compatible(const Lattice& lattice, const Automorphism& sigma) {
  if (sigma.action.rows() != lattice.rank() || sigma.action.cols() != lattice.rank())
    throw Error(Errc::DimensionMismatch, "automorphism size does not match the lattice");
}

bool divisible(const BigInt& a, unsigned long p) { return mpz_divisible_ui_p(a.get_mpz_t(), p) != 0; }

bool is_power_of(BigInt v, unsigned long p) {
  if (v <= 0) return false;
  while (v != 1) {
    if (!divisible(v, p)) return false;
    v /= p;
  }
  return true;
}

}  // namespace

Sublattice fixed_sublattice(const Lattice& lattice, const Automorphism& sigma) {
  require_compatible(lattice, sigma);
  return Sublattice(lattice, integer_kernel(sigma.action - IntegerMatrix::identity(lattice.rank())));
}

Sublattice sigma_complement(const Lattice& lattice, const Automorphism& sigma) {
  require_compatible(lattice, sigma);
  return Sublattice(lattice, integer_kernel(orbit_sum(sigma)));
}

bool is_fixed_point_free(const Lattice& lattice, const Automorphism& sigma) {
  return fixed_sublattice(lattice, sigma).rank() == 0;
}

ProjectedLattice projected_lattice(const Lattice& lattice, const Automorphism& sigma, int part) {
  require_compatible(lattice, sigma);
  if (part != 0 && part != 1) throw Error(Errc::InvalidInput, "projection index must be 0 or 1");
  const std::size_t n = lattice.rank();
  IntegerMatrix scaled_projection = orbit_sum(sigma);
  if (part == 1) scaled_projection = BigInt(sigma.order) * IntegerMatrix::identity(n) - scaled_projection;
  Sublattice scaled(lattice, hnf_basis(scaled_projection));
  RationalMatrix g = to_rational(scaled.gram());
  const BigRat p2 = BigRat(BigInt(sigma.order) * BigInt(sigma.order));
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) /= p2;
  return {std::move(scaled), std::move(g)};
}

bool ChainReport::all_hold() const {
  for (int i = 0; i < 2; ++i)
    if (!scaled_projection_in_part[i] || !part_in_projection[i] || !projection_in_dual[i]) return false;
  return true;
}

ChainReport lemma_chain_check(const Lattice& lattice, const Automorphism& sigma) {
  ChainReport r;
  const BigInt p(sigma.order);
  const Sublattice parts[2] = {fixed_sublattice(lattice, sigma), sigma_complement(lattice, sigma)};
  for (int i = 0; i < 2; ++i) {
    const Sublattice& part = parts[i];
    const Sublattice scaled = projected_lattice(lattice, sigma, i).scaled;
    r.scaled_projection_in_part[i] = rows_in_lattice(scaled.coords(), part.coords());
    r.part_in_projection[i] = rows_in_lattice(p * part.coords(), scaled.coords());
    IntegerMatrix pairing = scaled.coords() * lattice.gram * part.coords().transpose();
    bool integral = true;
    for (std::size_t a = 0; a < pairing.rows() && integral; ++a)
      for (std::size_t b = 0; b < pairing.cols() && integral; ++b) integral = divisible(pairing(a, b), sigma.order);
    r.projection_in_dual[i] = integral;
  }
  return r;
}

bool FixedSplitReport::all_hold() const {
  return m0 + m1 == rank && m1_divisible && projections_split && chain.all_hold() && disjunction_holds &&
         theorem_holds;
}

FixedSplitReport splitting_check(const Lattice& lattice, const Automorphism& sigma) {
  require_compatible(lattice, sigma);
  const unsigned long p = sigma.order;
  const std::size_t n = lattice.rank();
  FixedSplitReport r;
  r.p = p;
  r.rank = n;

  Sublattice m0 = fixed_sublattice(lattice, sigma);
  Sublattice m1 = sigma_complement(lattice, sigma);
  r.m0 = m0.rank();
  r.m1 = m1.rank();
  r.m0_gram = m0.gram();
  r.det_lattice = det_bareiss(lattice.gram);
  r.det_m0 = m0.determinant();
  r.det_m1 = m1.determinant();
  r.m1_divisible = r.m1 % (p - 1) == 0;

  // (M : M_0 + M_1)^2 = det(M_0) det(M_1) / det(M)
  BigInt num = r.det_m0 * r.det_m1;
  if (r.m0 + r.m1 != n || !mpz_divisible_p(num.get_mpz_t(), r.det_lattice.get_mpz_t()))
    throw Error(Errc::Internal, "fixed and complementary sublattices do not span a full-rank sublattice");
  BigInt square = num / r.det_lattice;
  if (!mpz_perfect_square_p(square.get_mpz_t())) throw Error(Errc::Internal, "split index is not an integer");
  mpz_sqrt(r.split_index.get_mpz_t(), square.get_mpz_t());
  r.is_orthogonal_split = r.split_index == 1;

  // p P_0 + p P_1: complementary, orthogonal, and containing p M
  ProjectedLattice pr0 = projected_lattice(lattice, sigma, 0);
  ProjectedLattice pr1 = projected_lattice(lattice, sigma, 1);
  IntegerMatrix stacked = pr0.scaled.coords();
  for (std::size_t i = 0; i < pr1.scaled.rank(); ++i) stacked.append_row(pr1.scaled.coords().row(i));
  IntegerMatrix cross = pr0.scaled.coords() * lattice.gram * pr1.scaled.coords().transpose();
  bool split_ok = stacked.rows() == n && (cross.rows() == 0 || cross.cols() == 0 || cross.is_zero());
  if (split_ok) {
    split_ok = rows_in_lattice(BigInt(p) * IntegerMatrix::identity(n), stacked);
    BigInt pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
    split_ok = split_ok && mpz_divisible_p(pn.get_mpz_t(), index_of_sublattice(stacked).get_mpz_t());
  }

  // (P_0 : M_0)^2 = det(M_0) p^{2 m0} / det(p P_0)
  if (r.m0 == 0) {
    r.projection_index = 1;
  } else {
    BigInt p2m;
    mpz_ui_pow_ui(p2m.get_mpz_t(), p, 2 * r.m0);
    BigInt q = r.det_m0 * p2m;
    BigInt d = pr0.scaled.determinant();
    if (!mpz_divisible_p(q.get_mpz_t(), d.get_mpz_t())) throw Error(Errc::Internal, "projection index");
    q /= d;
    if (!mpz_perfect_square_p(q.get_mpz_t())) throw Error(Errc::Internal, "projection index is not an integer");
    mpz_sqrt(r.projection_index.get_mpz_t(), q.get_mpz_t());
  }
  // a failed split forces a proper p-power index of M_0 in its projection
  r.projections_split = split_ok && is_power_of(r.projection_index, p) &&
                        (r.is_orthogonal_split || r.projection_index > 1);

  r.chain = lemma_chain_check(lattice, sigma);
  r.det_m0_divisible_by_p = divisible(r.det_m0, p);
  r.disjunction_holds = r.is_orthogonal_split || r.det_m0_divisible_by_p;

  for (const auto& c : decompose(lattice)) r.components.emplace_back(c.rank(), c.determinant());
  if (r.m0 == 0 || r.m0 == n) {
    r.exception_applies = true;
  } else {
    // subset sums of component ranks, using only components with det prime to p
    std::vector<bool> reachable(n + 1, false);
    reachable[0] = true;
    for (const auto& [rk, det] : r.components) {
      if (divisible(det, p)) continue;
      for (std::size_t s = n; s >= rk && s > 0; --s)
        if (reachable[s - rk]) reachable[s] = true;
    }
    r.exception_applies = reachable[r.m0];
  }
  r.theorem_holds = r.exception_applies || r.det_m0_divisible_by_p;
  return r;
}

std::size_t orbit_size(const Automorphism& sigma, std::span<const BigInt> x) {
  std::set<std::vector<BigInt>> seen;
  std::vector<BigInt> cur(x.begin(), x.end());
  for (unsigned long i = 0; i < sigma.order; ++i) {
    seen.insert(cur);
    cur = row_times(cur, sigma.action);
  }
  return seen.size();
}

}  // namespace thetacong
