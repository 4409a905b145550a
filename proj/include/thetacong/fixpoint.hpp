#pragma once

// Automorphisms of odd prime order, their fixed and complementary sublattices,
// and the integral group ring Z[C_p] embedded in Z + Z[zeta_p].

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "thetacong/lattice_core.hpp"

namespace thetacong {

/// `matrix` is U with U^T G U = G (column action); `action` is R = U^T, acting
/// on coordinate rows by x -> x R, so R G R^T = G.
struct Automorphism {
  IntegerMatrix matrix;
  IntegerMatrix action;
  unsigned long order = 0;
};

bool is_odd_prime(unsigned long p);

/// Throws NotOddPrime, DimensionMismatch, NotIsometry or WrongOrder.
Automorphism validate_automorphism(const Lattice& lattice, const IntegerMatrix& u, unsigned long p);

/// Sum_i coeffs[i] * sigma^i, exactly p coefficients.
struct GroupRingElement {
  std::vector<BigInt> coeffs;

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;
};

/// (a, beta): a in Z and sum_{i=1}^{p-1} beta_i zeta^i in Z[zeta_p].
struct IotaImage {
  BigInt a;
  std::vector<BigInt> beta;  // p - 1 entries, beta[0] is the coefficient of zeta

  friend bool operator==(const IotaImage&, const IotaImage&) = default;
};

IotaImage iota_embed(const GroupRingElement& e, unsigned long p);
/// Throws NotInImage unless p divides a - sum(beta).
GroupRingElement iota_preimage(const BigInt& a, std::span<const BigInt> beta, unsigned long p);

GroupRingElement group_ring_add(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement group_ring_multiply(const GroupRingElement& x, const GroupRingElement& y);
/// Product in Z[zeta_p] on coefficient vectors in the basis zeta, ..., zeta^{p-1}.
std::vector<BigInt> cyclotomic_multiply(std::span<const BigInt> x, std::span<const BigInt> y, unsigned long p);
IotaImage iota_add(const IotaImage& x, const IotaImage& y);
IotaImage iota_multiply(const IotaImage& x, const IotaImage& y, unsigned long p);

/// M_0 = M cap V_0; rank 0 when sigma is fixed point free.
Sublattice fixed_sublattice(const Lattice& lattice, const Automorphism& sigma);
/// M_1 = kernel of sum_i sigma^i.
Sublattice sigma_complement(const Lattice& lattice, const Automorphism& sigma);
bool is_fixed_point_free(const Lattice& lattice, const Automorphism& sigma);

/// p times the orthogonal projection of M onto V_i, and the rational Gram of the projection itself.
struct ProjectedLattice {
  Sublattice scaled;
  RationalMatrix rational_gram;
};

/// part must be 0 or 1.
ProjectedLattice projected_lattice(const Lattice& lattice, const Automorphism& sigma, int part);

/// Verdicts for p*P_i <= M_i <= P_i <= M_i^# with P_i the projection, i = 0, 1.
struct ChainReport {
  std::array<bool, 2> scaled_projection_in_part{};
  std::array<bool, 2> part_in_projection{};
  std::array<bool, 2> projection_in_dual{};

  bool all_hold() const;
};

ChainReport lemma_chain_check(const Lattice& lattice, const Automorphism& sigma);

struct FixedSplitReport {
  unsigned long p = 0;
  std::size_t rank = 0;
  std::size_t m0 = 0;
  std::size_t m1 = 0;
  BigInt det_lattice;
  BigInt det_m0;
  BigInt det_m1;
  IntegerMatrix m0_gram;
  BigInt split_index;       // (M : M_0 + M_1)
  BigInt projection_index;  // (P_0 : M_0)
  bool m1_divisible = false;
  bool projections_split = false;  // P_0 + P_1 direct, orthogonal, containing M with p-power index
  ChainReport chain;
  bool is_orthogonal_split = false;
  bool det_m0_divisible_by_p = false;
  bool disjunction_holds = false;
  std::vector<std::pair<std::size_t, BigInt>> components;  // (rank, det) of the Kneser summands
  bool exception_applies = false;  // a proper summand of rank m0 with det prime to p, or m0 = 0
  bool theorem_holds = false;

  /// Every asserted statement about (L, sigma) is true.
  bool all_hold() const;
};

FixedSplitReport splitting_check(const Lattice& lattice, const Automorphism& sigma);

/// Number of distinct images x sigma^i.
std::size_t orbit_size(const Automorphism& sigma, std::span<const BigInt> x);

}  // namespace thetacong
