#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetacong/exact_linalg.hpp"

namespace thetacong {

/// Even positive definite lattice given by its Gram matrix with respect to b.
struct Lattice {
  IntegerMatrix gram;
  std::string label;

  std::size_t rank() const { return gram.rows(); }
};

struct ValidationReport {
  bool square = false;
  bool symmetric = false;
  bool even_diagonal = false;
  bool positive_definite = false;
  std::optional<BigInt> determinant;  // absent for non-square input
  bool unimodular = false;

  bool valid() const { return square && symmetric && even_diagonal && positive_definite; }
};

ValidationReport validate_even_lattice(const IntegerMatrix& gram);

/// Validates and wraps; throws NonSquare, InvalidInput or NotPositiveDefinite.
Lattice make_lattice(IntegerMatrix gram, std::string label = {});

Lattice direct_sum(const Lattice& a, const Lattice& b);

/// Sublattice spanned by `coords` rows (parent coordinates).
class Sublattice {
 public:
  Sublattice(std::shared_ptr<const Lattice> parent, IntegerMatrix coords);
  Sublattice(const Lattice& parent, IntegerMatrix coords);

  const Lattice& parent() const { return *parent_; }
  std::shared_ptr<const Lattice> parent_ptr() const { return parent_; }
  const IntegerMatrix& coords() const { return coords_; }
  const IntegerMatrix& gram() const { return gram_; }
  std::size_t rank() const { return coords_.rows(); }
  /// det of the Gram matrix; 1 for the zero lattice.
  BigInt determinant() const;
  Lattice as_lattice(std::string label = {}) const;

 private:
  std::shared_ptr<const Lattice> parent_;
  IntegerMatrix coords_;
  IntegerMatrix gram_;
};

/// Indecomposable orthogonal summands, pairwise orthogonal, summing to the lattice.
std::vector<Sublattice> decompose(const Lattice& lattice);

struct BinaryForm {
  BigInt a, b, c;  // Gram [[a, b], [b, c]]

  IntegerMatrix gram() const;
  static BinaryForm from_gram(const IntegerMatrix& g);
  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

struct BinaryReduction {
  BinaryForm form;
  IntegerMatrix witness;  // witness * G * witness^T = reduced Gram, det +-1
};

/// Gauss reduction to 0 <= 2b <= a <= c.
BinaryReduction reduce_binary_with_witness(const BinaryForm& f);
BinaryForm reduce_binary(const BinaryForm& f);

inline constexpr std::size_t kMaxIsometryRank = 8;

/// W with W * g2 * W^T = g1 (rows of W are images of the g1 basis), if one exists.
std::optional<IntegerMatrix> find_isometry(const IntegerMatrix& g1, const IntegerMatrix& g2);
bool is_isometric_small(const Lattice& a, const Lattice& b);

// Golay code: coordinates 0..22 are F_23, coordinate 23 is infinity.
inline constexpr int kGolayInfinity = 23;

/// 12 x 24 generator matrix over F_2 in reduced row echelon form.
IntegerMatrix build_golay_qr23();
/// All 4096 codewords as bit masks (bit i = coordinate i).
std::vector<std::uint32_t> golay_codewords();
/// weight -> number of codewords.
std::map<int, int> golay_weight_enumerator();
/// x -> x + 1 on F_23, fixing infinity.
std::array<int, 24> golay_shift_permutation();
/// x -> 2x on F_23, fixing 0 and infinity.
std::array<int, 24> golay_doubling_permutation();
std::uint32_t permute_word(std::uint32_t word, const std::array<int, 24>& perm);

struct NamedAutomorphism {
  std::string name;
  IntegerMatrix matrix;  // U with U^T * G * U = G
  unsigned order = 0;
};

struct CatalogEntry {
  Lattice lattice;
  std::vector<NamedAutomorphism> automorphisms;

  const NamedAutomorphism& automorphism(std::string_view name) const;
};

/// Leech lattice from the Golay code, with the order-23 and order-11 permutation automorphisms.
CatalogEntry build_leech_from_golay();
/// Root lattice Gram matrices (Cartan matrices).
IntegerMatrix cartan_a(std::size_t n);
IntegerMatrix cartan_e8();

/// Names: A1, A2, A6, E8, E8+E8, Leech. Built once and cached.
const CatalogEntry& catalog(std::string_view name);
std::vector<std::string> catalog_names();

}  // namespace thetacong
