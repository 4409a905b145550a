#pragma once

// Representation numbers A(L, T) = #{(x_1..x_n) in L^n : b(x_i, x_j) = 2 t_ij},
// degree-n theta coefficient tables and the mod-p checks built on them.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "thetacong/fixpoint.hpp"
#include "thetacong/lattice_core.hpp"

namespace thetacong {

/// A half-integral form T stored as the even integral matrix 2T.
class SemiIntegralForm {
 public:
  SemiIntegralForm() = default;
  /// Throws NonSquare or InvalidInput unless symmetric with even diagonal.
  explicit SemiIntegralForm(IntegerMatrix two_t);
  static SemiIntegralForm zero(std::size_t degree);

  const IntegerMatrix& two_t() const { return two_t_; }
  std::size_t degree() const { return two_t_.rows(); }
  /// t_ii = (2T)_ii / 2
  BigInt diagonal(std::size_t i) const { return two_t_(i, i) / 2; }
  BigInt det_two_t() const { return det_bareiss(two_t_); }
  bool is_positive_semidefinite() const;
  bool is_positive_definite() const;
  /// Entries (i, j) with i <= j, row by row.
  std::vector<BigInt> upper_triangle() const;

  friend bool operator==(const SemiIntegralForm& a, const SemiIntegralForm& b) { return a.two_t_ == b.two_t_; }
  /// Degree first, then lexicographic on the upper triangle.
  friend bool operator<(const SemiIntegralForm& a, const SemiIntegralForm& b);

 private:
  IntegerMatrix two_t_;
};

bool is_positive_semidefinite(const IntegerMatrix& m);

/// All positive semidefinite forms of degree n with t_ii <= bound, in key order.
std::vector<SemiIntegralForm> psd_forms(std::size_t degree, long bound);

struct ThetaTable {
  std::string label;
  std::size_t degree = 0;
  long diag_bound = 0;
  std::map<SemiIntegralForm, BigInt> entries;

  /// 0 for forms outside the table.
  BigInt at(const SemiIntegralForm& t) const;
};

/// Counting engine for one lattice. Short-vector shells are computed on demand
/// and cached, so repeated queries on the same lattice are cheap.
class RepresentationCounter {
 public:
  /// Throws NonSquare, InvalidInput or NotPositiveDefinite; the zero lattice is allowed.
  explicit RepresentationCounter(IntegerMatrix gram);
  ~RepresentationCounter();
  RepresentationCounter(RepresentationCounter&&) noexcept;
  RepresentationCounter& operator=(RepresentationCounter&&) noexcept;

  const IntegerMatrix& gram() const;

  /// A(L, T); throws NotPsd.
  BigInt count(const SemiIntegralForm& t);
  /// Nonzero values of A(L, T) over all T of the given degree with t_ii <= bound.
  std::map<SemiIntegralForm, BigInt> realized(std::size_t degree, long bound);
  /// Number of nonzero vectors of norm b(x, x) = norm.
  BigInt norm_count(std::int64_t norm);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

BigInt representation_number(const IntegerMatrix& gram, const SemiIntegralForm& t);
BigInt representation_number(const Lattice& lattice, const SemiIntegralForm& t);
/// Same count through constrained_vectors one column at a time; no shell storage.
BigInt representation_number_affine(const IntegerMatrix& gram, const SemiIntegralForm& t);

ThetaTable theta_table(const Lattice& lattice, std::size_t degree, long bound);
ThetaTable theta_table(RepresentationCounter& counter, std::string label, std::size_t degree, long bound);

struct ThetaOperatorEntry {
  SemiIntegralForm form;
  BigInt det_two_t;
  BigInt count;
};

/// Each T paired with det(2T) and A(L, T); the theta operator weights A by det(T) = det(2T) / 2^n.
std::vector<ThetaOperatorEntry> theta_operator(const ThetaTable& table);

struct Witness {
  SemiIntegralForm form;
  BigInt count;
  BigInt det_two_t;
  std::optional<BigInt> reference;  // the value the count was compared against, if any
};

struct CongruenceReport {
  std::string claim;
  unsigned long p = 0;
  std::size_t degree = 0;
  long diag_bound = 0;
  bool holds = true;
  std::size_t forms_checked = 0;
  std::vector<Witness> witnesses;
};

/// p | det(2T) A(L, T) for every positive definite T in the table.
CongruenceReport congruence_check_theta_op(const ThetaTable& table, unsigned long p);
CongruenceReport congruence_check_theta_op(const Lattice& lattice, unsigned long p, std::size_t degree, long bound);
/// p | A(L, T) for every positive definite T in the table.
CongruenceReport singularity_check(const ThetaTable& table, unsigned long p);
CongruenceReport singularity_check(const Lattice& lattice, unsigned long p, std::size_t degree, long bound);
/// A(L, T) = A(M_0, T) mod p for every T in range (singular T included).
CongruenceReport fixed_congruence_check(const ThetaTable& lattice_table, const ThetaTable& fixed_table, unsigned long p);
CongruenceReport fixed_congruence_check(const Lattice& lattice, const Automorphism& sigma, std::size_t degree, long bound);
/// A(L1 + L2, T) = sum over T1 + T2 = T of A(L1, T1) A(L2, T2) for every T in range.
CongruenceReport convolution_check(const Lattice& a, const Lattice& b, std::size_t degree, long bound);

struct ConvolutionResult {
  BigInt direct;
  BigInt convolved;
  std::size_t splittings = 0;  // pairs (T1, T2) that contributed
  bool holds() const { return direct == convolved; }
};

/// The convolution identity at a single T. Diagonal splits are pruned to norms represented by each factor.
ConvolutionResult convolution_check_form(const Lattice& a, const Lattice& b, const SemiIntegralForm& t);

/// Worker threads for counting: THETA_THREADS if set and positive, else the hardware concurrency.
unsigned worker_count();

}  // namespace thetacong
