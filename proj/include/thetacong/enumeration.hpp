#pragma once

// Exact short-vector enumeration (Fincke-Pohst) on positive definite Gram
// matrices. Norms are b(x, x) = x * G * x^T.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "thetacong/exact_linalg.hpp"

namespace thetacong {

struct ShortVector {
  std::vector<BigInt> coords;
  BigInt norm;

  friend bool operator==(const ShortVector&, const ShortVector&) = default;
};

struct InnerProductConstraint {
  std::vector<BigInt> vector;  // coordinates of a lattice element
  BigInt value;                // required b(x, vector)
};

/// All x != 0 with b(x, x) <= bound, lexicographically ordered by coordinates.
std::vector<ShortVector> short_vectors(const IntegerMatrix& gram, const BigInt& bound);

/// All x with b(x, x) == norm (norm > 0), lexicographic order.
std::vector<ShortVector> vectors_with_norm(const IntegerMatrix& gram, const BigInt& norm);

/// All x with b(x, x) == norm and b(x, v_j) == c_j for every constraint.
///
/// The affine solution set of the linear constraints is computed exactly (a
/// particular integral solution plus the integral kernel lattice), and the
/// norm condition is enumerated on that lower-dimensional translate.
/// Infeasible constraints give an empty list.
std::vector<ShortVector> constrained_vectors(const IntegerMatrix& gram, const BigInt& norm,
                                             std::span<const InnerProductConstraint> constraints);

struct MinimumInfo {
  BigInt min_norm;
  BigInt count;  // both signs counted
};

MinimumInfo min_norm_and_kissing(const IntegerMatrix& gram);

/// Number of nonzero vectors for every norm value <= bound (absent keys are 0).
std::map<BigInt, BigInt> norm_counts(const IntegerMatrix& gram, const BigInt& bound);

/// Number of nonzero x with b(x, x) == norm.
BigInt count_vectors_with_norm(const IntegerMatrix& gram, const BigInt& norm);

/// Short vectors with machine-word coordinates, for consumers that hold
/// hundreds of thousands of vectors. Sorted by (norm, coordinates).
class PackedVectors {
 public:
  explicit PackedVectors(std::size_t dim = 0) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return norms_.size(); }
  std::span<const std::int64_t> operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::int64_t norm(std::size_t i) const { return norms_[i]; }

  void push_back(std::span<const std::int64_t> coords, std::int64_t norm);
  void sort_by_norm_then_coords();
  std::vector<BigInt> big_coords(std::size_t i) const;

 private:
  std::size_t dim_;
  std::vector<std::int64_t> coords_;
  std::vector<std::int64_t> norms_;
};

/// Nonzero vectors with norm <= bound, coordinates in the basis of `gram`.
/// Throws TooLarge if a coordinate does not fit in 64 bits.
PackedVectors short_vectors_packed(const IntegerMatrix& gram, const BigInt& bound);

}  // namespace thetacong
