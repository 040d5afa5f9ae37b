#pragma once

// Exact Pfaffians and determinants of polynomial matrices.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hyperpoly/skew_matrix.hpp"

namespace hyperpoly {

/// Pfaffians of principal submatrices of one antisymmetric matrix, sharing a
/// memo table across calls. Not thread-safe; use one instance per thread.
class MinorPfaffians {
 public:
  explicit MinorPfaffians(const SkewPolyMatrix& m);

  /// Pfaffian of the submatrix on the indices set in `mask` (ascending order).
  const Poly& pf_mask(std::uint64_t mask);
  /// Pfaffian after deleting the given indices; throws on odd remaining dimension.
  Poly pf_deleting(const std::vector<int>& deleted);

  size_t memo_size() const { return memo_.size(); }

 private:
  const SkewPolyMatrix& m_;
  std::unordered_map<std::uint64_t, Poly> memo_;
};

/// Throws std::invalid_argument for odd dimension; the 0x0 Pfaffian is 1.
Poly pfaffian(const SkewPolyMatrix& m);

/// Division-free (Berkowitz) determinant.
Poly determinant(const PolyMatrix& m);

/// Signature of 0..d-1 -> (others ascending), tau, i_p, ..., i_1 where
/// i_1 < ... < i_p are the elements of I. Requires tau not in I.
int perm_sign(const std::vector<int>& I, int tau, int d);

/// Parity sign of an arbitrary permutation given as an array.
int permutation_parity(const std::vector<int>& perm);

}  // namespace hyperpoly
