#pragma once

// Square matrices of polynomials, mostly antisymmetric ones.

#include <string>
#include <vector>

#include "hyperpoly/poly.hpp"

namespace hyperpoly {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  explicit PolyMatrix(std::vector<std::string> labels);

  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index_of(const std::string& label) const;  // -1 when absent

  const Poly& at(int i, int j) const { return entries_[static_cast<size_t>(i) * dim() + j]; }
  Poly& at(int i, int j) { return entries_[static_cast<size_t>(i) * dim() + j]; }

  /// Adds `value` at (i, j) and subtracts it at (j, i).
  void add_skew(int i, int j, const Poly& value);

  bool is_antisymmetric() const;
  bool is_symmetric() const;

  /// Symmetric deletion of rows and columns; throws on duplicates or range errors.
  PolyMatrix minor(const std::vector<int>& deleted) const;
  /// Principal submatrix on the kept indices, in the given order.
  PolyMatrix restricted(const std::vector<int>& kept) const;
  /// R^T M R for a square transformation R (labels are kept).
  PolyMatrix congruence(const PolyMatrix& r) const;
  /// Substitutes values for variables in every entry.
  std::vector<std::vector<Rat>> evaluate(const Assignment& point) const;

  /// {dim, labels, entries: [[row, col, polyString]]} with non-zero entries only.
  nlohmann::json to_json() const;

  bool operator==(const PolyMatrix& other) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Poly> entries_;
};

using SkewPolyMatrix = PolyMatrix;

}  // namespace hyperpoly
