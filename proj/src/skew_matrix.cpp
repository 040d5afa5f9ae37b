#include "hyperpoly/skew_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperpoly {

PolyMatrix::PolyMatrix(std::vector<std::string> labels)
    : labels_(std::move(labels)), entries_(labels_.size() * labels_.size()) {}

int PolyMatrix::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

void PolyMatrix::add_skew(int i, int j, const Poly& value) {
  at(i, j) += value;
  at(j, i) -= value;
}

bool PolyMatrix::is_antisymmetric() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i; j < dim(); ++j)
      if (!(at(i, j) == -at(j, i))) return false;
  return true;
}

bool PolyMatrix::is_symmetric() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (!(at(i, j) == at(j, i))) return false;
  return true;
}

PolyMatrix PolyMatrix::minor(const std::vector<int>& deleted) const {
  std::vector<bool> gone(dim(), false);
  for (int d : deleted) {
    if (d < 0 || d >= dim()) throw std::out_of_range("minor index out of range");
    if (gone[d]) throw std::invalid_argument("duplicate index in minor");
    gone[d] = true;
  }
  std::vector<int> kept;
  for (int i = 0; i < dim(); ++i)
    if (!gone[i]) kept.push_back(i);
  return restricted(kept);
}

PolyMatrix PolyMatrix::restricted(const std::vector<int>& kept) const {
  std::vector<std::string> labels;
  for (int k : kept) labels.push_back(labels_.at(k));
  PolyMatrix out(labels);
  for (size_t a = 0; a < kept.size(); ++a)
    for (size_t b = 0; b < kept.size(); ++b)
      out.at(static_cast<int>(a), static_cast<int>(b)) = at(kept[a], kept[b]);
  return out;
}

PolyMatrix PolyMatrix::congruence(const PolyMatrix& r) const {
  if (r.dim() != dim()) throw std::invalid_argument("congruence dimension mismatch");
  int n = dim();
  PolyMatrix mr(labels_);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!r.at(k, j).is_zero()) mr.at(i, j) += at(i, k) * r.at(k, j);
    }
  PolyMatrix out(labels_);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (r.at(k, i).is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!mr.at(k, j).is_zero()) out.at(i, j) += r.at(k, i) * mr.at(k, j);
    }
  return out;
}

std::vector<std::vector<Rat>> PolyMatrix::evaluate(const Assignment& point) const {
  std::vector<std::vector<Rat>> out(dim(), std::vector<Rat>(dim()));
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) out[i][j] = at(i, j).eval(point);
  return out;
}

nlohmann::json PolyMatrix::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (!at(i, j).is_zero()) entries.push_back({i, j, canonical_string(at(i, j))});
  return {{"dim", dim()}, {"labels", labels_}, {"entries", entries}};
}

}  // namespace hyperpoly
