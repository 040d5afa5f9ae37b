#include "hyperpoly/pfaffian.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hyperpoly {

MinorPfaffians::MinorPfaffians(const SkewPolyMatrix& m) : m_(m) {
  if (m.dim() > 64) throw std::invalid_argument("Pfaffian engine supports at most 64 indices");
  memo_.emplace(0, Poly(1L));
}

const Poly& MinorPfaffians::pf_mask(std::uint64_t mask) {
  auto it = memo_.find(mask);
  if (it != memo_.end()) return it->second;
  Poly result;
  if (std::popcount(mask) % 2 == 0) {
    int i = std::countr_zero(mask);
    std::uint64_t rest = mask & (mask - 1);
    int k = 0;
    for (std::uint64_t scan = rest; scan != 0; scan &= scan - 1, ++k) {
      int j = std::countr_zero(scan);
      const Poly& entry = m_.at(i, j);
      if (entry.is_zero()) continue;
      const Poly& sub = pf_mask(rest & ~(std::uint64_t{1} << j));
      if (sub.is_zero()) continue;
      Poly term = entry * sub;
      if (k % 2 == 0)
        result += term;
      else
        result -= term;
    }
  }
  return memo_.emplace(mask, std::move(result)).first->second;
}

Poly MinorPfaffians::pf_deleting(const std::vector<int>& deleted) {
  std::uint64_t mask = m_.dim() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_.dim()) - 1;
  for (int d : deleted) {
    if (d < 0 || d >= m_.dim()) throw std::out_of_range("minor index out of range");
    std::uint64_t bit = std::uint64_t{1} << d;
    if (!(mask & bit)) throw std::invalid_argument("duplicate index in minor");
    mask &= ~bit;
  }
  if (std::popcount(mask) % 2 != 0)
    throw std::invalid_argument("Pfaffian of an odd-dimensional matrix");
  return pf_mask(mask);
}

Poly pfaffian(const SkewPolyMatrix& m) {
  if (m.dim() % 2 != 0) throw std::invalid_argument("Pfaffian of an odd-dimensional matrix");
  MinorPfaffians engine(m);
  return engine.pf_deleting({});
}

Poly determinant(const PolyMatrix& a) {
  int n = a.dim();
  std::vector<Poly> v{Poly(1L)};
  for (int r = 0; r < n; ++r) {
    // t = [1, -a_rr, -R S, -R M S, ..., -R M^{r-1} S]
    std::vector<Poly> t{Poly(1L), -a.at(r, r)};
    std::vector<Poly> col(r);
    for (int i = 0; i < r; ++i) col[i] = a.at(i, r);
    for (int p = 0; p < r; ++p) {
      Poly dot;
      for (int i = 0; i < r; ++i)
        if (!a.at(r, i).is_zero() && !col[i].is_zero()) dot += a.at(r, i) * col[i];
      t.push_back(-dot);
      if (p + 1 < r) {
        std::vector<Poly> next(r);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            if (!a.at(i, j).is_zero() && !col[j].is_zero()) next[i] += a.at(i, j) * col[j];
        col = std::move(next);
      }
    }
    std::vector<Poly> nv(r + 2);
    for (int i = 0; i < r + 2; ++i)
      for (int j = 0; j <= std::min(i, r); ++j)
        if (!t[i - j].is_zero() && !v[j].is_zero()) nv[i] += t[i - j] * v[j];
    v = std::move(nv);
  }
  return n % 2 == 0 ? v[n] : -v[n];
}

int permutation_parity(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  int sign = 1;
  for (size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

int perm_sign(const std::vector<int>& I, int tau, int d) {
  std::vector<bool> moved(d, false);
  for (int i : I) {
    if (i < 0 || i >= d) throw std::out_of_range("perm_sign index out of range");
    moved[i] = true;
  }
  if (tau < 0 || tau >= d || moved[tau]) throw std::invalid_argument("tau must lie outside I");
  moved[tau] = true;
  std::vector<int> perm;
  for (int k = 0; k < d; ++k)
    if (!moved[k]) perm.push_back(k);
  perm.push_back(tau);
  std::vector<int> sorted = I;
  std::sort(sorted.rbegin(), sorted.rend());
  perm.insert(perm.end(), sorted.begin(), sorted.end());
  return permutation_parity(perm);
}

}  // namespace hyperpoly
