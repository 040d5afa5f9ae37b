#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "hyperpoly/pfaffian.hpp"
#include "hyperpoly/qmatrix.hpp"
#include "support/fixtures.hpp"

using namespace hyperpoly;

namespace {

SkewPolyMatrix labelled(int dim) {
  std::vector<std::string> labels;
  for (int i = 0; i < dim; ++i) labels.push_back("r" + std::to_string(i));
  return SkewPolyMatrix(labels);
}

// Small integer entries with occasional W and t1 dependence.
SkewPolyMatrix random_skew(std::mt19937_64& rng, int dim) {
  SkewPolyMatrix m = labelled(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      Poly v(static_cast<long>(rng() % 7) - 3);
      if (rng() % 3 == 0) v += Poly::omega().scaled(static_cast<long>(rng() % 5) - 2);
      if (rng() % 4 == 0) v += Poly::t(0);
      m.add_skew(i, j, v);
    }
  return m;
}

// Pfaffian by expansion along the first row over perfect matchings.
Poly naive_pfaffian(const SkewPolyMatrix& m, std::vector<int> idx) {
  if (idx.empty()) return Poly(1L);
  if (idx.size() % 2 == 1) return Poly();
  Poly total;
  int a = idx[0];
  for (size_t k = 1; k < idx.size(); ++k) {
    std::vector<int> rest;
    for (size_t r = 1; r < idx.size(); ++r)
      if (r != k) rest.push_back(idx[r]);
    Poly sub = m.at(a, idx[k]) * naive_pfaffian(m, rest);
    if (k % 2 == 0) total -= sub;
    else total += sub;
  }
  return total;
}

// Leibniz determinant with inversion-count signs.
Poly leibniz(const PolyMatrix& m) {
  int d = m.dim();
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  Poly total;
  do {
    int inv = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inv;
    Poly term(1L);
    for (int i = 0; i < d; ++i) term *= m.at(i, perm[i]);
    total += inv % 2 == 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// The permutation described for perm_sign, written out as an array, signed by
// counting inversions.
int perm_sign_by_inversions(const std::vector<int>& I, int tau, int d) {
  std::vector<int> arr;
  for (int k = 0; k < d; ++k)
    if (k != tau && std::find(I.begin(), I.end(), k) == I.end()) arr.push_back(k);
  arr.push_back(tau);
  for (auto it = I.rbegin(); it != I.rend(); ++it) arr.push_back(*it);
  int inv = 0;
  for (size_t i = 0; i < arr.size(); ++i)
    for (size_t j = i + 1; j < arr.size(); ++j)
      if (arr[i] > arr[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("2x2 and 4x4 Pfaffians") {
  SkewPolyMatrix m2 = labelled(2);
  m2.add_skew(0, 1, parse_poly("3*W"));
  CHECK(pfaffian(m2) == parse_poly("3*W"));

  SkewPolyMatrix m4 = labelled(4);
  const char* b[4][4] = {{"", "t1", "t2", "t3"}, {"", "", "t4", "t5"}, {"", "", "", "t6"}};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) m4.add_skew(i, j, parse_poly(b[i][j]));
  CHECK(pfaffian(m4) == parse_poly("t1*t6 - t2*t5 + t3*t4"));
}

TEST_CASE("empty and odd Pfaffians") {
  CHECK(pfaffian(labelled(0)) == Poly(1L));
  CHECK_THROWS_AS(pfaffian(labelled(3)), std::invalid_argument);
  SkewPolyMatrix m = labelled(3);
  m.add_skew(0, 1, Poly(2L));
  m.add_skew(1, 2, Poly::omega());
  CHECK(determinant(m).is_zero());
}

TEST_CASE("minor Pfaffians: delete none, delete all, odd remainder") {
  std::mt19937_64 rng(5);
  SkewPolyMatrix m = random_skew(rng, 6);
  MinorPfaffians engine(m);
  CHECK(engine.pf_deleting({}) == pfaffian(m));
  CHECK(engine.pf_deleting({0, 1, 2, 3, 4, 5}) == Poly(1L));
  CHECK_THROWS_AS(engine.pf_deleting({0}), std::invalid_argument);
}

TEST_CASE("bubble B' with both u indices deleted has odd dimension") {
  BMatrices bm = build_B(hyperpoly::testing::fixture("bubble.json"));
  MinorPfaffians engine(bm.Bprime);
  CHECK(bm.Bprime.dim() == 5);
  CHECK_THROWS_AS(engine.pf_deleting({bm.layout.u(0), bm.layout.u(1)}), std::invalid_argument);
  PolyMatrix minor = bm.Bprime.minor({bm.layout.u(0)});
  CHECK(determinant(minor) == leibniz(minor));
}

TEST_CASE("perm_sign on small cases") {
  CHECK(perm_sign({}, 3, 4) == 1);
  CHECK(perm_sign({}, 2, 4) == -1);
  CHECK(perm_sign({0}, 1, 4) == perm_sign_by_inversions({0}, 1, 4));
}

TEST_CASE("property: perm_sign agrees with an explicit inversion count") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 500; ++it) {
    int d = 1 + static_cast<int>(rng() % 9);
    std::vector<int> all(d);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    int tau = all[0];
    int p = static_cast<int>(rng() % d);
    std::vector<int> I(all.begin() + 1, all.begin() + 1 + std::min(p, d - 1));
    std::sort(I.begin(), I.end());
    CHECK(perm_sign(I, tau, d) == perm_sign_by_inversions(I, tau, d));
  }
}

TEST_CASE("property: permutation_parity agrees with inversion counting") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 300; ++it) {
    int d = 1 + static_cast<int>(rng() % 8);
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    int inv = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inv;
    CHECK(permutation_parity(perm) == (inv % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("property: Pf^2 = det and determinant matches Leibniz") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    int dim = 2 * (1 + static_cast<int>(rng() % 3));
    SkewPolyMatrix m = random_skew(rng, dim);
    Poly pf = pfaffian(m);
    Poly det = determinant(m);
    CHECK(pf * pf == det);
    CHECK(det == leibniz(m));
  }
}

TEST_CASE("property: memoized minor Pfaffians equal the naive expansion") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 40; ++it) {
    int dim = 4 + static_cast<int>(rng() % 5);
    SkewPolyMatrix m = random_skew(rng, dim);
    MinorPfaffians engine(m);
    for (int k = 0; k < 6; ++k) {
      std::vector<int> kept, deleted;
      for (int i = 0; i < dim; ++i) (rng() % 2 ? kept : deleted).push_back(i);
      if (kept.size() % 2 == 1) {
        deleted.push_back(kept.back());
        kept.pop_back();
        std::sort(deleted.begin(), deleted.end());
      }
      CHECK(engine.pf_deleting(deleted) == naive_pfaffian(m, kept));
    }
  }
}

TEST_CASE("det = Pf^2 on B' of every even-dimensional fixture minor") {
  for (const auto& file : hyperpoly::testing::fixture_files()) {
    CAPTURE(file);
    RibbonGraph g = hyperpoly::testing::fixture(file);
    BMatrices bm = build_B(g);
    if (bm.Bprime.dim() > 9) continue;
    std::vector<int> deleted;
    if (bm.Bprime.dim() % 2 == 1) deleted.push_back(0);
    SkewPolyMatrix sub = bm.Bprime.minor(deleted);
    Poly pf = pfaffian(sub);
    CHECK(pf * pf == determinant(sub));
  }
}
