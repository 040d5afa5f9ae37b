#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "hyperpoly/hv.hpp"
#include "hyperpoly/oracle.hpp"
#include "support/fixtures.hpp"

using namespace hyperpoly;
using hyperpoly::testing::fixture;

namespace {

// Union-find component count restricted to the chosen edges.
int components(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& chosen) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int count = n;
  for (int k : chosen) {
    int a = find(edges[k].first), b = find(edges[k].second);
    if (a != b) {
      parent[a] = b;
      --count;
    }
  }
  return count;
}

// Faces of G plus a dummy line from external e to a marker corner inserted
// after corner 4 of the root, traced on the raw slot table. Returns the face
// of every corner of G.
std::vector<int> dummy_faces_by_hand(const RibbonGraph& g, int e, int* num_faces) {
  int n = g.num_vertices(), marker = 4 * n;
  const Corner& ext = g.external(e).corner;
  int ext_dart = 4 * ext.vertex + ext.slot;
  auto next = [&](int d) {
    if (d == marker) return 4 * g.root();
    if (d == 4 * g.root() + 3) return marker;
    return 4 * (d / 4) + (d % 4 + 1) % 4;
  };
  auto partner = [&](int d) {
    if (d == marker) return ext_dart;
    if (d == ext_dart) return marker;
    auto p = g.partner(Corner{d / 4, d % 4});
    return p ? 4 * p->vertex + p->slot : d;
  };
  std::vector<int> label(marker + 1, -1);
  int faces = 0;
  for (int d0 = 0; d0 <= marker; ++d0) {
    if (label[d0] >= 0) continue;
    for (int d = d0; label[d] < 0; d = next(partner(d))) label[d] = faces;
    ++faces;
  }
  *num_faces = faces;
  return label;
}

// All J with a dual spanning tree of G' inside J and the complement plus the
// dummy line connecting G'.
std::vector<std::vector<int>> brute_force_two_admissible(const RibbonGraph& g, int e) {
  int n = g.num_vertices(), L = g.num_lines();
  int host = g.external(e).corner.vertex;
  if (host == g.root()) return {};
  int F = 0;
  std::vector<int> label = dummy_faces_by_hand(g, e, &F);
  std::vector<std::pair<int, int>> dual, direct;
  for (const auto& l : g.lines()) {
    dual.emplace_back(label[4 * l.head.vertex + l.head.slot], label[4 * l.tail.vertex + l.tail.slot]);
    direct.emplace_back(l.head.vertex, l.tail.vertex);
  }
  direct.emplace_back(host, g.root());
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << L); ++mask) {
    std::vector<int> J, rest{L};
    for (int l = 0; l < L; ++l) (mask >> l & 1 ? J : rest).push_back(l);
    if (components(F, dual, J) == 1 && components(n, direct, rest) == 1) out.push_back(J);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rat> sample_x(PointSampler& sampler, int size, int externals) {
  std::vector<Rat> x(size, 0);
  for (int e = 0; e < externals; ++e) x[e] = sampler.any();
  return x;
}

// Number of sampled points where HV^R falls below the leading bound.
int bound_failures(const RibbonGraph& g, int points) {
  QuadForm q = hv_real(g);
  auto terms = hv_leading_terms(g);
  PointSampler sampler(1);
  int fails = 0;
  for (Rat w : {Rat(0), Rat(1, 3), Rat(1, 2), Rat(9, 10)})
    for (int k = 0; k < points; ++k) {
      Assignment p = sampler.point(g.num_lines(), w);
      std::vector<Rat> x(q.size(), 0);
      for (int e = 0; e < g.num_externals(); ++e) x[e] = k % 2 ? sampler.any() : Rat(e == k % g.num_externals() ? 1 : 0);
      if (q.eval(p, x) < hv_leading_bound_at(terms, p, x)) ++fails;
    }
  return fails;
}

}  // namespace

TEST_CASE("HV real part equals P Sym P^T times HU on every fixture with external legs") {
  for (const auto& file : hyperpoly::testing::fixture_files()) {
    RibbonGraph g = fixture(file);
    if (g.num_externals() == 0 || g.num_lines() > 6) continue;
    CAPTURE(file);
    QuadForm q = hv_real(g);
    CHECK(q.is_symmetric());
    PointSampler sampler(10);
    int checked = 0;
    for (int k = 0; k < 10; ++k) {
      Assignment p = sampler.point(g.num_lines());
      RatMatrix expect;
      try {
        expect = hv_real_at(g, p);
      } catch (const std::domain_error&) {
        continue;
      }
      ++checked;
      for (int a = 0; a < q.size(); ++a)
        for (int b = 0; b < q.size(); ++b) CHECK(q.at(a, b).eval(p) == expect[a][b]);
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("HV terms reassemble the quadratic form") {
  RibbonGraph g = fixture("sunshine.json");
  QuadForm q = hv_real(g);
  PointSampler sampler(3);
  Assignment p = sampler.point(g.num_lines());
  std::vector<Rat> x = sample_x(sampler, q.size(), g.num_externals());
  Rat total = 0;
  for (const auto& term : hv_terms(g)) {
    Rat y = 0;
    for (size_t r = 0; r < term.bracket.size(); ++r) y += term.bracket[r].eval(p) * x[r];
    total += term.weight.eval(p) * y * y;
  }
  CHECK(total == q.eval(p, x));
}

TEST_CASE("tadpoles with both legs on the root have a vanishing HV") {
  for (const char* file : {"one_loop_first.json", "one_loop_second.json"}) {
    CAPTURE(file);
    RibbonGraph g = fixture(file);
    QuadForm q = hv_real(g);
    for (int a = 0; a < q.size(); ++a)
      for (int b = 0; b < q.size(); ++b) CHECK(q.at(a, b).is_zero());
    CHECK(two_admissible_sets(g, 0).empty());
    CHECK(two_admissible_sets(g, 1).empty());
    CHECK(hv_leading_terms(g).empty());
  }
}

TEST_CASE("bubble HV is a square in the legs of the non-root vertex") {
  RibbonGraph g = fixture("bubble.json");
  QuadForm q = hv_real(g);
  REQUIRE(q.labels() == std::vector<std::string>{"x1", "x2", "x3", "x4", "pbar"});
  Poly c = parse_poly("16*t1*t2*s^4*(W^2-1)^2");
  CHECK(q.at(2, 2) == c);
  CHECK(q.at(3, 3) == c);
  CHECK(q.at(2, 3) == -c);
  CHECK(q.at(0, 0).is_zero());
  // Equal positions on the two legs cancel.
  PointSampler sampler(4);
  Assignment p = sampler.point(2);
  CHECK(q.eval(p, {Rat(0), Rat(0), Rat(3, 7), Rat(3, 7), Rat(0)}) == 0);
}

TEST_CASE("HV is rejected without external legs") {
  RibbonGraph closed = RibbonGraph::build(
      "vacuum", "0", {{"0", {SlotSpec::line("1", End::Head), SlotSpec::line("1", End::Tail),
                             SlotSpec::line("2", End::Head), SlotSpec::line("2", End::Tail)}}});
  CHECK_THROWS_AS(hv_real(closed), std::invalid_argument);
}

TEST_CASE("2-admissible sets match brute force in G'") {
  for (const auto& file : hyperpoly::testing::fixture_files()) {
    RibbonGraph g = fixture(file);
    if (g.num_lines() > 8) continue;
    for (int e = 0; e < g.num_externals(); ++e) {
      CAPTURE(file);
      CAPTURE(e);
      std::vector<std::vector<int>> got;
      int F = 0;
      dummy_faces_by_hand(g, e, &F);
      for (const auto& t : two_admissible_sets(g, e)) {
        got.push_back(t.J);
        CHECK(t.faces_prime == F);
        CHECK(t.leading == (static_cast<int>(t.J.size()) == F - 1));
        CHECK(2 - 2 * t.genus_prime == g.num_vertices() - (g.num_lines() + 1) + F);
      }
      std::sort(got.begin(), got.end());
      CHECK(got == brute_force_two_admissible(g, e));
    }
  }
}

TEST_CASE("bubble legs on the non-root vertex have leading 2-admissible sets") {
  RibbonGraph g = fixture("bubble.json");
  for (int e = 2; e < 4; ++e) {
    auto sets = two_admissible_sets(g, e);
    REQUIRE_FALSE(sets.empty());
    CHECK(sets.front().leading);
  }
  CHECK(two_admissible_sets(g, 0).empty());
  CHECK_THROWS_AS(two_admissible_sets(g, 7), std::invalid_argument);
}

TEST_CASE("opposite external legs") {
  CHECK(has_opposite_externals(fixture("broken_bubble.json")));
  CHECK_FALSE(has_opposite_externals(fixture("bubble.json")));
  CHECK_FALSE(has_opposite_externals(fixture("sunshine.json")));
}

TEST_CASE("legs on opposite corners do not cancel for 0 < Omega < 1") {
  RibbonGraph g = fixture("broken_bubble.json");
  QuadForm q = hv_real(g);
  PointSampler sampler(8);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int s = 0; s < 2; ++s) {
      const SlotContent& a = g.slot(v, s);
      const SlotContent& b = g.slot(v, s + 2);
      if (!a.external || !b.external) continue;
      for (int k = 0; k < 10; ++k) {
        Assignment p = sampler.point(g.num_lines(), sampler.unit_open());
        std::vector<Rat> x(q.size(), 0);
        x[a.index] = 1;
        x[b.index] = 1;
        CHECK(q.eval(p, x) > 0);
      }
    }
}

TEST_CASE("leading bound vanishes when the signed face positions sum to zero") {
  for (const char* file : {"bubble.json", "sunshine.json", "half_eye.json"}) {
    CAPTURE(file);
    RibbonGraph g = fixture(file);
    PointSampler sampler(12);
    for (const auto& term : hv_leading_terms(g)) {
      if (term.face.size() < 2) continue;
      Assignment p = sampler.point(g.num_lines());
      std::vector<Rat> x(build_P(g).rows(), 0);
      x[term.face[0]] = Rat(term.signs[0]);
      x[term.face[1]] = Rat(-term.signs[1]);
      CHECK(hv_leading_bound_at({term}, p, x) == 0);
      x[term.face[1]] = Rat(term.signs[1]);
      CHECK(hv_leading_bound_at({term}, p, x) > 0);
    }
  }
}

TEST_CASE("HV stays above its leading bound on the bubble and the sunshine") {
  CHECK(bound_failures(fixture("bubble.json"), 40) == 0);
  CHECK(bound_failures(fixture("sunshine.json"), 40) == 0);
}

TEST_CASE("characterization: the leading bound is not pointwise beyond the simplest graphs") {
  // Recorded behaviour: the sum over leading 2-admissible sets overshoots HV
  // at some sampled points of these graphs.
  CHECK(bound_failures(fixture("nonplanar_sunshine.json"), 40) > 0);
  CHECK(bound_failures(fixture("half_eye.json"), 40) > 0);
  CHECK(bound_failures(fixture("broken_bubble.json"), 40) > 0);
}
