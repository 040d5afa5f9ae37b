#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hyperpoly/admissible.hpp"
#include "hyperpoly/hu.hpp"
#include "hyperpoly/structures.hpp"
#include "hyperpoly/topology.hpp"
#include "hyperpoly/trees.hpp"
#include "support/fixtures.hpp"

using namespace hyperpoly;
using hyperpoly::testing::fixture;

namespace {

// Independent face count: orbits of d -> next(partner(d)) on 4n darts, written
// against the raw slot table.
int count_faces_by_hand(const RibbonGraph& g) {
  int darts = 4 * g.num_vertices();
  std::vector<bool> seen(darts, false);
  int faces = 0;
  for (int d0 = 0; d0 < darts; ++d0) {
    if (seen[d0]) continue;
    ++faces;
    int d = d0;
    while (!seen[d]) {
      seen[d] = true;
      Corner c{d / 4, d % 4};
      auto p = g.partner(c);
      Corner q = p ? *p : c;
      d = 4 * q.vertex + (q.slot + 1) % 4;
    }
  }
  return faces;
}

// Brute force: J0 contains a dual spanning tree and its complement a spanning tree.
std::vector<std::vector<int>> brute_force_admissible(const RibbonGraph& g) {
  TopologyReport topo = trace_faces(g);
  DualGraph dual = dual_graph(g, topo);
  std::vector<std::pair<int, int>> edges;
  for (const auto& l : g.lines()) edges.emplace_back(l.head.vertex, l.tail.vertex);
  int L = g.num_lines();
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << L); ++mask) {
    std::vector<int> J, I;
    for (int l = 0; l < L; ++l) (mask >> l & 1 ? J : I).push_back(l);
    bool dual_ok = static_cast<int>(spanning_forest(dual.num_vertices, dual.edges, J).size()) == dual.num_vertices - 1;
    bool direct_ok = static_cast<int>(spanning_forest(g.num_vertices(), edges, I).size()) == g.num_vertices() - 1;
    if (dual_ok && direct_ok) out.push_back(J);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("invalid graph files raise validation errors") {
  for (const auto& file : hyperpoly::testing::invalid_fixture_files()) {
    CAPTURE(file);
    CHECK_THROWS_AS(fixture(file), ValidationError);
  }
}

TEST_CASE("validation errors point at the offending corner") {
  try {
    fixture("invalid/non_orientable.json");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.vertex() == "0");
    CHECK(e.slot() == 2);
  }
}

TEST_CASE("topology of the small fixtures") {
  struct Row {
    const char* file;
    int n, L, F, g, B;
  };
  const Row rows[] = {{"single_vertex.json", 1, 0, 1, 0, 1},
                      {"one_loop_first.json", 1, 1, 2, 0, 1},
                      {"one_loop_second.json", 1, 1, 2, 0, 1},
                      {"bubble.json", 2, 2, 2, 0, 1},
                      {"sunshine.json", 2, 3, 3, 0, 1},
                      {"broken_bubble.json", 2, 2, 2, 0, 2},
                      {"nonplanar_sunshine.json", 2, 3, 1, 1, 1}};
  for (const auto& r : rows) {
    CAPTURE(r.file);
    TopologyReport t = trace_faces(fixture(r.file));
    CHECK(t.n == r.n);
    CHECK(t.L == r.L);
    CHECK(t.F == r.F);
    CHECK(t.g == r.g);
    CHECK(t.B == r.B);
  }
}

TEST_CASE("face tracing agrees with a hand-written orbit count on every fixture") {
  for (const auto& file : hyperpoly::testing::fixture_files()) {
    CAPTURE(file);
    RibbonGraph g = fixture(file);
    TopologyReport t = trace_faces(g);
    CHECK(t.F == count_faces_by_hand(g));
    CHECK(2 - 2 * t.g == t.n - t.L + t.F);
  }
}

TEST_CASE("spanning trees of the small fixtures") {
  CHECK(spanning_trees(fixture("bubble.json")).size() == 2);
  CHECK(spanning_trees(fixture("sunshine.json")).size() == 3);
  auto tadpole = spanning_trees(fixture("one_loop_first.json"));
  REQUIRE(tadpole.size() == 1);
  CHECK(tadpole[0].lines.empty());
}

TEST_CASE("dual graphs of the small fixtures") {
  RibbonGraph bubble = fixture("bubble.json");
  DualGraph d = dual_graph(bubble, trace_faces(bubble));
  CHECK(d.num_vertices == 2);
  REQUIRE(d.edges.size() == 2);
  for (const auto& [a, b] : d.edges) CHECK(a != b);

  RibbonGraph tadpole = fixture("one_loop_first.json");
  DualGraph dt = dual_graph(tadpole, trace_faces(tadpole));
  CHECK(dt.num_vertices == 2);
  CHECK(dt.edges.size() == 1);

  RibbonGraph nps = fixture("nonplanar_sunshine.json");
  DualGraph dn = dual_graph(nps, trace_faces(nps));
  CHECK(dn.num_vertices == 1);
  REQUIRE(dn.edges.size() == 3);
  for (const auto& [a, b] : dn.edges) CHECK(a == b);
}

TEST_CASE("admissible sets match brute force on every fixture") {
  for (const auto& file : hyperpoly::testing::fixture_files()) {
    CAPTURE(file);
    RibbonGraph g = fixture(file);
    if (g.num_lines() > 10) continue;
    std::vector<std::vector<int>> got;
    for (const auto& a : admissible_sets(g)) got.push_back(a.J0);
    std::sort(got.begin(), got.end());
    CHECK(got == brute_force_admissible(g));
  }
}

TEST_CASE("admissible sets of bubble and tadpole") {
  auto bubble = admissible_sets(fixture("bubble.json"));
  REQUIRE(bubble.size() == 2);
  CHECK(bubble[0].J0 == std::vector<int>{0});
  CHECK(bubble[1].J0 == std::vector<int>{1});
  CHECK(bubble[0].leading);
  auto tadpole = admissible_sets(fixture("one_loop_first.json"));
  REQUIRE(tadpole.size() == 1);
  CHECK(tadpole[0].J0 == std::vector<int>{0});
}

TEST_CASE("structure enumeration") {
  int count = 0;
  auto visited = enumerate_structures(1, 1, [&](const RibbonGraph& g) {
    ++count;
    CHECK(g.num_externals() == 2);
    return true;
  });
  CHECK(visited == 4);  // head on corner 1 or 3, tail on corner 2 or 4
  CHECK(count == 4);
  auto bubbles = enumerate_structures(2, 2, [](const RibbonGraph&) { return true; });
  // 6 head pairs * 6 tail pairs * 2 pairings, minus 20 disconnected draws:
  // both lines on vertex 0 (2), both on vertex 1 (2), one loop on each (16)
  CHECK(bubbles == 52);
  auto first_only = enumerate_structures(2, 2, [](const RibbonGraph&) { return false; });
  CHECK(first_only == 1);
}

TEST_CASE("structure codes ignore line names but see the embedding") {
  RibbonGraph bubble = fixture("bubble.json");
  RibbonGraph renamed = relabel_lines(bubble, {"2", "1"});
  CHECK(structure_code(renamed) == structure_code(bubble));
  CHECK(structure_code(fixture("broken_bubble.json")) != structure_code(bubble));
}

TEST_CASE("property: random structures satisfy Euler and the admissible size bounds") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + static_cast<int>(rng() % 4);
    int L = std::max(n - 1, 0) + static_cast<int>(rng() % (std::min(2 * n, 6) - std::max(n - 1, 0) + 1));
    L = std::min(L, std::min(2 * n, 6));
    RibbonGraph g = random_structure(rng, n, L);
    CAPTURE(g.to_json().dump());
    TopologyReport t = trace_faces(g);
    CHECK(2 - 2 * t.g == t.n - t.L + t.F);
    CHECK(t.g >= 0);
    CHECK(t.F == count_faces_by_hand(g));
    auto sets = admissible_sets(g);
    bool has_leading = false;
    for (const auto& a : sets) {
      int size = static_cast<int>(a.J0.size());
      CHECK(size >= t.F - 1);
      CHECK(size <= t.F - 1 + 2 * t.g);
      CHECK(a.k_I == static_cast<int>(a.I.size()) - t.L - t.F + 1);
      has_leading = has_leading || a.leading;
    }
    CHECK(has_leading);
  }
}

TEST_CASE("property: HU is invariant under line renaming and even rotations of non-root vertices") {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 40; ++it) {
    int n = 2 + static_cast<int>(rng() % 2);
    int L = n - 1 + static_cast<int>(rng() % 3);
    RibbonGraph g = random_structure(rng, n, L);
    CAPTURE(g.to_json().dump());
    Poly hu = compute_hu(g).hu;

    std::vector<int> perm(L);
    for (int i = 0; i < L; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> ids(L);
    for (int i = 0; i < L; ++i) ids[perm[i]] = std::to_string(i + 1);
    Poly renamed = compute_hu(relabel_lines(g, ids)).hu;
    // new line i is old line perm[i]: compare at matching distinct t values
    Assignment p, q;
    for (int l = 0; l < L; ++l) {
      Rat value(l + 2, 17);
      p[Var::t(l)] = value;
      q[Var::t(perm[l])] = value;
    }
    for (Assignment* a : {&p, &q}) {
      (*a)[Var::s()] = Rat(5, 3);
      (*a)[Var::omega()] = Rat(2, 7);
    }
    CHECK(renamed.eval(p) == hu.eval(q));

    int v = 1 + static_cast<int>(rng() % (n - 1));
    CHECK(compute_hu(g.rotated(v, 2)).hu == hu);
  }
}
