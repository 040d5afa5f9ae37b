#include <filesystem>
#include <random>

#include "doctest.h"
#include "hyperpoly/hu.hpp"
#include "hyperpoly/oracle.hpp"
#include "hyperpoly/structures.hpp"
#include "support/fixtures.hpp"
#include "support/golden.hpp"

using namespace hyperpoly;
using hyperpoly::testing::fixture;

TEST_CASE("subset ordering and weights") {
  auto subsets = ordered_subsets(3);
  CHECK(subsets.size() == 8);
  CHECK(subsets.front().empty());
  CHECK(subsets[1] == std::vector<int>{0});
  CHECK(subsets.back() == std::vector<int>{0, 1, 2});
  CHECK(subset_weight(2, {1}) == parse_poly("t1*(1+t2^2)/2"));
  CHECK(subset_weight(0, {}) == Poly(1L));
}

TEST_CASE("HU of the single vertex is 1") {
  CHECK(compute_hu(fixture("single_vertex.json")).hu == Poly(1L));
}

TEST_CASE("HU reproduces the printed polynomials of the small fixtures") {
  for (const auto& row : hyperpoly::testing::golden_hu()) {
    CAPTURE(row.label);
    CHECK(compute_hu(fixture(row.fixture)).hu == parse_poly(row.hu));
  }
}

TEST_CASE("HU terms respect the s exponent bookkeeping") {
  RibbonGraph g = fixture("nonplanar_sunshine.json");
  HUResult r = compute_hu(g);
  for (const auto& term : r.terms) {
    CHECK(term.s_exponent == 2 * r.topology.g - term.k_I);
    CHECK(term.s_exponent >= 0);
  }
}

TEST_CASE("boundary Pfaffian") {
  CHECK(boundary_pfaffian(fixture("bubble.json")).is_zero());
  CHECK(boundary_pfaffian(fixture("one_loop_first.json")).is_zero());
  Poly np = boundary_pfaffian(fixture("nonplanar_sunshine.json"));
  CHECK((np == Poly(2L) || np == Poly(-2L)));
}

TEST_CASE("bubble HU equals the oracle determinant at a fixed point") {
  RibbonGraph g = fixture("bubble.json");
  Assignment p{{Var::t(0), Rat(1, 2)}, {Var::t(1), Rat(1, 3)}, {Var::s(), Rat(1)}, {Var::omega(), Rat(0)}};
  CHECK(compute_hu(g).hu.eval(p) == det_AB_at(g, p) * Rat(1, 6));
  Assignment q{{Var::t(0), Rat(1, 2)}, {Var::t(1), Rat(1, 3)}, {Var::s(), Rat(1)}, {Var::omega(), Rat(1, 2)}};
  CHECK(compute_hu(g).hu.eval(q) > 0);
}

TEST_CASE("threaded and single-threaded HU agree") {
  RibbonGraph g = fixture("half_eye.json");
  CHECK(compute_hu(g, 1).hu == compute_hu(g, 3).hu);
}

TEST_CASE("matches_closed_form") {
  CHECK(matches_closed_form(parse_poly("8*(W+1)*(W-1)^2"), 0, 3));
  CHECK(matches_closed_form(parse_poly("-4*(W-1)"), 1, 1));
  CHECK_FALSE(matches_closed_form(parse_poly("4*(W-1)"), 0, 1));
  CHECK_FALSE(matches_closed_form(parse_poly("2*(W-2)"), 0, 1));
}

TEST_CASE("omega_factored_string") {
  CHECK(omega_factored_string(parse_poly("8*(W+1)*(W-1)^2")) == "8*(W+1)*(W-1)^2");
  CHECK(omega_factored_string(parse_poly("-2")) == "-2");
  CHECK(omega_factored_string(parse_poly("W^2+1")) == "W^2 + 1");
}

TEST_CASE("leading terms of planar regular fixtures follow the product of loop signs") {
  for (const char* file : {"bubble.json", "sunshine.json", "half_eye.json", "one_loop_first.json"}) {
    CAPTURE(file);
    for (const auto& lt : leading_terms(fixture(file))) {
      REQUIRE(lt.planar_regular);
      CHECK(lt.planar_product == lt.planar_reduced_pf);
      CHECK((lt.n_I == lt.n_I_reduced || lt.n_I == -lt.n_I_reduced));
    }
  }
}

TEST_CASE("positivity check accepts HU and rejects a shifted polynomial") {
  RibbonGraph g = fixture("bubble.json");
  Poly hu = compute_hu(g).hu;
  Poly bound = theorem_bound(g, leading_terms(g));
  std::vector<Rat> omegas{Rat(0), Rat(1, 2)};
  CHECK(positivity_check(g, hu, bound, omegas, 10, 3).ok);
  PositivityReport bad = positivity_check(g, hu - Poly(1000L), bound, omegas, 10, 3);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness.has_value());
  CHECK_THROWS_AS(positivity_check(g, hu, bound, {Rat(1)}, 1, 3), std::invalid_argument);
}

TEST_CASE("property: leading Pfaffians of random graphs have the closed form") {
  std::mt19937_64 rng(4242);
  for (int it = 0; it < 150; ++it) {
    int n = 1 + static_cast<int>(rng() % 4);
    int L = std::min(std::min(2 * n, 6), n - 1 + static_cast<int>(rng() % 4));
    RibbonGraph g = random_structure(rng, n, L);
    CAPTURE(g.to_json().dump());
    TopologyReport t = trace_faces(g);
    for (const auto& lt : leading_terms(g)) {
      CHECK((lt.n_I_reduced == lt.n_I || lt.n_I_reduced == -lt.n_I));
      CHECK(lt.n_I_filk == lt.n_I_reduced);
      CHECK((lt.closed_form == lt.n_I || lt.closed_form == -lt.n_I));
      CHECK(matches_closed_form(lt.n_I, t.g, static_cast<int>(lt.J0.J0.size())));
      CHECK(lt.filk.uwg_zero);
      CHECK(lt.filk.wfwf_zero);
      CHECK(lt.filk.uwf_triangular);
      CHECK(lt.filk.jordan_form);
      if (lt.planar_regular) CHECK(lt.planar_product == lt.planar_reduced_pf);
    }
  }
}

TEST_CASE("property: HU equals det(A+B) prod t on random graphs") {
  std::mt19937_64 rng(77);
  PointSampler sampler(5);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + static_cast<int>(rng() % 3);
    int L = std::min(2 * n, n - 1 + static_cast<int>(rng() % 3));
    RibbonGraph g = random_structure(rng, n, L);
    CAPTURE(g.to_json().dump());
    Poly hu = compute_hu(g).hu;
    for (int k = 0; k < 3; ++k) {
      Assignment p = sampler.point(L);
      Rat prod = 1;
      for (int l = 0; l < L; ++l) prod *= p.at(Var::t(l));
      CHECK(hu.eval(p) == det_AB_at(g, p) * prod);
    }
  }
}
