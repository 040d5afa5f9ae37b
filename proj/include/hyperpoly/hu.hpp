#pragma once

// The first hyperbolic polynomial HU_{G,root} as a sum over line subsets of
// squared Pfaffian minors of B', its leading terms and the positivity bound.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperpoly/admissible.hpp"
#include "hyperpoly/poly.hpp"
#include "hyperpoly/qmatrix.hpp"
#include "hyperpoly/topology.hpp"

namespace hyperpoly {

struct HUTerm {
  std::vector<int> I;  // deleted u indices (line indices), sorted
  int k_I = 0;         // |I| - L - F + 1
  int s_exponent = 0;  // 2g - k_I
  Poly n_I;            // Pf(B' without u_I)
  Poly contribution;   // s^{2g-k_I} n_I^2 prod_I (1+t^2)/2 prod_rest t
};

struct HUResult {
  Poly hu;
  std::vector<HUTerm> terms;  // ordered by |I|, then lexicographically
  TopologyReport topology;
};

/// Weight prod_{l in I} (1 + t_l^2)/2 * prod_{l not in I} t_l.
Poly subset_weight(int num_lines, const std::vector<int>& I);

/// Subsets of {0..L-1} ordered by size then lexicographically.
std::vector<std::vector<int>> ordered_subsets(int L);

/// Runs `threads` workers (at least one) over the subset list.
HUResult compute_hu(const RibbonGraph& g, int threads = 1);

/// Pf(B') with every u index deleted: 0 when F >= 2, +-2^g when F = 1.
Poly boundary_pfaffian(const RibbonGraph& g);

struct LeadingTerm {
  AdmissibleSet J0;
  Poly n_I;            // direct minor Pfaffian
  Poly n_I_reduced;    // Pfaffian of the rosette-reduced B'
  Poly n_I_filk;       // Pfaffian after the fourth Filk move
  Poly closed_form;    // 2^g times the diagonal of E''^{uw^f} after the fourth Filk move
  bool planar_regular = false;
  Poly planar_product; // prod_{J0} 2(W - eps(l)) (planar regular graphs)
  Poly planar_reduced_pf;  // Pf(reduced B') in interleaved (u_l, w_l) order
  FilkResult filk;
  std::vector<NiceCrossing> pairs;
};

/// True when p = +-2^genus prod_{k < factors} 2(W +- 1) for some choice of signs.
bool matches_closed_form(const Poly& p, int genus, int factors);

/// c*(W+1)^a*(W-1)^b when p has that shape, else the canonical string.
std::string omega_factored_string(const Poly& p);

/// Every admissible set with |J0| = F - 1 with its Pfaffian through both routes.
std::vector<LeadingTerm> leading_terms(const RibbonGraph& g);

/// Lower bound sum over leading sets of s^{2(g+F-1)} closed_form^2 prod_I (1+t^2)/2 prod_{J0} t.
Poly theorem_bound(const RibbonGraph& g, const std::vector<LeadingTerm>& leading);

struct PositivityReport {
  bool ok = true;
  int points_checked = 0;
  std::optional<Assignment> witness;
  std::string failure;
};

/// HU > 0 and HU >= bound at `samples` seeded points per Omega value, with
/// t in (0,1) and s in (0, 97].
PositivityReport positivity_check(const RibbonGraph& g, const Poly& hu, const Poly& bound,
                                  const std::vector<Rat>& omegas, int samples, std::uint64_t seed);

}  // namespace hyperpoly
