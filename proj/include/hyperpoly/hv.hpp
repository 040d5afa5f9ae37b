#pragma once

// Real part HV^R of the second hyperbolic polynomial as a quadratic form in
// the external positions and the root hypermomentum.

#include <string>
#include <vector>

#include "hyperpoly/admissible.hpp"
#include "hyperpoly/poly.hpp"
#include "hyperpoly/qmatrix.hpp"

namespace hyperpoly {

class QuadForm {
 public:
  QuadForm() = default;
  explicit QuadForm(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Poly& at(int a, int b) const { return coeff_[a][b]; }
  /// Adds value to (a, b) and, off the diagonal, to (b, a).
  void add_symmetric(int a, int b, const Poly& value);

  bool is_symmetric() const;
  /// sum_{a,b} Q_ab x_a x_b.
  Rat eval(const Assignment& point, const std::vector<Rat>& x) const;
  Poly polynomial_coefficient(int a, int b) const;  // Q_aa, or 2 Q_ab for a != b

  /// {"coefficients": {"x1*x1": ..., "x1*x2": ...}} with monomial coefficients.
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Poly>> coeff_;
};

/// Contribution of one deleted set I: weight * (sum_r bracket_r y_r)^2.
struct HVTerm {
  std::vector<int> I;
  Poly weight;                  // prod_I (1+t^2)/2 prod_rest t
  std::vector<Poly> bracket;    // per P row: sum_tau P_{r tau} eps_{I tau} Pf(B minus I, tau)
};

/// Terms over all I with n + |I| even (the minors are then even-dimensional).
std::vector<HVTerm> hv_terms(const RibbonGraph& g, int threads = 1);

/// Throws std::invalid_argument for graphs without external legs.
QuadForm hv_real(const RibbonGraph& g, int threads = 1);

/// G' = G plus a dummy line d from the corner of external e to a marker corner
/// placed just before corner 1 of the root. Darts 0..4n-1 are the corners of G;
/// the marker is the last dart.
struct DummyGraph {
  RotationSystem rs;
  int dummy_dart_root = 0;
  int dummy_dart_ext = 0;
  int n = 0, L = 0, F = 0, g = 0;  // g assumes the kept lines connect G'
};

/// Lines flagged in `removed` are left out of G'.
DummyGraph dummy_graph(const RibbonGraph& g, int e, const std::vector<bool>& removed = {});

struct TwoAdmissibleSet {
  std::vector<int> J;          // lines of G
  std::vector<int> I;          // complement of J
  int target = 0;              // external index carrying the dummy line
  int genus_prime = 0;         // genus of G'
  int faces_prime = 0;         // faces of G'
  bool leading = false;        // |J| = F' - 1
  std::vector<int> face;       // externals of F_J (leading sets only)
  std::vector<int> signs;      // (-1)^(e+1) per external of F_J, e the 1-based corner
  Poly closed_form;            // 2^{g'} prod_J 2(W -+ 1), signs read off the rosette of G' (leading only)
};

/// Sets J such that J contains a spanning tree of the dual of G' and the
/// complement of J together with d contains a spanning tree of G' through d.
/// Empty when e sits on the root (d would be a loop). Ordered by size, then
/// lexicographically; throws std::invalid_argument above 24 lines.
std::vector<TwoAdmissibleSet> two_admissible_sets(const RibbonGraph& g, int e);

/// True when some vertex carries external legs on two opposite corners.
bool has_opposite_externals(const RibbonGraph& g);

struct HVLeadingTerm {
  std::vector<int> J;
  std::vector<int> targets;  // externals whose dummy line makes J leading 2-admissible
  std::vector<int> face;     // F_J
  std::vector<int> signs;
  int genus_prime = 0;       // from the first target
  int faces_prime = 0;
  Poly closed_form;
  Poly coefficient;          // s^{2[g'+F'-1]} closed_form^2 prod_I (1+t^2)/2 prod_J t
};

/// Leading 2-admissible sets, merged over targets, with the bound coefficients.
std::vector<HVLeadingTerm> hv_leading_terms(const RibbonGraph& g);

/// sum_J coefficient_J [sum_{e in F_J} (-1)^e x_e]^2 evaluated at a point.
Rat hv_leading_bound_at(const std::vector<HVLeadingTerm>& terms, const Assignment& point,
                        const std::vector<Rat>& x);

/// The bound as a quadratic form over the P-row labels (root momentum row zero).
QuadForm hv_leading_bound(const RibbonGraph& g, const std::vector<HVLeadingTerm>& terms);

}  // namespace hyperpoly
