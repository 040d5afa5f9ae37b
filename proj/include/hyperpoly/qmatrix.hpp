#pragma once

// Matrices of the Gaussian parametric integral of a ribbon graph:
// incidence, the antisymmetric B / B', the diagonal A, the external coupling P,
// the rosette-reduced B' and its fourth Filk move.
//
// Index layout of B and B' (dimension 2L + n - 1):
//   u_l = l, v_l = L + l (l = 0..L-1), p_k = 2L + k for the non-root vertices
//   in increasing order.

#include <utility>
#include <vector>

#include "hyperpoly/admissible.hpp"
#include "hyperpoly/ribbon_graph.hpp"
#include "hyperpoly/rosette.hpp"
#include "hyperpoly/skew_matrix.hpp"

namespace hyperpoly {

struct MatrixLayout {
  int L = 0;
  int n = 0;
  std::vector<int> p_vertex;    // p index k -> vertex
  std::vector<int> p_of_vertex; // vertex -> k, -1 for the root

  int dim() const { return 2 * L + n - 1; }
  int u(int line) const { return line; }
  int v(int line) const { return L + line; }
  int p(int k) const { return 2 * L + k; }
};

MatrixLayout matrix_layout(const RibbonGraph& g);

/// eps[l][4V + i] = (-1)^i where line l hooks vertex V at slot i; eta = |eps|.
struct Incidence {
  std::vector<std::vector<int>> eps;
  std::vector<std::vector<int>> eta;
};

Incidence build_incidence(const RibbonGraph& g);

/// omega(i, j) = +1 for i < j, -1 for i > j, 0 on the diagonal.
inline int omega_sign(int i, int j) { return i < j ? 1 : (i > j ? -1 : 0); }

struct BMatrices {
  MatrixLayout layout;
  SkewPolyMatrix B;       // [[sE, C], [-C^T, 0]]
  SkewPolyMatrix Bprime;  // [[E, C], [-C^T, 0]]
};

BMatrices build_B(const RibbonGraph& g);

/// A = diag((1 + t_l^2) / (2 t_l)) on the u indices, zero elsewhere.
struct DiagA {
  int dim = 0;
  std::vector<std::pair<Poly, Poly>> entries;  // (numerator, denominator) per line

  Rat value(int line, const Assignment& point) const;
};

DiagA build_A(const RibbonGraph& g);

/// Couplings of the external positions and of the root hypermomentum to the
/// integrated variables. Rows: externals in index order, then the root
/// hypermomentum. Columns follow the B layout.
struct PMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::vector<Poly>> entries;

  int rows() const { return static_cast<int>(entries.size()); }
};

/// Label used for the root hypermomentum row.
inline constexpr const char* kRootMomentumLabel = "pbar";

/// Throws std::invalid_argument for graphs without external legs.
PMatrix build_P(const RibbonGraph& g);

/// B' restricted to the complement of I = lines \ J0, with the tree long
/// variables eliminated through the vertex constraints. Indices are
/// (u_{J0}, w^f_{J0}, w^g) with w^g ordered pairwise as the genus pairs.
struct ReducedBprime {
  SkewPolyMatrix matrix;
  std::vector<int> face_lines;   // J0
  std::vector<int> genus_lines;  // loop lines outside J0, pair order
  std::vector<NiceCrossing> pairs;
  Rosette rosette;

  int num_face() const { return static_cast<int>(face_lines.size()); }
  int u_index(int k) const { return k; }
  int wf_index(int k) const { return num_face() + k; }
  int wg_index(int k) const { return 2 * num_face() + k; }
};

/// The admissible set must satisfy |J0| = F - 1. The spanning tree is the
/// lexicographically first one avoiding J0.
ReducedBprime reduced_Bprime(const RibbonGraph& g, const AdmissibleSet& J0);

struct FilkResult {
  SkewPolyMatrix matrix;     // R^T M R
  PolyMatrix transform;      // R, unit upper-triangular up to ordering (det 1)
  bool uwg_zero = false;     // u / w^f rows decoupled from w^g
  bool wfwf_zero = false;
  bool uwf_triangular = false;   // E''^{uw^f} triangular after reordering
  bool uwf_diagonal_form = false; // its diagonal entries are 2(W +- 1)
  bool jordan_form = false;       // w^g block: pairs coupled by +-2 only
  std::vector<Poly> uwf_diagonal;
};

/// Applies, pair by pair, the unit-Jacobian change of variables that removes
/// the couplings of each genus pair with every other variable.
FilkResult fourth_filk(const ReducedBprime& reduced);

}  // namespace hyperpoly
