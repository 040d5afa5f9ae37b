#include "hyperpoly/qmatrix.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "hyperpoly/topology.hpp"

namespace hyperpoly {

MatrixLayout matrix_layout(const RibbonGraph& g) {
  MatrixLayout lay;
  lay.L = g.num_lines();
  lay.n = g.num_vertices();
  lay.p_of_vertex.assign(lay.n, -1);
  for (int v = 0; v < lay.n; ++v) {
    if (v == g.root()) continue;
    lay.p_of_vertex[v] = static_cast<int>(lay.p_vertex.size());
    lay.p_vertex.push_back(v);
  }
  return lay;
}

namespace {

std::vector<std::string> layout_labels(const RibbonGraph& g, const MatrixLayout& lay) {
  std::vector<std::string> labels;
  for (int l = 0; l < lay.L; ++l) labels.push_back("u" + g.line(l).id);
  for (int l = 0; l < lay.L; ++l) labels.push_back("v" + g.line(l).id);
  for (int v : lay.p_vertex) labels.push_back("p" + g.vertex_id(v));
  return labels;
}

}  // namespace

Incidence build_incidence(const RibbonGraph& g) {
  Incidence inc;
  inc.eps.assign(g.num_lines(), std::vector<int>(4 * g.num_vertices(), 0));
  inc.eta = inc.eps;
  for (int l = 0; l < g.num_lines(); ++l)
    for (const Corner& c : {g.line(l).head, g.line(l).tail}) {
      inc.eps[l][4 * c.vertex + c.slot] = slot_sign(c.slot);
      inc.eta[l][4 * c.vertex + c.slot] = 1;
    }
  return inc;
}

BMatrices build_B(const RibbonGraph& g) {
  BMatrices out;
  out.layout = matrix_layout(g);
  const MatrixLayout& lay = out.layout;
  auto labels = layout_labels(g, lay);
  PolyMatrix e_block(labels);  // E, embedded in the full index space
  PolyMatrix c_block(labels);  // C and -C^T

  // Vertex phase: sum over ordered corner pairs of (-1)^{i+j+1} omega(i,j) x_i x_j
  // with x_i = eta v + eps u.
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const SlotContent &si = g.slot(v, i), &sj = g.slot(v, j);
        if (si.external || sj.external) continue;
        int w = ((i + j + 1) % 2 == 0 ? 1 : -1) * omega_sign(i, j);
        if (w == 0) continue;
        std::pair<int, int> ci[2] = {{lay.u(si.index), slot_sign(i)}, {lay.v(si.index), 1}};
        std::pair<int, int> cj[2] = {{lay.u(sj.index), slot_sign(j)}, {lay.v(sj.index), 1}};
        for (auto [a, ca] : ci)
          for (auto [b, cb] : cj) e_block.at(a, b) += Poly(static_cast<long>(w * ca * cb));
      }
  for (int l = 0; l < lay.L; ++l) e_block.add_skew(lay.u(l), lay.v(l), Poly::omega().scaled(2));

  // Hypermomentum couplings: sum over corners of (-1)^{i+1} (eta v + eps u).
  for (int l = 0; l < lay.L; ++l)
    for (const Corner& c : {g.line(l).head, g.line(l).tail}) {
      int k = lay.p_of_vertex[c.vertex];
      if (k < 0) continue;
      c_block.add_skew(lay.u(l), lay.p(k), Poly(1L));
      c_block.add_skew(lay.v(l), lay.p(k), Poly(static_cast<long>(slot_sign(c.slot))));
    }

  out.B = PolyMatrix(labels);
  out.Bprime = PolyMatrix(labels);
  Poly s = Poly::s();
  for (int a = 0; a < lay.dim(); ++a)
    for (int b = 0; b < lay.dim(); ++b) {
      const Poly& e = e_block.at(a, b);
      const Poly& c = c_block.at(a, b);
      out.Bprime.at(a, b) = e + c;
      out.B.at(a, b) = e * s + c;
    }
  return out;
}

Rat DiagA::value(int line, const Assignment& point) const {
  Rat den = entries.at(line).second.eval(point);
  if (den == 0) throw std::domain_error("A is singular at t = 0");
  return entries.at(line).first.eval(point) / den;
}

DiagA build_A(const RibbonGraph& g) {
  DiagA a;
  a.dim = 2 * g.num_lines() + g.num_vertices() - 1;
  for (int l = 0; l < g.num_lines(); ++l)
    a.entries.emplace_back(Poly(1L) + Poly::t(l).pow(2), Poly::t(l).scaled(2));
  return a;
}

PMatrix build_P(const RibbonGraph& g) {
  if (g.num_externals() == 0) throw std::invalid_argument("graph has no external legs");
  MatrixLayout lay = matrix_layout(g);
  PMatrix p;
  Poly s = Poly::s();
  for (int e = 0; e < g.num_externals(); ++e) {
    const External& ext = g.external(e);
    std::vector<Poly> row(lay.dim());
    int v = ext.corner.vertex, es = ext.corner.slot;
    // Phase 2 omega(i,e) x_i x_e at the host vertex, with the alternating corner
    // factor (-1)^{i+e+1} of the vertex kernel.
    for (int i = 0; i < 4; ++i) {
      const SlotContent& sc = g.slot(v, i);
      if (sc.external || i == es) continue;
      int w = ((i + es + 1) % 2 == 0 ? 1 : -1) * omega_sign(es, i);
      row[lay.u(sc.index)] += s.scaled(w * slot_sign(i));
      row[lay.v(sc.index)] += s.scaled(w);
    }
    int k = lay.p_of_vertex[v];
    if (k >= 0) row[lay.p(k)] += Poly(static_cast<long>(slot_sign(es)));
    p.row_labels.push_back("x" + ext.label);
    p.entries.push_back(std::move(row));
  }
  std::vector<Poly> root_row(lay.dim());
  for (int l = 0; l < lay.L; ++l)
    for (const Corner& c : {g.line(l).head, g.line(l).tail}) {
      if (c.vertex != g.root()) continue;
      root_row[lay.u(l)] -= Poly(1L);
      root_row[lay.v(l)] -= Poly(static_cast<long>(slot_sign(c.slot)));
    }
  p.row_labels.push_back(kRootMomentumLabel);
  p.entries.push_back(std::move(root_row));
  return p;
}

ReducedBprime reduced_Bprime(const RibbonGraph& g, const AdmissibleSet& adm) {
  TopologyReport topo = trace_faces(g);
  if (static_cast<int>(adm.J0.size()) != topo.F - 1)
    throw std::invalid_argument("reduced B' needs an admissible set with |J0| = F - 1");
  int L = g.num_lines();
  std::vector<bool> in_j(L, false);
  for (int l : adm.J0) in_j[l] = true;
  RootedTree tree = first_spanning_tree(g, in_j);
  Rosette ros = build_rosette(g, tree);

  ReducedBprime red{PolyMatrix(), adm.J0, {}, {}, ros};
  red.pairs = nice_crossings(ros, adm.J0);
  for (const auto& pr : red.pairs) {
    red.genus_lines.push_back(pr.first);
    red.genus_lines.push_back(pr.second);
  }

  BMatrices bm = build_B(g);
  const MatrixLayout& lay = bm.layout;
  int kf = red.num_face();
  int dim = 2 * kf + static_cast<int>(red.genus_lines.size());

  // Coordinates of each reduced variable in the original (u, v) index space.
  // Loop long variables map to themselves; a tree long variable v_{l_k} is
  // -eps(l_k) [sum_{J0} c_{kl} u_l + sum_loop eps_k(l') w_{l'}].
  std::vector<int> loop_lines;
  for (int l = 0; l < L; ++l)
    if (!tree.in_tree[l]) loop_lines.push_back(l);
  std::vector<int> reduced_of_u(L, -1), reduced_of_w(L, -1);
  std::vector<std::string> labels;
  for (int k = 0; k < kf; ++k) {
    reduced_of_u[red.face_lines[k]] = k;
    labels.push_back("u" + g.line(red.face_lines[k]).id);
  }
  for (int k = 0; k < kf; ++k) {
    reduced_of_w[red.face_lines[k]] = kf + k;
    labels.push_back("wf" + g.line(red.face_lines[k]).id);
  }
  for (size_t k = 0; k < red.genus_lines.size(); ++k) {
    reduced_of_w[red.genus_lines[k]] = 2 * kf + static_cast<int>(k);
    labels.push_back("wg" + g.line(red.genus_lines[k]).id);
  }

  // S: original index (u or v) -> coefficients over reduced indices.
  std::vector<std::vector<Rat>> S(2 * L, std::vector<Rat>(dim, 0));
  for (int l = 0; l < L; ++l) {
    if (reduced_of_u[l] >= 0) S[lay.u(l)][reduced_of_u[l]] = 1;
    if (reduced_of_w[l] >= 0) S[lay.v(l)][reduced_of_w[l]] = 1;
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    int lk = tree.toward_root[v];
    if (lk < 0) continue;
    int eps = tree.tree_sign[lk];
    const auto& inside = tree.branch[lk];
    for (int l : adm.J0) {
      int ends = static_cast<int>(inside[g.line(l).head.vertex]) +
                 static_cast<int>(inside[g.line(l).tail.vertex]);
      S[lay.v(lk)][reduced_of_u[l]] -= eps * ends;
    }
    for (int l : loop_lines) {
      int bs = ros.branch_sign(v, l);
      if (bs != 0) S[lay.v(lk)][reduced_of_w[l]] -= eps * bs;
    }
  }

  // Sanity: the substitution solves every vertex constraint.
  for (int k = 0; k < static_cast<int>(lay.p_vertex.size()); ++k)
    for (int r = 0; r < dim; ++r) {
      Rat sum = 0;
      for (int a = 0; a < 2 * L; ++a) {
        if (S[a][r] == 0) continue;
        sum += S[a][r] * bm.Bprime.at(a, lay.p(k)).constant_value();
      }
      if (sum != 0) throw std::logic_error("tree substitution violates a vertex constraint");
    }

  red.matrix = PolyMatrix(labels);
  for (int a = 0; a < 2 * L; ++a)
    for (int b = 0; b < 2 * L; ++b) {
      const Poly& entry = bm.Bprime.at(a, b);
      if (entry.is_zero()) continue;
      for (int r = 0; r < dim; ++r) {
        if (S[a][r] == 0) continue;
        for (int c = 0; c < dim; ++c)
          if (S[b][c] != 0) red.matrix.at(r, c) += entry.scaled(S[a][r] * S[b][c]);
      }
    }
  return red;
}

FilkResult fourth_filk(const ReducedBprime& red) {
  FilkResult res;
  int dim = red.matrix.dim();
  PolyMatrix m = red.matrix;
  PolyMatrix total(red.matrix.labels());
  for (int i = 0; i < dim; ++i) total.at(i, i) = Poly(1L);

  for (size_t k = 0; k < red.pairs.size(); ++k) {
    int a = red.wg_index(static_cast<int>(2 * k)), b = red.wg_index(static_cast<int>(2 * k + 1));
    const Poly& cpoly = m.at(a, b);
    if (cpoly.is_zero() || !cpoly.is_constant())
      throw std::logic_error("genus pair is not coupled by a non-zero constant");
    Rat c = cpoly.constant_value();
    PolyMatrix r(red.matrix.labels());
    for (int i = 0; i < dim; ++i) r.at(i, i) = Poly(1L);
    for (int x = 0; x < dim; ++x) {
      if (x == a || x == b) continue;
      r.at(a, x) = m.at(b, x).scaled(1 / c);
      r.at(b, x) = m.at(a, x).scaled(-1 / c);
    }
    m = m.congruence(r);
    // total <- total * r
    PolyMatrix next(red.matrix.labels());
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int q = 0; q < dim; ++q)
          if (!total.at(i, q).is_zero() && !r.at(q, j).is_zero())
            next.at(i, j) += total.at(i, q) * r.at(q, j);
    total = std::move(next);
  }
  res.matrix = m;
  res.transform = total;

  int kf = red.num_face();
  int kg = static_cast<int>(red.genus_lines.size());
  res.uwg_zero = true;
  for (int i = 0; i < 2 * kf; ++i)
    for (int j = 0; j < kg; ++j)
      if (!m.at(i, red.wg_index(j)).is_zero()) res.uwg_zero = false;
  res.wfwf_zero = true;
  for (int i = 0; i < kf; ++i)
    for (int j = 0; j < kf; ++j)
      if (!m.at(red.wf_index(i), red.wf_index(j)).is_zero()) res.wfwf_zero = false;

  // Triangularity: the off-diagonal support of E''^{uw^f} must be acyclic.
  std::vector<std::vector<int>> out_edges(kf);
  for (int i = 0; i < kf; ++i)
    for (int j = 0; j < kf; ++j)
      if (i != j && !m.at(red.u_index(i), red.wf_index(j)).is_zero()) out_edges[i].push_back(j);
  std::vector<int> state(kf, 0);
  bool acyclic = true;
  std::function<void(int)> dfs = [&](int x) {
    state[x] = 1;
    for (int y : out_edges[x]) {
      if (state[y] == 1) acyclic = false;
      if (state[y] == 0) dfs(y);
    }
    state[x] = 2;
  };
  for (int i = 0; i < kf; ++i)
    if (state[i] == 0) dfs(i);
  res.uwf_triangular = acyclic;

  Poly plus = Poly::omega().scaled(2) + Poly(2L), minus = Poly::omega().scaled(2) - Poly(2L);
  res.uwf_diagonal_form = true;
  for (int i = 0; i < kf; ++i) {
    const Poly& d = m.at(red.u_index(i), red.wf_index(i));
    res.uwf_diagonal.push_back(d);
    if (!(d == plus) && !(d == minus)) res.uwf_diagonal_form = false;
  }

  res.jordan_form = true;
  for (int i = 0; i < kg; ++i)
    for (int j = 0; j < kg; ++j) {
      const Poly& x = m.at(red.wg_index(i), red.wg_index(j));
      bool partner = (i / 2 == j / 2) && i != j;
      if (partner) {
        if (!(x == Poly(2L)) && !(x == Poly(-2L))) res.jordan_form = false;
      } else if (!x.is_zero()) {
        res.jordan_form = false;
      }
    }
  return res;
}

}  // namespace hyperpoly
